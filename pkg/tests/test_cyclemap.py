from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from najc import model
from najc.cyclemap import (
    UnknownLabel,
    WeightTooSmall,
    cycle_map,
    delta_zero,
    divisor_to_json,
    exp_decimal,
    left_string,
    render_float,
    right_string,
    section_exponents,
)
from najc.hodge import build_filtration, decompose
from najc.ratlin import Matrix, Subspace, add, hadamard
from najc.report import analyze

from .oracles import F, sympy_project


def full_space(d):
    config = model.Configuration(model.default_labels(d))
    return config, decompose(build_filtration(Subspace.full(d)), Matrix.identity(d))


def mp_exp(e, digits):
    with mpmath.workdps(digits + 20):
        return mpmath.nstr(mpmath.exp(mpmath.mpf(e.numerator) / e.denominator), digits,
                           strip_zeros=False, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)


class TestDeltaZero:
    def test_golden(self, golden_dec, golden_input):
        d0 = delta_zero(golden_dec, golden_input.config, "z1")
        assert d0 == F("7/10", "2/5", "1/10", "-1/5")
        assert d0 == sympy_project(F(1, 0, 0, 0), golden_dec.h0.vectors())

    def test_weight_one(self):
        config, dec = full_space(3)
        assert delta_zero(dec, config, "z2") == F(0, 1, 0)

    def test_partition_of_unity(self, golden_dec, golden_input):
        total = F(0, 0, 0, 0)
        for label in golden_input.config.labels:
            total = add(total, delta_zero(golden_dec, golden_input.config, label))
        assert total == F(1, 1, 1, 1)

    def test_unknown(self, golden_dec, golden_input):
        with pytest.raises(UnknownLabel):
            delta_zero(golden_dec, golden_input.config, "nope")


class TestStrings:
    def test_right(self, golden_dec, golden_input):
        d0 = delta_zero(golden_dec, golden_input.config, "z1")
        right = right_string(golden_dec, d0)
        assert right[1] == tuple(Fraction(9, 100) * x for x in F(1, -1, -1, 1))
        assert right[2] == tuple(Fraction(-81, 10000) * x for x in F(-1, 3, -3, 1))

    def test_right_oracle(self, golden_dec, golden_input):
        # grade p+1 piece of d0 * (previous); identity Gram so sympy normal equations apply
        d0 = delta_zero(golden_dec, golden_input.config, "z1")
        right = right_string(golden_dec, d0)
        for p in (1, 2):
            (u,) = golden_dec.summands[p].vectors()
            assert right[p] == sympy_project(hadamard(d0, right[p - 1]), [u])

    def test_membership(self, golden_dec, golden_input):
        for label in golden_input.config.labels:
            d0 = delta_zero(golden_dec, golden_input.config, label)
            right = right_string(golden_dec, d0)
            left = left_string(golden_dec, d0, right[-1])
            w = golden_dec.weight
            assert len(right) == len(left) == w
            for p, v in enumerate(right):
                assert golden_dec.summands[p].contains(v)
            for m, v in enumerate(left):
                assert golden_dec.summands[w - 1 - m].contains(v)
            assert left[0] == right[-1]

    def test_weight_one(self):
        config, dec = full_space(2)
        d0 = delta_zero(dec, config, "z1")
        assert right_string(dec, d0) == [d0]

    def test_left_top(self, golden_dec, golden_input):
        d0 = delta_zero(golden_dec, golden_input.config, "z1")
        top = right_string(golden_dec, d0)[-1]
        assert left_string(golden_dec, d0, top)[0] == \
            tuple(Fraction(-81, 10000) * x for x in F(-1, 3, -3, 1))


class TestSections:
    def test_golden(self, golden_dec, golden_input):
        s = section_exponents(golden_dec, golden_input.config, "z1")
        assert s.e_X == (Fraction(7, 10), Fraction(9, 100))
        assert len(s.e_Y) == 2

    def test_weight_two_shapes(self):
        inp = model.generate_power([0, 1, 3])
        a = analyze(inp)
        assert a.decomposition.weight == 2
        for s in cycle_map(a.decomposition, inp.config).sections:
            assert len(s.e_X) == len(s.e_Y) == 1

    def test_weight_one_rejected(self):
        config, dec = full_space(2)
        with pytest.raises(WeightTooSmall):
            cycle_map(dec, config)

    def test_divisor(self, golden_dec, golden_input):
        div = cycle_map(golden_dec, golden_input.config)
        assert len(div.sections) == 4 and div.weight == 3
        assert div.calabi_yau_dimension == 1

    def test_alpha_scaling(self, golden_input, golden_dec):
        scaled = golden_input.with_alpha((3, 0))
        assert cycle_map(analyze(scaled).decomposition, scaled.config) == \
            cycle_map(golden_dec, golden_input.config)

    def test_relabeling(self, golden_input, golden_dec):
        perm = [2, 0, 3, 1]
        labels = tuple(golden_input.config.labels[i] for i in perm)
        config = model.Configuration(labels)
        basis = Matrix.from_rows([[r[i] for i in perm] for r in golden_input.ext.basis.row_vectors()])
        ext = model.ExtSpace(config, basis)
        moved = model.AnalysisInput(config, ext, model.ExtClass.from_coeffs(ext, (1, 0)))
        other = cycle_map(analyze(moved).decomposition, config)
        base = {s.point: s for s in cycle_map(golden_dec, golden_input.config).sections}
        assert [s.point for s in other.sections] == list(labels)
        assert all(base[s.point] == s for s in other.sections)


class TestRendering:
    def test_zero(self):
        assert exp_decimal(Fraction(0), 13) == "1.000000000000"

    def test_seven_tenths(self):
        assert exp_decimal(Fraction(7, 10), 13) == "2.013752707470"
        assert exp_decimal(Fraction(7, 10), 13) == mp_exp(Fraction(7, 10), 13)

    @given(st.fractions(min_value=-20, max_value=20, max_denominator=10000),
           st.integers(1, 30))
    @settings(max_examples=200, deadline=None)
    def test_against_mpmath(self, e, digits):
        ours = exp_decimal(e, digits)
        with mpmath.workdps(digits + 20):
            oracle = mpmath.mpf(mp_exp(e, digits + 10))
            ulp = mpmath.mpf(10) ** (mpmath.floor(mpmath.log10(oracle)) - digits + 1)
            assert abs(mpmath.mpf(ours) - oracle) <= ulp / 2 * (1 + mpmath.mpf(10) ** -5)

    @given(st.fractions(min_value=-5, max_value=5, max_denominator=1000),
           st.integers(1, 15), st.integers(1, 10))
    @settings(max_examples=100, deadline=None)
    def test_digits_monotone(self, e, short, extra):
        with mpmath.workdps(short + extra + 20):
            a = mpmath.mpf(exp_decimal(e, short))
            b = mpmath.mpf(exp_decimal(e, short + extra))
            ulp = mpmath.mpf(10) ** (mpmath.floor(mpmath.log10(b)) - short + 1)
            assert abs(a - b) <= ulp

    def test_positive(self, golden_dec, golden_input):
        rendered = render_float(cycle_map(golden_dec, golden_input.config), 12)
        for entry in rendered:
            values = [entry["T"], *entry["X"], *entry["Y"]]
            assert all(Fraction(v) > 0 for v in values)

    def test_json(self, golden_dec, golden_input):
        data = divisor_to_json(cycle_map(golden_dec, golden_input.config), 12)
        first = data["sections"][0]
        assert first["e_X"] == ["7/10", "9/100"]
        assert first["coefficients"]["X"][0] == "2.01375270747"
