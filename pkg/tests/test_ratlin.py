from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from najc.ratlin import (
    DegenerateGram,
    DimensionMismatch,
    Matrix,
    Subspace,
    det,
    format_rational,
    intersect,
    kernel,
    orth_complement,
    parse_rational,
    project,
    rank,
    rref,
    solve_left,
    span,
    sum_spaces,
)

from .oracles import F, from_sympy, sympy_project, to_sympy

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def matrices(max_rows=4, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


class TestParse:
    def test_roundtrip(self):
        for text in ["0", "-3", "7/10", "-81/10000"]:
            assert format_rational(parse_rational(text)) == text

    def test_normalizes(self):
        assert parse_rational("2/4") == Fraction(1, 2)
        assert format_rational(Fraction(4, 2)) == "2"

    @pytest.mark.parametrize("bad", ["1/0", "", "1.5", "a", "1/-2", "--1"])
    def test_rejects(self, bad):
        with pytest.raises(ValueError):
            parse_rational(bad)


class TestRref:
    def test_identity(self):
        r, k = rref(Matrix.identity(3))
        assert (r, k) == (Matrix.identity(3), 3)

    def test_proportional_rows(self):
        r, k = rref(Matrix.from_rows([[1, 2], [2, 4]]))
        assert k == 1
        assert r.to_lists() == [[1, 2]]

    def test_hand_gauss_jordan(self):
        r, k = rref(Matrix.from_rows([[0, 1, 2], [1, 0, 3]]))
        assert k == 2
        assert r.to_lists() == [[1, 0, 3], [0, 1, 2]]

    @given(matrices())
    @settings(max_examples=60, deadline=None)
    def test_against_sympy(self, rows):
        r, k = rref(Matrix.from_rows(rows))
        oracle, pivots = to_sympy(rows).rref()
        assert k == len(pivots)
        assert [tuple(x) for x in r.to_lists()] == from_sympy(oracle)[:k]

    @given(matrices())
    @settings(max_examples=40, deadline=None)
    def test_rank_of_transpose(self, rows):
        m = Matrix.from_rows(rows)
        assert rank(m) == rank(m.T)

    @given(st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
    @settings(max_examples=40, deadline=None)
    def test_det_against_sympy(self, rows):
        assert det(Matrix.from_rows(rows)) == Fraction(str(to_sympy(rows).det()))

    @given(matrices())
    @settings(max_examples=40, deadline=None)
    def test_kernel_annihilates(self, rows):
        m = Matrix.from_rows(rows)
        ker = kernel(m)
        assert len(ker) == m.cols - rank(m)
        for v in ker:
            assert not any(m.apply(v))


class TestMatrix:
    def test_shapes_checked(self):
        with pytest.raises(DimensionMismatch):
            Matrix.identity(2) @ Matrix.identity(3)
        with pytest.raises(DimensionMismatch):
            Matrix.identity(2) + Matrix.identity(3)

    @given(matrices(3, 3), matrices(3, 3))
    @settings(max_examples=30, deadline=None)
    def test_product_against_sympy(self, a, b):
        ma, mb = Matrix.from_rows(a), Matrix.from_rows(b)
        if ma.cols != mb.rows:
            return
        assert [tuple(r) for r in (ma @ mb).to_lists()] == from_sympy(to_sympy(a) * to_sympy(b))

    def test_solve_left(self):
        basis = Matrix.from_rows([[1, 1, 1, 1], [0, 1, 2, 3]])
        coords = solve_left(basis, [F(2, 3, 4, 5), F(1, 0, 0, 0)])
        assert coords[0] == F(2, 1)
        assert coords[1] is None


class TestSubspaces:
    def test_empty_span(self):
        s = span([], 4)
        assert s.rank == 0 and s == Subspace.zero(4)

    def test_single(self):
        assert span([F(1, 1, 1, 1)], 4).rank == 1

    def test_dependent_third(self):
        assert span([F(1, 1, 1, 1), F(0, 1, 2, 3), F(1, 2, 3, 4)], 4).rank == 2

    def test_intersect_idempotent(self):
        a = span([F(1, 1, 1, 1), F(0, 1, 2, 3)], 4)
        assert intersect(a, a) == a

    def test_coordinate_axes(self):
        assert intersect(span([F(1, 0)], 2), span([F(0, 1)], 2)).rank == 0

    def test_hand_intersection(self):
        a = span([F(1, 0, 0), F(0, 1, 0)], 3)
        b = span([F(1, 1, 0), F(0, 0, 1)], 3)
        assert intersect(a, b) == span([F(1, 1, 0)], 3)

    @given(matrices(3, 4), matrices(3, 4))
    @settings(max_examples=40, deadline=None)
    def test_dimension_formula(self, a, b):
        if len(a[0]) != len(b[0]):
            return
        d = len(a[0])
        sa, sb = span(a, d), span(b, d)
        inter, total = intersect(sa, sb), sum_spaces(sa, sb)
        assert inter.rank + total.rank == sa.rank + sb.rank
        assert sa.contains_subspace(inter) and sb.contains_subspace(inter)
        assert total.contains_subspace(sa) and total.contains_subspace(sb)

    def test_ambient_mismatch(self):
        with pytest.raises(DimensionMismatch):
            intersect(Subspace.zero(2), Subspace.zero(3))


class TestOrthogonality:
    def test_zero_subspace(self):
        within = span([F(1, 1, 0, 0)], 4)
        assert orth_complement(Subspace.zero(4), Matrix.identity(4), within) == within

    def test_hyperplane(self):
        c = orth_complement(span([F(1, 1, 1, 1)], 4), Matrix.identity(4), Subspace.full(4))
        assert c.rank == 3
        assert all(sum(v) == 0 for v in c.vectors())

    def test_hand_solve(self):
        t = F(0, 1, 2, 3)
        s = span([F(1, 1, 1, 1), t], 4)
        within = span([F(1, 1, 1, 1), t, tuple(x * x for x in t)], 4)
        c = orth_complement(s, Matrix.identity(4), within)
        assert c == span([F(1, -1, -1, 1)], 4)
        # the oracle: the null space of the 2 orthogonality equations inside `within`
        eqs = to_sympy([F(1, 1, 1, 1), t]) * to_sympy(within.vectors()).T
        (n,) = eqs.nullspace()
        v = (to_sympy(within.vectors()).T * n).T
        assert span(from_sympy(v), 4) == c

    def test_project_idempotent(self):
        s = span([F(1, 1, 1, 1), F(0, 1, 2, 3)], 4)
        v = F(3, 4, 5, 6)
        assert project(v, s, Matrix.identity(4)) == v

    def test_project_orthogonal(self):
        s = span([F(1, 1, 1, 1), F(0, 1, 2, 3)], 4)
        assert project(F(1, -1, -1, 1), s, Matrix.identity(4)) == F(0, 0, 0, 0)

    def test_project_gram_solve(self):
        s = span([F(1, 1, 1, 1), F(0, 1, 2, 3)], 4)
        p = project(F(1, 0, 0, 0), s, Matrix.identity(4))
        assert p == F("7/10", "2/5", "1/10", "-1/5")
        assert p == sympy_project(F(1, 0, 0, 0), [F(1, 1, 1, 1), F(0, 1, 2, 3)])

    def test_degenerate(self):
        s = span([F(1, 1, 0, 0)], 4)
        with pytest.raises(DegenerateGram):
            project(F(1, 0, 0, 0), s, Matrix.diagonal([1, -1, 1, 1]))

    @given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=3),
           st.lists(small, min_size=4, max_size=4))
    @settings(max_examples=40, deadline=None)
    def test_project_matches_sympy(self, rows, v):
        s = span(rows, 4)
        if not s.rank:
            return
        assert project(v, s, Matrix.identity(4)) == sympy_project(v, s.vectors())

    def test_sympy_oracle_is_exact(self):
        assert sympy.Rational(7, 10) == to_sympy([F("7/10")])[0]
