import jsonschema
import pytest

from najc import model
from najc.hodge import NotPolarizing
from najc.report import (
    build_report,
    draw_coefficients,
    sweep,
    thread_count,
    validate_report,
)


def test_report_schema(golden_input):
    report = build_report(golden_input, cycle=True, digits=12)
    validate_report(report)
    assert list(report) == ["input", "diagnostics", "hodge", "operators", "cycle", "albanese"]


def test_schema_rejects_garbage():
    with pytest.raises(jsonschema.ValidationError):
        validate_report({"input": {}})


def test_weighted_gram_raises(golden_input):
    with pytest.raises(NotPolarizing):
        build_report(golden_input, gram=model.weighted_trace_gram([1, -1, -1, 1]))


def test_draws_nonzero_and_bounded():
    draws = draw_coefficients(2, 300, seed=0, bound=1)
    assert all(any(c) and all(-1 <= x <= 1 for x in c) for c in draws)


class TestSweep:
    def test_single_sample(self, golden_input):
        r = sweep(golden_input, 1, seed=3)
        assert r.samples[0].regular
        assert r.polarizing_fraction == 1.0

    def test_records_degenerate(self, golden_input):
        # the box [-1, 1]^2 contains classes vanishing at a point, e.g. (1, -1)
        r = sweep(golden_input, 60, seed=0, bound=1)
        assert any(not s.regular for s in r.samples)
        assert all(s.weight is None for s in r.samples if not s.regular)

    def test_same_seed(self, golden_input):
        assert sweep(golden_input, 20, seed=4) == sweep(golden_input, 20, seed=4)

    def test_weighted_gram(self, golden_input):
        r = sweep(golden_input, 20, seed=4, gram=model.weighted_trace_gram([1, -1, -1, 1]))
        assert r.polarizing_count < 20

    def test_generic_weight(self, golden_input):
        r = sweep(golden_input, 10, seed=1)
        assert r.generic_weight == 3

    def test_invalid(self, golden_input):
        with pytest.raises(ValueError):
            sweep(golden_input, 0, seed=1)


def test_thread_count(monkeypatch):
    monkeypatch.setenv("NAJC_THREADS", "3")
    assert thread_count() == 3
    monkeypatch.delenv("NAJC_THREADS")
    assert thread_count() >= 1
