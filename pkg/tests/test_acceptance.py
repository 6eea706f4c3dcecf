import pytest

import oracle.acceptance as acceptance
import sampling.closed_form as closed_form
from oracle.acceptance import (
    CheckResult,
    check_bounds,
    check_critical_points,
    check_determinism,
    check_i0,
    check_i1_i2,
    check_impulse_weights,
    check_network,
    check_oracle_consistency,
    check_relay,
)
from utils.report_utils import format_check_report


def _failed(results):
    return [r for r in results if not r.passed]


class TestFastChecks:
    def test_critical_points_pass(self):
        assert _failed(check_critical_points()) == []

    @pytest.mark.parametrize("key", ["critical_1d_a1", "critical_1d_a2", "critical_2d_a2", "p1_rd_limit"])
    def test_perturbed_constant_fails(self, monkeypatch, key):
        monkeypatch.setitem(closed_form.STORED_CONSTANTS, key, closed_form.STORED_CONSTANTS[key] * 1.1)
        failed = _failed(check_critical_points())
        assert any(key in r.name for r in failed)

    def test_perturbed_relay_term_fails(self, monkeypatch):
        terms = list(closed_form.RELAY_TERMS)
        terms[2] = (terms[2][0] * 1.1, terms[2][1])
        monkeypatch.setattr(closed_form, "RELAY_TERMS", tuple(terms))
        monkeypatch.setattr(acceptance, "RELAY_TERMS", tuple(terms))
        assert any("relay term 3" in r.name for r in _failed(check_critical_points()))

    def test_impulse_weights_pass(self):
        assert _failed(check_impulse_weights()) == []

    def test_i0_pass(self):
        assert _failed(check_i0()) == []

    def test_bounds_pass(self):
        assert _failed(check_bounds(seed=7)) == []

    def test_oracle_consistency_pass(self):
        assert _failed(check_oracle_consistency()) == []

    def test_determinism_pass(self):
        assert _failed(check_determinism(seed=7, trials=100_000)) == []


@pytest.mark.slow
class TestSlowChecks:
    def test_i1_i2(self):
        assert _failed(check_i1_i2()) == []

    def test_relay(self):
        assert _failed(check_relay(trials=1_000_000, seed=7)) == []

    def test_network(self):
        assert _failed(check_network(trials=1_000_000, seed=7)) == []


def test_report_lists_failures():
    results = [
        CheckResult("bounds", "ok", True, 0.0, 0.0, "max excess <= 0"),
        CheckResult("bounds", "broken", False, 2.0, 1.0, "rel 5%"),
    ]
    report = format_check_report(results)
    assert "✅ ok" in report
    assert "❌ broken" in report
    assert "1/2 comparisons passed" in report
