import math

import pytest

from sampling.rederive import log_p1_rd_limit, log_p1_sr_limit, log_p2_rd_limit, rederive_relay_terms


def test_term_integrands_are_finite_on_the_quadrant():
    for log_q in (log_p1_rd_limit, log_p1_sr_limit, log_p2_rd_limit):
        for x, y in ((1e-6, 1e-6), (0.5, 2.0), (3.0, 0.1), (20.0, 20.0)):
            value = log_q(x, y)
            assert math.isfinite(value) and value <= 0.0


@pytest.mark.slow
def test_rederived_terms():
    terms = {term.name: term for term in rederive_relay_terms()}
    assert list(terms) == ["p1_rd_limit", "p1_sr_limit", "p2_rd_limit"]

    # the source-relay limit is the plain two-branch problem
    sr = terms["p1_sr_limit"]
    assert sr.location[0] == pytest.approx(0.8197, abs=5e-3)
    assert sr.location[1] == pytest.approx(0.8197, abs=5e-3)
    assert sr.weight == pytest.approx(0.1875, abs=1e-5)

    for term in terms.values():
        assert term.weight > 0.0
        assert math.isfinite(term.exponent_drift)
        assert math.isfinite(term.weight_drift)
