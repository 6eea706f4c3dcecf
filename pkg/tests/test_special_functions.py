"""Gaussian tail, its inverse and the bounding exponentials."""

import math

import numpy as np
import pytest

from sampling.special_functions import (
    chernoff_bound,
    exp_lower_bound,
    exponential_pdf,
    gaussian_pdf,
    gaussian_q,
    gaussian_q_inv,
    gaussian_q_inv_array,
    log_gaussian_q,
    pdf_dominance_threshold,
)
from utils.errors import DomainError


class TestGaussianQ:
    def test_known_values(self):
        assert gaussian_q(0.0) == pytest.approx(0.5, abs=1e-15)
        assert gaussian_q(1.0) == pytest.approx(0.15865525393145707, rel=1e-12)
        assert gaussian_q(3.0) == pytest.approx(0.0013498980316301, rel=1e-10)

    def test_symmetry(self):
        x = np.linspace(-6.0, 6.0, 61)
        np.testing.assert_allclose(gaussian_q(x) + gaussian_q(-x), 1.0, atol=1e-15)

    def test_scalar_in_scalar_out(self):
        assert isinstance(gaussian_q(1.0), float)
        assert isinstance(gaussian_q(np.array([1.0, 2.0])), np.ndarray)

    def test_non_finite_rejected(self):
        with pytest.raises(DomainError):
            gaussian_q(math.nan)
        with pytest.raises(DomainError):
            gaussian_q(np.array([0.0, math.inf]))

    def test_log_q_deep_tail(self):
        # Q(40) underflows; its log does not
        assert gaussian_q(40.0) == 0.0
        assert log_gaussian_q(40.0) == pytest.approx(-804.608, rel=1e-5)

    def test_pdf(self):
        assert gaussian_pdf(0.0) == pytest.approx(1.0 / math.sqrt(2.0 * math.pi), rel=1e-14)


class TestGaussianQInv:
    @pytest.mark.parametrize("x", [-2.0, -0.3, 0.7, 1.0, 4.5, 12.0])
    def test_inverts_q(self, x):
        assert gaussian_q_inv(gaussian_q(x)) == pytest.approx(x, abs=1e-9)

    def test_half_is_zero(self):
        assert gaussian_q_inv(0.5) == 0.0

    def test_tiny_probability_keeps_relative_accuracy(self):
        p = 1e-300
        x = gaussian_q_inv(p)
        assert log_gaussian_q(x) == pytest.approx(math.log(p), rel=1e-10)

    @pytest.mark.parametrize("p", [0.0, 1.0, -0.1, 1.5, math.nan])
    def test_outside_open_interval(self, p):
        with pytest.raises(DomainError):
            gaussian_q_inv(p)

    def test_array_version_matches_scalar(self):
        p = np.array([0.4, 0.1, 1e-5, 1e-40, 1e-200])
        expected = [gaussian_q_inv(v) for v in p]
        np.testing.assert_allclose(gaussian_q_inv_array(p), expected, rtol=1e-9)


class TestBounds:
    def test_chernoff_at_ten(self):
        assert chernoff_bound(10.0) == pytest.approx(0.5 * math.exp(-5.0), rel=1e-14)
        assert chernoff_bound(10.0) >= gaussian_q(math.sqrt(10.0))

    def test_chernoff_domain(self):
        with pytest.raises(DomainError):
            chernoff_bound(-1.0)

    def test_lower_bound_near_one(self):
        value = exp_lower_bound(1.0 + 1e-9)
        assert value == pytest.approx(3.0 * math.exp(-3.0), rel=1e-8)
        assert gaussian_q(1.0) >= value

    def test_lower_bound_domain(self):
        with pytest.raises(DomainError):
            exp_lower_bound(1.0)

    def test_lower_bound_decreasing(self):
        assert exp_lower_bound(3.0) < exp_lower_bound(2.0)

    def test_random_samples(self):
        rng = np.random.default_rng(11)
        x = rng.uniform(0.0, 40.0, 100_000)
        assert np.all(gaussian_q(np.sqrt(x)) <= chernoff_bound(x))
        x = rng.uniform(1.0, 40.0, 100_000)
        x = x[x > 1.0]
        assert np.all(gaussian_q(np.sqrt(x)) >= exp_lower_bound(x))

    @pytest.mark.parametrize("s", [2.0, 3.0, 10.0, 1000.0])
    def test_q_below_pdf_beyond_threshold(self, s):
        lo = max(pdf_dominance_threshold(s), 1.0)
        x = np.linspace(lo, 40.0 * s, 20_000)
        assert np.all(gaussian_q(np.sqrt(x)) <= exponential_pdf(x, s))

    @pytest.mark.parametrize("s", [1.0 / 3.0, 0.2, 0.01])
    def test_q_above_pdf_for_small_snr(self, s):
        x = np.linspace(1.0 + 1e-9, 40.0, 20_000)
        assert np.all(gaussian_q(np.sqrt(x)) >= exponential_pdf(x, s))

    def test_threshold_at_two_is_zero(self):
        assert pdf_dominance_threshold(2.0) == 0.0
        with pytest.raises(DomainError):
            pdf_dominance_threshold(1.0)
