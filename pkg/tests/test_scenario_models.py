"""Equivalent-channel SNR and the instantaneous BER formulas."""

import math

import numpy as np
import pytest

from channel.scenario_models import (
    LinkSnrs,
    NetworkSnrs,
    gamma_eq,
    hop_error_probability,
    instantaneous_ber_network,
    instantaneous_ber_relay,
)
from sampling.special_functions import gaussian_q
from utils.errors import DomainError


class TestGammaEq:
    def test_unit_links(self):
        assert gamma_eq(1.0, 1.0) == pytest.approx(0.5595, abs=1e-3)

    def test_matches_two_hop_error_rate(self):
        geq = gamma_eq(3.0, 7.0)
        assert gaussian_q(math.sqrt(2.0 * geq)) == pytest.approx(hop_error_probability(3.0, 7.0), rel=1e-10)

    def test_saturates_when_both_hops_are_perfect(self):
        assert gamma_eq(1000.0, 2000.0) == 1000.0

    def test_zero_links(self):
        assert gamma_eq(0.0, 0.0) == 0.0
        assert gamma_eq(0.0, 50.0) == 0.0

    def test_below_weaker_hop(self):
        rng = np.random.default_rng(5)
        sr = rng.exponential(10.0, 10_000)
        rd = rng.exponential(10.0, 10_000)
        assert np.all(gamma_eq(sr, rd) <= np.minimum(sr, rd) * (1.0 + 1e-9))

    def test_array_matches_scalar(self):
        sr = np.array([0.1, 1.0, 5.0, 30.0, 200.0, 900.0])
        rd = np.array([2.0, 1.0, 0.3, 25.0, 150.0, 1200.0])
        expected = [gamma_eq(float(a), float(b)) for a, b in zip(sr, rd)]
        np.testing.assert_allclose(gamma_eq(sr, rd), expected, rtol=1e-9)

    def test_negative_rejected(self):
        with pytest.raises(DomainError):
            gamma_eq(-1.0, 1.0)


class TestRelayBer:
    def test_unit_links(self):
        assert instantaneous_ber_relay(LinkSnrs(1.0, 1.0, 1.0)) == pytest.approx(0.0481, abs=5e-4)

    def test_all_zero_is_coin_flip(self):
        assert instantaneous_ber_relay(LinkSnrs(0.0, 0.0, 0.0)) == pytest.approx(0.5, abs=1e-15)

    def test_strong_links_vanish(self):
        assert instantaneous_ber_relay(LinkSnrs(500.0, 500.0, 500.0)) < 1e-200

    def test_bounded(self):
        rng = np.random.default_rng(9)
        links = LinkSnrs(*(rng.exponential(3.0, 50_000) for _ in range(3)))
        ber = instantaneous_ber_relay(links)
        assert np.all((ber >= 0.0) & (ber <= 1.0))

    def test_monotone_in_direct_link_beyond_gamma_eq(self):
        sr, rd = 4.0, 6.0
        geq = gamma_eq(sr, rd)
        sd = np.linspace(geq, 60.0, 400)
        ber = instantaneous_ber_relay(LinkSnrs(sr, rd, sd))
        assert np.all(np.diff(ber) <= 1e-15)

    def test_precomputed_gamma_eq(self):
        links = LinkSnrs(2.0, 3.0, 4.0)
        assert instantaneous_ber_relay(links, gamma_equivalent=gamma_eq(2.0, 3.0)) == instantaneous_ber_relay(links)

    def test_negative_rejected(self):
        with pytest.raises(DomainError):
            LinkSnrs(1.0, -1.0, 1.0)


class TestNetworkBer:
    def test_unit_links(self):
        geq4 = gamma_eq(1.0, 1.0)
        snrs = NetworkSnrs(1.0, 1.0, 1.0, geq4, gaussian_q(math.sqrt(2.0 * geq4)))
        assert instantaneous_ber_network(snrs) == pytest.approx(0.0885, abs=1e-3)

    def test_exceeds_direct_term(self):
        snrs = NetworkSnrs(2.0, 3.0, 4.0, 1.5, 0.05)
        assert instantaneous_ber_network(snrs) >= gaussian_q(math.sqrt(10.0))

    def test_p_e4_range(self):
        with pytest.raises(DomainError):
            NetworkSnrs(1.0, 1.0, 1.0, 1.0, 0.7)
