"""Monte Carlo oracles: determinism, agreement with identities and with each other."""

import math

import numpy as np
import pytest

from channel.fading_sim import (
    ChannelConfig,
    SimEstimate,
    equivalent_channel_upstream,
    semi_analytic_i0,
    semi_analytic_i1,
    semi_analytic_i2,
    semi_analytic_relay,
    simulate_network_node1,
    simulate_relay_symbol,
    wilson_std_error,
)
from oracle.quadrature import analytic_expect_q_1d, analytic_expect_q_2d_equal, expect_relay_3d
from sampling.closed_form import approx_network_node1, asymptotic_decomposition
from utils.curves import BerCurve, CurvePoint, db_to_linear
from utils.errors import DomainError


def _within(estimate: SimEstimate, expected: float, sigmas: float = 4.0) -> bool:
    return abs(estimate.mean - expected) <= sigmas * estimate.std_error


class TestTypes:
    def test_config_validation(self):
        with pytest.raises(DomainError):
            ChannelConfig(0.0)
        with pytest.raises(DomainError):
            ChannelConfig(10.0, variance_sd=-1.0)

    def test_estimate_validation(self):
        with pytest.raises(DomainError):
            SimEstimate(mean=1.5, std_error=0.0, trials=1, seed=0)

    def test_zero_trials(self):
        with pytest.raises(DomainError):
            semi_analytic_relay(ChannelConfig(10.0), 0, seed=1)
        with pytest.raises(DomainError):
            simulate_relay_symbol(ChannelConfig(10.0), 0, seed=1)

    def test_wilson_without_errors(self):
        assert wilson_std_error(0, 100) == pytest.approx(0.005 / 1.01, rel=1e-12)
        assert wilson_std_error(50, 100) > 0.0


class TestDeterminism:
    def test_same_seed_same_estimate(self):
        config = ChannelConfig(db_to_linear(10.0))
        assert semi_analytic_relay(config, 30_000, seed=5) == semi_analytic_relay(config, 30_000, seed=5)
        assert simulate_relay_symbol(config, 30_000, seed=5) == simulate_relay_symbol(config, 30_000, seed=5)

    def test_different_seed_different_estimate(self):
        config = ChannelConfig(db_to_linear(10.0))
        assert semi_analytic_relay(config, 30_000, seed=5).mean != semi_analytic_relay(config, 30_000, seed=6).mean

    @pytest.mark.parametrize("func", [semi_analytic_relay, simulate_relay_symbol, simulate_network_node1])
    def test_independent_of_worker_count(self, func):
        config = ChannelConfig(db_to_linear(12.0))
        single = func(config, 40_000, seed=17, workers=1, block_size=5_000)
        pooled = func(config, 40_000, seed=17, workers=6, block_size=5_000)
        assert single == pooled


class TestIntegrals:
    def test_i0_at_ten(self):
        estimate = semi_analytic_i0(10.0, 200_000, seed=2)
        assert _within(estimate, analytic_expect_q_1d(10.0, 1.0))
        assert estimate.mean == pytest.approx(0.0436, abs=3e-3)

    def test_i1_at_twenty_db(self):
        estimate = semi_analytic_i1(100.0, 200_000, seed=3)
        assert _within(estimate, analytic_expect_q_2d_equal(100.0, 2.0))

    def test_i2_is_i0_of_the_minimum(self):
        estimate = semi_analytic_i2(10.0, 200_000, seed=4)
        assert _within(estimate, analytic_expect_q_1d(5.0, 2.0))

    def test_std_error_scales_with_trials(self):
        small = semi_analytic_i0(10.0, 50_000, seed=8)
        large = semi_analytic_i0(10.0, 200_000, seed=8)
        assert small.std_error / large.std_error == pytest.approx(2.0, rel=0.2)


class TestRelay:
    def test_no_errors_at_sixty_db(self):
        estimate = simulate_relay_symbol(ChannelConfig(db_to_linear(60.0)), 100_000, seed=1)
        assert estimate.mean == 0.0
        assert estimate.error_events == 0
        assert estimate.low_confidence
        assert estimate.std_error > 0.0

    def test_symbol_level_agrees_with_semi_analytic(self):
        config = ChannelConfig(db_to_linear(10.0))
        symbol = simulate_relay_symbol(config, 400_000, seed=21)
        semi = semi_analytic_relay(config, 400_000, seed=22)
        combined = math.hypot(symbol.std_error, semi.std_error)
        assert abs(symbol.mean - semi.mean) <= 4.0 * combined
        assert not symbol.low_confidence

    @pytest.mark.slow
    @pytest.mark.parametrize("s", [10.0, 100.0])
    def test_semi_analytic_matches_cubature(self, s):
        estimate = semi_analytic_relay(ChannelConfig(s), 1_000_000, seed=41)
        assert _within(estimate, expect_relay_3d(s), sigmas=3.0)

    @pytest.mark.slow
    def test_symbol_level_matches_cubature(self):
        estimate = simulate_relay_symbol(ChannelConfig(10.0), 1_000_000, seed=42)
        assert not estimate.low_confidence
        assert _within(estimate, expect_relay_3d(10.0), sigmas=3.0)

    def test_unequal_variances_change_the_estimate(self):
        base = semi_analytic_relay(ChannelConfig(10.0), 50_000, seed=3)
        strong_direct = semi_analytic_relay(ChannelConfig(10.0, variance_sd=10.0), 50_000, seed=3)
        assert strong_direct.mean < base.mean


class TestNetwork:
    def test_upstream_hook_is_used(self):
        calls = []

        def perfect_upstream(rng, mean_snr, gamma_4):
            calls.append(gamma_4.size)
            return gamma_4.copy(), np.zeros_like(gamma_4)

        config = ChannelConfig(db_to_linear(15.0))
        hooked = simulate_network_node1(config, 20_000, seed=4, upstream=perfect_upstream, block_size=10_000)
        default = simulate_network_node1(config, 20_000, seed=4, block_size=10_000)
        assert calls == [10_000, 10_000]
        assert hooked.mean < default.mean

    def test_default_upstream_shapes(self):
        rng = np.random.default_rng(0)
        gamma_4 = rng.exponential(10.0, 1_000)
        gamma_eq4, p_e4 = equivalent_channel_upstream(rng, 10.0, gamma_4)
        assert gamma_eq4.shape == p_e4.shape == (1_000,)
        assert np.all((p_e4 >= 0.0) & (p_e4 <= 0.5))

    @pytest.mark.slow
    def test_closed_form_agreement(self):
        for snr_db in (15.0, 20.0, 25.0):
            s = db_to_linear(snr_db)
            estimate = simulate_network_node1(ChannelConfig(s), 2_000_000, seed=31)
            assert approx_network_node1(s).value == pytest.approx(estimate.mean, rel=0.30)

    @pytest.mark.slow
    def test_tail_diversity_two(self):
        points = []
        for snr_db in np.arange(20.0, 30.5, 2.5):
            estimate = simulate_network_node1(ChannelConfig(db_to_linear(float(snr_db))), 2_000_000, seed=32)
            points.append(CurvePoint(float(snr_db), estimate.mean, estimate.std_error))
        diversity, _ = asymptotic_decomposition(BerCurve("network", "montecarlo", points))
        assert diversity == pytest.approx(2.0, abs=0.2)
