"""
Monte Carlo oracles over Rayleigh fading.

Symbol-level simulation pushes BPSK symbols through the relay chain and counts
detector errors; the semi-analytic estimators draw only the channel SNRs and
average the matching conditional BER expression.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from channel.rng import BlockTally, run_blocks
from channel.scenario_models import (
    LinkSnrs,
    NetworkSnrs,
    gamma_eq,
    instantaneous_ber_network,
    instantaneous_ber_relay,
)
from config.config import SETTINGS
from sampling.special_functions import gaussian_q
from utils.errors import DomainError

logger = logging.getLogger(__name__)

# Semi-analytic points with a larger relative standard error are flagged
SEMI_ANALYTIC_REL_ERROR = 0.1


@dataclass(frozen=True)
class ChannelConfig:
    mean_snr: float
    variance_sr: float = 1.0
    variance_rd: float = 1.0
    variance_sd: float = 1.0

    def __post_init__(self):
        for name in ("mean_snr", "variance_sr", "variance_rd", "variance_sd"):
            value = getattr(self, name)
            if not value > 0.0 or not math.isfinite(value):
                raise DomainError(f"{name} must be positive and finite, got {value!r}")

    def mean(self, variance: float) -> float:
        return self.mean_snr * variance


@dataclass(frozen=True)
class SimEstimate:
    mean: float
    std_error: float
    trials: int
    seed: int
    error_events: Optional[int] = None
    low_confidence: bool = False

    def __post_init__(self):
        if not 0.0 <= self.mean <= 1.0:
            raise DomainError(f"mean must lie in [0, 1], got {self.mean!r}")
        if self.std_error < 0.0:
            raise DomainError(f"std_error must be nonnegative, got {self.std_error!r}")


# Maps (rng, mean_snr, gamma_4) to (gamma_eq4, p_e4) of the two-hop link feeding slot 4
UpstreamModel = Callable[[np.random.Generator, float, np.ndarray], Tuple[np.ndarray, np.ndarray]]


def _check_trials(trials: int):
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials!r}")


def _complex_gaussian(rng: np.random.Generator, variance: float, n: int) -> np.ndarray:
    scale = math.sqrt(0.5 * variance)
    return scale * rng.standard_normal(n) + 1j * scale * rng.standard_normal(n)


def _exponential(rng: np.random.Generator, mean: float, n: int) -> np.ndarray:
    return mean * rng.standard_exponential(n)


def wilson_std_error(errors: int, trials: int, z: float = 1.0) -> float:
    """Half-width of the Wilson score interval at ``z`` sigma; nonzero even with no errors."""
    p = errors / trials
    denom = 1.0 + z * z / trials
    return z / denom * math.sqrt(p * (1.0 - p) / trials + z * z / (4.0 * trials * trials))


def _semi_analytic_estimate(tally: BlockTally, seed: int) -> SimEstimate:
    n = tally.trials
    mean = tally.total / n
    variance = max(tally.total_sq / n - mean * mean, 0.0)
    std_error = math.sqrt(variance / max(n - 1, 1))
    low = mean == 0.0 or std_error > SEMI_ANALYTIC_REL_ERROR * mean
    return SimEstimate(min(max(mean, 0.0), 1.0), std_error, n, seed, low_confidence=low)


def _counting_estimate(tally: BlockTally, seed: int) -> SimEstimate:
    errors = int(round(tally.total))
    min_events = SETTINGS["simulation"]["min_error_events"]
    if errors < min_events:
        logger.info(f"only {errors} error event(s) in {tally.trials} trials; point flagged low-confidence")
    return SimEstimate(
        mean=errors / tally.trials,
        std_error=wilson_std_error(errors, tally.trials),
        trials=tally.trials,
        seed=seed,
        error_events=errors,
        low_confidence=errors < min_events,
    )


# ---------------------------------------------------------------------------
# Canonical relay
# ---------------------------------------------------------------------------

def _relay_symbol_block(config: ChannelConfig) -> Callable[[np.random.Generator, int], BlockTally]:
    power = math.sqrt(config.mean_snr)

    def kernel(rng: np.random.Generator, n: int) -> BlockTally:
        x = 1.0 - 2.0 * rng.integers(0, 2, n)
        g_sr = power * _complex_gaussian(rng, config.variance_sr, n)
        g_rd = power * _complex_gaussian(rng, config.variance_rd, n)
        g_sd = power * _complex_gaussian(rng, config.variance_sd, n)
        noise_r = _complex_gaussian(rng, 1.0, n)
        noise_sd = _complex_gaussian(rng, 1.0, n)
        noise_rd = _complex_gaussian(rng, 1.0, n)

        # ML detection at the relay with perfect knowledge of h_SR
        y_sr = g_sr * x + noise_r
        x_relay = np.where(np.real(np.conj(g_sr) * y_sr) >= 0.0, 1.0, -1.0)

        y_sd = g_sd * x + noise_sd
        y_rd = g_rd * x_relay + noise_rd

        gamma_sr = np.abs(g_sr) ** 2
        gamma_rd = np.abs(g_rd) ** 2
        w_relay = gamma_eq(gamma_sr, gamma_rd) / gamma_rd
        combined = np.real(np.conj(g_sd) * y_sd + w_relay * np.conj(g_rd) * y_rd)
        decision = np.where(combined >= 0.0, 1.0, -1.0)
        return BlockTally.from_samples((decision != x).astype(float))

    return kernel


def simulate_relay_symbol(
    config: ChannelConfig,
    trials: int,
    seed: int,
    workers: Optional[int] = None,
    block_size: Optional[int] = None,
) -> SimEstimate:
    """Symbol-error-counting estimate of the C-MRC relay BER."""
    _check_trials(trials)
    tally = run_blocks(_relay_symbol_block(config), trials, seed, block_size, workers)
    return _counting_estimate(tally, seed)


def semi_analytic_relay(
    config: ChannelConfig,
    trials: int,
    seed: int,
    workers: Optional[int] = None,
    block_size: Optional[int] = None,
) -> SimEstimate:
    """Sample mean of the conditional relay BER over exponential link SNRs."""
    _check_trials(trials)

    def kernel(rng: np.random.Generator, n: int) -> BlockTally:
        links = LinkSnrs(
            gamma_sr=_exponential(rng, config.mean(config.variance_sr), n),
            gamma_rd=_exponential(rng, config.mean(config.variance_rd), n),
            gamma_sd=_exponential(rng, config.mean(config.variance_sd), n),
        )
        return BlockTally.from_samples(np.asarray(instantaneous_ber_relay(links)))

    return _semi_analytic_estimate(run_blocks(kernel, trials, seed, block_size, workers), seed)


# ---------------------------------------------------------------------------
# Integrals I0, I1, I2
# ---------------------------------------------------------------------------

def _check_snr(mean_snr: float):
    if not mean_snr > 0.0 or not math.isfinite(mean_snr):
        raise DomainError(f"mean_snr must be positive and finite, got {mean_snr!r}")


def semi_analytic_i0(
    mean_snr: float, trials: int, seed: int, scale_a: float = 1.0, workers: Optional[int] = None
) -> SimEstimate:
    """E{Q(sqrt(a x))} with x exponential of mean s."""
    _check_snr(mean_snr)
    _check_trials(trials)
    if not scale_a > 0.0:
        raise DomainError(f"scale_a must be positive, got {scale_a!r}")

    def kernel(rng: np.random.Generator, n: int) -> BlockTally:
        x = _exponential(rng, mean_snr, n)
        return BlockTally.from_samples(gaussian_q(np.sqrt(scale_a * x)))

    return _semi_analytic_estimate(run_blocks(kernel, trials, seed, workers=workers), seed)


def semi_analytic_i1(
    mean_snr: float, trials: int, seed: int, a1: float = 2.0, a2: float = 2.0, workers: Optional[int] = None
) -> SimEstimate:
    """E{Q(sqrt(a1 x + a2 y))} with x, y independent exponential of mean s."""
    _check_snr(mean_snr)
    _check_trials(trials)
    if not (a1 > 0.0 and a2 > 0.0):
        raise DomainError(f"a1 and a2 must be positive, got ({a1!r}, {a2!r})")

    def kernel(rng: np.random.Generator, n: int) -> BlockTally:
        x = _exponential(rng, mean_snr, n)
        y = _exponential(rng, mean_snr, n)
        return BlockTally.from_samples(gaussian_q(np.sqrt(a1 * x + a2 * y)))

    return _semi_analytic_estimate(run_blocks(kernel, trials, seed, workers=workers), seed)


def semi_analytic_i2(mean_snr: float, trials: int, seed: int, workers: Optional[int] = None) -> SimEstimate:
    """E{Q(sqrt(2 min(x, y)))} with x, y independent exponential of mean s."""
    _check_snr(mean_snr)
    _check_trials(trials)

    def kernel(rng: np.random.Generator, n: int) -> BlockTally:
        x = _exponential(rng, mean_snr, n)
        y = _exponential(rng, mean_snr, n)
        return BlockTally.from_samples(gaussian_q(np.sqrt(2.0 * np.minimum(x, y))))

    return _semi_analytic_estimate(run_blocks(kernel, trials, seed, workers=workers), seed)


# ---------------------------------------------------------------------------
# Network-coded node 1
# ---------------------------------------------------------------------------

def equivalent_channel_upstream(
    rng: np.random.Generator, mean_snr: float, gamma_4: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    """The two-hop link ending in slot 4 treated like the canonical relay path."""
    gamma_up = _exponential(rng, mean_snr, gamma_4.size)
    gamma_eq4 = gamma_eq(gamma_up, gamma_4)
    return gamma_eq4, gaussian_q(np.sqrt(2.0 * gamma_eq4))


def simulate_network_node1(
    config: ChannelConfig,
    trials: int,
    seed: int,
    upstream: Optional[UpstreamModel] = None,
    workers: Optional[int] = None,
    block_size: Optional[int] = None,
) -> SimEstimate:
    """
    Sample mean of the conditional node-1 BER of the network-coded system.

    ``upstream`` maps (rng, mean_snr, gamma_4) to (gamma_eq4, p_e4); the default
    models the link into slot 4 with the equivalent-channel SNR.
    """
    _check_trials(trials)
    s = config.mean_snr
    model = upstream or equivalent_channel_upstream

    def kernel(rng: np.random.Generator, n: int) -> BlockTally:
        gamma_1 = _exponential(rng, s, n)
        gamma_2 = _exponential(rng, s, n)
        gamma_4 = _exponential(rng, s, n)
        gamma_eq4, p_e4 = model(rng, s, gamma_4)
        snrs = NetworkSnrs(gamma_1, gamma_2, gamma_4, gamma_eq4, np.minimum(p_e4, 0.5))
        return BlockTally.from_samples(np.asarray(instantaneous_ber_network(snrs)))

    return _semi_analytic_estimate(run_blocks(kernel, trials, seed, block_size, workers), seed)
