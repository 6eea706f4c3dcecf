"""
Closed-form average-BER approximations built from sampling impulses.

Each result keeps its decomposition into terms amplitude / s^d * exp(-e / s):
the power of s is the diversity order, amplitude and e carry the coding gain.
All formulas assume unit link variances, so every link mean SNR equals s.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from sampling.sampling_core import (
    RegimeKind,
    critical_point_1d,
    critical_point_2d,
    impulse_approx_2d,
    impulse_weight_1d,
    pdf_sampler_location,
    regime_select,
)
from sampling.special_functions import gaussian_q
from utils.curves import BerCurve
from utils.errors import DomainError, InsufficientDataError

logger = logging.getLogger(__name__)

# Stored impulse locations. The first three are reproduced by the live
# solvers; the relay/network ones come without their optimization problems
# (see sampling.rederive).
STORED_CONSTANTS: Dict[str, float] = {
    "critical_1d_a1": 1.4157,
    "critical_1d_a2": 0.7079,
    "critical_2d_a2": 0.8197,
    "p1_rd_limit": 1.3049,
    "p2_rd_limit_x": 1.7564,
    "p2_rd_limit_y": 1.3737,
}

CHERNOFF_LOCATION = 2.0

RELAY_TERMS: Tuple[Tuple[float, float], ...] = (
    (1.0 / 16.0, STORED_CONSTANTS["p1_rd_limit"]),
    (3.0 / 16.0, 2.0 * STORED_CONSTANTS["critical_2d_a2"]),
    (1.0 / 4.0, STORED_CONSTANTS["p2_rd_limit_x"] + STORED_CONSTANTS["p2_rd_limit_y"]),
)

NETWORK_NODE1_TERMS: Tuple[Tuple[float, float], ...] = (
    (1.0 / 16.0, 1.3049),
    (3.0 / 8.0, 2.0 * 0.8197),
    (4.0 / 16.0, 3.1301),
)


@dataclass(frozen=True)
class SamplingTerm:
    amplitude: float
    exponent_sum: float

    def evaluate(self, mean_snr: float, diversity_order: int) -> float:
        return self.amplitude / mean_snr ** diversity_order * math.exp(-self.exponent_sum / mean_snr)


@dataclass(frozen=True)
class ClosedFormBer:
    mean_snr: float
    value: float
    diversity_order: int
    terms: Tuple[SamplingTerm, ...]
    regime: RegimeKind = RegimeKind.Q_SAMPLER

    @property
    def amplitude(self) -> float:
        return sum(term.amplitude for term in self.terms)


def _check_snr(mean_snr: float):
    if not mean_snr > 0.0 or not math.isfinite(mean_snr):
        raise DomainError(f"mean_snr must be positive and finite, got {mean_snr!r}")


def _from_terms(mean_snr: float, diversity_order: int, terms: Sequence[Tuple[float, float]]) -> ClosedFormBer:
    built = tuple(SamplingTerm(float(a), float(e)) for a, e in terms)
    value = math.fsum(term.evaluate(mean_snr, diversity_order) for term in built)
    return ClosedFormBer(mean_snr=mean_snr, value=value, diversity_order=diversity_order, terms=built)


def approx_i0_q_sampler(mean_snr: float) -> ClosedFormBer:
    """Q-function as the sampler: (1/(2s)) exp(-x*/s) with x* the live 1D critical point."""
    _check_snr(mean_snr)
    return _from_terms(mean_snr, 1, [(impulse_weight_1d(1.0), critical_point_1d(1.0))])


def approx_i0_pdf_sampler(mean_snr: float) -> ClosedFormBer:
    """Pdf as the sampler: unit-mass impulse at x = s, giving Q(sqrt(s))."""
    _check_snr(mean_snr)
    value = gaussian_q(math.sqrt(pdf_sampler_location(mean_snr)))
    return ClosedFormBer(mean_snr=mean_snr, value=value, diversity_order=1, terms=(),
                         regime=RegimeKind.PDF_SAMPLER)


def approx_i0_chernoff(mean_snr: float) -> ClosedFormBer:
    """Impulse placed where the Chernoff-bounded sampler peaks (x = 2)."""
    _check_snr(mean_snr)
    return _from_terms(mean_snr, 1, [(impulse_weight_1d(1.0), CHERNOFF_LOCATION)])


def approx_i0(mean_snr: float, midband_boundary: Optional[float] = None) -> ClosedFormBer:
    """Piecewise I0: pdf sampler at low SNR, Q-function sampler otherwise."""
    _check_snr(mean_snr)
    regime = regime_select(mean_snr, midband_boundary)
    if regime.kind is RegimeKind.PDF_SAMPLER:
        return approx_i0_pdf_sampler(mean_snr)
    return approx_i0_q_sampler(mean_snr)


def approx_i1(mean_snr: float, a1: float = 2.0, a2: float = 2.0) -> ClosedFormBer:
    """E{Q(sqrt(a1 X + a2 Y))} from the two-dimensional impulse."""
    _check_snr(mean_snr)
    impulse = impulse_approx_2d(a1, a2)
    return _from_terms(mean_snr, 2, [(impulse.weight, impulse.exponent_sum)])


def approx_i2(mean_snr: float) -> ClosedFormBer:
    """
    E{Q(sqrt(2 min(X, Y)))} via Q(sqrt(2 min)) <= Q(sqrt(2x)) + Q(sqrt(2y)),
    each summand sampled in one dimension.
    """
    _check_snr(mean_snr)
    term = (impulse_weight_1d(2.0), critical_point_1d(2.0))
    return _from_terms(mean_snr, 1, [term, term])


def approx_relay(mean_snr: float) -> ClosedFormBer:
    """End-to-end average BER of the C-MRC relay: I3 (two terms) + I4."""
    _check_snr(mean_snr)
    return _from_terms(mean_snr, 2, RELAY_TERMS)


def approx_network_node1(mean_snr: float) -> ClosedFormBer:
    """Average BER of node 1's bit in the network-coded system."""
    _check_snr(mean_snr)
    return _from_terms(mean_snr, 2, NETWORK_NODE1_TERMS)


def live_constants() -> Dict[str, float]:
    """Solver output for the stored constants the solvers can reproduce."""
    return {
        "critical_1d_a1": critical_point_1d(1.0),
        "critical_1d_a2": critical_point_1d(2.0),
        "critical_2d_a2": critical_point_2d(2.0, 2.0)[0],
    }


def asymptotic_decomposition(
    curve: BerCurve,
    tail_start_db: float = 20.0,
    min_points: int = 4,
) -> Tuple[float, float]:
    """
    Fit log10(BER) = m * snr_db + b on the high-SNR tail.

    Returns (diversity order d = -10 m, coding gain in dB) where the asymptote
    is (G s)^(-d), so G_dB = -10 b / d. The coding gain is NaN for a flat curve.
    """
    snr_db = curve.snr_db
    ber = curve.ber
    mask = (snr_db >= tail_start_db) & (ber > 0.0)
    if int(mask.sum()) < min_points:
        raise InsufficientDataError(
            f"{curve.scenario}/{curve.method}: need {min_points} points with BER > 0 at "
            f">= {tail_start_db} dB, got {int(mask.sum())}"
        )

    slope, intercept = np.polyfit(snr_db[mask], np.log10(ber[mask]), 1)
    diversity = -10.0 * float(slope)
    if abs(diversity) < 1e-12:
        return 0.0, math.nan
    coding_gain_db = -10.0 * float(intercept) / diversity
    logger.debug(f"{curve.scenario}/{curve.method}: d={diversity:.4f}, G={coding_gain_db:.3f} dB")
    return diversity, coding_gain_db
