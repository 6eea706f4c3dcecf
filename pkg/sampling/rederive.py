"""
Re-derivation of the relay impulse constants.

The relay approximation splits the conditional BER into three two-variable
asymptotic terms. For each one this module solves the asymptotic critical-point
problem with the general 2D solver, integrates the term over the quadrant for
its impulse weight, and reports both against the literal constants used by
closed_form. Nothing here changes those constants.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

from scipy.special import log_ndtr

from oracle.quadrature import QuadratureSpec, integrate_quadrant
from sampling.closed_form import RELAY_TERMS, STORED_CONSTANTS
from sampling.sampling_core import critical_point_2d_general

logger = logging.getLogger(__name__)

_SQRT2 = math.sqrt(2.0)


def _log_q(z: float) -> float:
    return float(log_ndtr(-z))


def _log_phi(z: float) -> float:
    return float(log_ndtr(z))


def log_p1_rd_limit(x: float, y: float) -> float:
    """log of (1 - Q(sqrt(2x))) Q(sqrt(2) (x + y) / sqrt(y)); x = gamma_SR, y = gamma_SD."""
    return _log_phi(_SQRT2 * math.sqrt(x)) + _log_q(_SQRT2 * (x + y) / math.sqrt(y))


def log_p1_sr_limit(x: float, y: float) -> float:
    """log of Q(sqrt(2 (x + y))); x = gamma_RD, y = gamma_SD."""
    return _log_q(math.sqrt(2.0 * (x + y)))


def log_p2_rd_limit(x: float, y: float) -> float:
    """log of Q(sqrt(2x)) Q(sqrt(2) (y - x) / sqrt(y)); x = gamma_SR, y = gamma_SD."""
    return _log_q(_SQRT2 * math.sqrt(x)) + _log_q(_SQRT2 * (y - x) / math.sqrt(y))


def _exp_integrand(log_q: Callable[[float, float], float]) -> Callable[[float, float], float]:
    def integrand(x: float, y: float) -> float:
        if x <= 0.0 or y <= 0.0:
            # the limits as either SNR reaches 0 are finite; nudge onto the open quadrant
            x, y = max(x, 1e-300), max(y, 1e-300)
        return math.exp(log_q(x, y))
    return integrand


@dataclass(frozen=True)
class RederivedTerm:
    name: str
    location: Tuple[float, float]
    weight: float
    stored_exponent_sum: float
    stored_weight: float
    stored_location: Optional[Tuple[float, float]] = None

    @property
    def exponent_sum(self) -> float:
        return self.location[0] + self.location[1]

    @property
    def exponent_drift(self) -> float:
        """Relative drift of x* + y* from the stored exponent."""
        return (self.exponent_sum - self.stored_exponent_sum) / self.stored_exponent_sum

    @property
    def weight_drift(self) -> float:
        return (self.weight - self.stored_weight) / self.stored_weight


_TERMS = (
    ("p1_rd_limit", log_p1_rd_limit, None),
    ("p1_sr_limit", log_p1_sr_limit,
     (STORED_CONSTANTS["critical_2d_a2"], STORED_CONSTANTS["critical_2d_a2"])),
    ("p2_rd_limit", log_p2_rd_limit,
     (STORED_CONSTANTS["p2_rd_limit_x"], STORED_CONSTANTS["p2_rd_limit_y"])),
)


def rederive_relay_terms(spec: Optional[QuadratureSpec] = None) -> List[RederivedTerm]:
    """Solve and integrate every relay asymptotic term; order matches RELAY_TERMS."""
    report = []
    for (name, log_q, stored_location), (weight, exponent) in zip(_TERMS, RELAY_TERMS):
        start = stored_location or (0.5 * exponent, 0.5 * exponent)
        location = critical_point_2d_general(log_q, start=start)
        mass = integrate_quadrant(_exp_integrand(log_q), spec, scales=(1.0, 1.0))
        term = RederivedTerm(
            name=name,
            location=location,
            weight=mass,
            stored_exponent_sum=exponent,
            stored_weight=weight,
            stored_location=stored_location,
        )
        logger.info(
            f"{name}: location=({location[0]:.4f}, {location[1]:.4f}) "
            f"exponent drift={term.exponent_drift:+.2%} weight={mass:.5f} drift={term.weight_drift:+.2%}"
        )
        report.append(term)
    return report
