"""
Exact-expectation oracle: adaptive quadrature of the BER expectation integrals
over exponential SNR pdfs.

Every exponential axis is integrated in v = sqrt(gamma) over
[0, sqrt(truncation_multiplier * s)], which removes the square-root behaviour of
Q(sqrt(.)) at the origin; the discarded tail carries exp(-truncation_multiplier)
of the pdf mass.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.integrate import quad

from channel.scenario_models import LinkSnrs, gamma_eq, instantaneous_ber_relay
from config.config import SETTINGS
from utils.errors import DomainError, QuadratureConvergenceError

logger = logging.getLogger(__name__)

_SQRT2 = math.sqrt(2.0)


def _q(x: float) -> float:
    return 0.5 * math.erfc(x / _SQRT2)


@dataclass(frozen=True)
class QuadratureSpec:
    rel_tol: float = 1e-8
    abs_tol: float = 1e-12
    max_subdivisions: int = 200
    truncation_multiplier: float = 40.0
    cubature_nodes: int = 8
    cubature_rel_tol: float = 1e-4

    def __post_init__(self):
        if not (self.rel_tol > 0.0 and self.abs_tol > 0.0 and self.cubature_rel_tol > 0.0):
            raise DomainError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1 or self.cubature_nodes < 2:
            raise DomainError("max_subdivisions must be >= 1 and cubature_nodes >= 2")
        if self.truncation_multiplier < 20.0:
            raise DomainError(f"truncation_multiplier must be >= 20, got {self.truncation_multiplier!r}")

    @classmethod
    def from_settings(cls) -> "QuadratureSpec":
        return cls(**SETTINGS["quadrature"])

    @property
    def tail_mass(self) -> float:
        return math.exp(-self.truncation_multiplier)


def _resolve(spec: Optional[QuadratureSpec]) -> QuadratureSpec:
    return QuadratureSpec.from_settings() if spec is None else spec


def _check_positive(**values: float):
    for name, value in values.items():
        if not value > 0.0 or not math.isfinite(value):
            raise DomainError(f"{name} must be positive and finite, got {value!r}")


def _adaptive_quad(
    func: Callable[[float], float],
    lo: float,
    hi: float,
    spec: QuadratureSpec,
    points: Iterable[float] = (),
    tighten: float = 1.0,
) -> float:
    inner = sorted({p for p in points if lo < p < hi})
    result = quad(
        func, lo, hi,
        epsabs=spec.abs_tol * tighten,
        epsrel=spec.rel_tol * tighten,
        limit=spec.max_subdivisions,
        points=inner or None,
        full_output=1,
    )
    value, error = result[0], result[1]
    if len(result) > 3:
        raise QuadratureConvergenceError(
            f"quad on [{lo:.4g}, {hi:.4g}] stopped at error {error:.3e}: {result[3].splitlines()[0]}",
            best_estimate=value,
            error_estimate=error,
        )
    return value


def _axis(mean_snr: float, spec: QuadratureSpec) -> Tuple[float, Callable[[float], float]]:
    """Upper limit in v and the pdf weight (2v/s) exp(-v^2/s) of one exponential axis."""
    v_max = math.sqrt(spec.truncation_multiplier * mean_snr)

    def weight(v: float) -> float:
        return 2.0 * v / mean_snr * math.exp(-v * v / mean_snr)

    return v_max, weight


def _breakpoints(mean_snr: float, scales: Iterable[float]) -> list:
    root = math.sqrt(mean_snr)
    return [root, 3.0 * root] + [s for s in scales]


# ---------------------------------------------------------------------------
# Closed identities used to check the oracle itself
# ---------------------------------------------------------------------------

def analytic_expect_q_1d(mean_snr: float, scale_a: float) -> float:
    """E{Q(sqrt(a X))}, X ~ Exp(mean s): (1/2)(1 - sqrt(a s / (a s + 2)))."""
    _check_positive(mean_snr=mean_snr, scale_a=scale_a)
    product = scale_a * mean_snr
    return 0.5 * (1.0 - math.sqrt(product / (product + 2.0)))


def analytic_expect_q_2d_equal(mean_snr: float, scale_a: float) -> float:
    """E{Q(sqrt(a (X + Y)))}: two-branch MRC with per-branch mean SNR a s / 2."""
    _check_positive(mean_snr=mean_snr, scale_a=scale_a)
    branch = 0.5 * scale_a * mean_snr
    mu = math.sqrt(branch / (1.0 + branch))
    return (0.5 * (1.0 - mu)) ** 2 * (2.0 + mu)


# ---------------------------------------------------------------------------
# Expectations
# ---------------------------------------------------------------------------

def expect_q_1d(mean_snr: float, scale_a: float, spec: Optional[QuadratureSpec] = None) -> float:
    """E{Q(sqrt(a X))} for X exponential with mean s."""
    _check_positive(mean_snr=mean_snr, scale_a=scale_a)
    spec = _resolve(spec)
    v_max, weight = _axis(mean_snr, spec)
    root_a = math.sqrt(scale_a)

    def integrand(v: float) -> float:
        return _q(root_a * v) * weight(v)

    points = _breakpoints(mean_snr, (1.0 / root_a, 4.0 / root_a))
    return _adaptive_quad(integrand, 0.0, v_max, spec, points)


def expect_q_2d(mean_snr: float, a1: float, a2: float, spec: Optional[QuadratureSpec] = None) -> float:
    """E{Q(sqrt(a1 X + a2 Y))} for independent X, Y exponential with mean s."""
    _check_positive(mean_snr=mean_snr, a1=a1, a2=a2)
    spec = _resolve(spec)
    v_max, weight = _axis(mean_snr, spec)
    inner_points = _breakpoints(mean_snr, (1.0 / math.sqrt(a1), 4.0 / math.sqrt(a1)))
    outer_points = _breakpoints(mean_snr, (1.0 / math.sqrt(a2), 4.0 / math.sqrt(a2)))

    def outer(v2: float) -> float:
        offset = a2 * v2 * v2

        def inner(v1: float) -> float:
            return _q(math.sqrt(a1 * v1 * v1 + offset)) * weight(v1)

        return weight(v2) * _adaptive_quad(inner, 0.0, v_max, spec, inner_points, tighten=0.1)

    return _adaptive_quad(outer, 0.0, v_max, spec, outer_points)


def expect_min_2d(mean_snr: float, spec: Optional[QuadratureSpec] = None) -> float:
    """
    E{Q(sqrt(2 min(X, Y)))}. By symmetry this is twice the integral over x < y,
    which keeps the kink of min() on the integration boundary.
    """
    _check_positive(mean_snr=mean_snr)
    spec = _resolve(spec)
    v_max, weight = _axis(mean_snr, spec)
    points = _breakpoints(mean_snr, (1.0 / _SQRT2, 4.0 / _SQRT2))

    def inner(v1: float) -> float:
        return _q(_SQRT2 * v1) * weight(v1)

    def outer(v2: float) -> float:
        return weight(v2) * _adaptive_quad(inner, 0.0, v2, spec, points, tighten=0.1)

    return 2.0 * _adaptive_quad(outer, 0.0, v_max, spec, points)


def _panel_rule(mean_snr: float, spec: QuadratureSpec, nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre nodes in v with the exponential pdf folded into the weights."""
    v_max = math.sqrt(spec.truncation_multiplier * mean_snr)
    root = math.sqrt(mean_snr)
    breaks = {0.0, v_max}
    breaks.update(root * f for f in (0.25, 0.5, 1.0, 2.0, 4.0))
    k = -4
    while 2.0 ** (k / 2.0) < v_max:
        breaks.add(2.0 ** (k / 2.0))
        k += 1
    edges = np.array(sorted(b for b in breaks if 0.0 <= b <= v_max))

    x, w = leggauss(nodes)
    half = 0.5 * np.diff(edges)[:, None]
    mid = 0.5 * (edges[1:] + edges[:-1])[:, None]
    v = (mid + half * x[None, :]).ravel()
    gl = (half * w[None, :]).ravel()
    return v, gl * 2.0 * v / mean_snr * np.exp(-v * v / mean_snr)


def _relay_cubature(mean_snr: float, spec: QuadratureSpec, nodes: int) -> float:
    v, weights = _panel_rule(mean_snr, spec, nodes)
    gamma = v * v
    sr = gamma[:, None]
    rd = gamma[None, :]
    geq = gamma_eq(np.broadcast_to(sr, (gamma.size, gamma.size)), np.broadcast_to(rd, (gamma.size, gamma.size)))
    pair_weights = weights[:, None] * weights[None, :]

    slices = np.empty(gamma.size)
    for k, sd in enumerate(gamma):
        ber = instantaneous_ber_relay(LinkSnrs(sr, rd, sd), gamma_equivalent=geq)
        slices[k] = np.sum(ber * pair_weights)
    return float(np.sum(slices * weights))


def expect_relay_3d(mean_snr: float, spec: Optional[QuadratureSpec] = None) -> float:
    """
    Average end-to-end BER of the C-MRC relay, every link exponential with
    mean s. Tensor-product panel Gauss-Legendre, checked by doubling the
    nodes per panel.
    """
    _check_positive(mean_snr=mean_snr)
    spec = _resolve(spec)
    coarse = _relay_cubature(mean_snr, spec, spec.cubature_nodes)
    fine = _relay_cubature(mean_snr, spec, 2 * spec.cubature_nodes)
    drift = abs(fine - coarse)
    logger.debug(f"expect_relay_3d(s={mean_snr!r}): coarse={coarse!r} fine={fine!r}")
    if drift > max(spec.abs_tol, spec.cubature_rel_tol * abs(fine)):
        raise QuadratureConvergenceError(
            f"relay cubature at s={mean_snr:.4g} changed by {drift:.3e} under node doubling",
            best_estimate=fine,
            error_estimate=drift,
        )
    return fine


# ---------------------------------------------------------------------------
# Impulse weights
# ---------------------------------------------------------------------------

def integrate_q_1d(scale_a: float, spec: Optional[QuadratureSpec] = None) -> float:
    """Integral of Q(sqrt(a x)) over x >= 0 (the 1D impulse mass)."""
    _check_positive(scale_a=scale_a)
    spec = _resolve(spec)
    root_a = math.sqrt(scale_a)

    def integrand(v: float) -> float:
        return _q(root_a * v) * 2.0 * v

    return _adaptive_quad(integrand, 0.0, 40.0 / root_a, spec, (1.0 / root_a, 4.0 / root_a))


def integrate_quadrant(
    func: Callable[[float, float], float],
    spec: Optional[QuadratureSpec] = None,
    extent: Tuple[float, float] = (40.0, 40.0),
    scales: Tuple[float, float] = (1.0, 1.0),
) -> float:
    """
    Integral of func(x, y) over the positive quadrant, computed in
    (sqrt(x), sqrt(y)) up to ``extent`` on each axis. ``scales`` are the v
    lengths over which func changes, used as breakpoints.
    """
    spec = _resolve(spec)

    def outer(v2: float) -> float:
        y = v2 * v2

        def inner(v1: float) -> float:
            return func(v1 * v1, y) * 2.0 * v1

        points = (scales[0], 4.0 * scales[0])
        return 2.0 * v2 * _adaptive_quad(inner, 0.0, extent[0], spec, points, tighten=0.1)

    return _adaptive_quad(outer, 0.0, extent[1], spec, (scales[1], 4.0 * scales[1]))


def integrate_q_2d(a1: float, a2: float, spec: Optional[QuadratureSpec] = None) -> float:
    """Integral of Q(sqrt(a1 x + a2 y)) over the positive quadrant (the 2D impulse mass)."""
    _check_positive(a1=a1, a2=a2)
    r1, r2 = math.sqrt(a1), math.sqrt(a2)

    def integrand(x: float, y: float) -> float:
        return _q(math.sqrt(a1 * x + a2 * y))

    return integrate_quadrant(integrand, spec, extent=(40.0 / r1, 40.0 / r2), scales=(1.0 / r1, 1.0 / r2))
