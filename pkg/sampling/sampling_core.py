"""
Sampling-property machinery for BER expectation integrals over exponential pdfs.

After the change of variables x -> t^N the integrand Q(sqrt(a x)) f_X(x) becomes
q(t) c(t) f(t) with q(t) = Q(sqrt(a t^N)), c(t) = N t^(N-1), f(t) = f_X(t^N).
For large N either h = q*c or g = f*c concentrates into an impulse; this module
evaluates those factors at finite N, locates the impulses asymptotically and
decides which factor to sample with.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional, Tuple, Union

import numpy as np
from scipy.optimize import minimize
from scipy.special import log_ndtr

from config.config import SETTINGS
from sampling.roots import safeguarded_newton
from sampling.special_functions import gaussian_pdf, gaussian_q, log_gaussian_pdf
from utils.errors import DomainError

logger = logging.getLogger(__name__)

Q_SAMPLER_THRESHOLD = 2.0
PDF_SAMPLER_THRESHOLD = 1.0 / 3.0

@dataclass(frozen=True)
class IntegrandFactors:
    scale_a: float
    mean_snr: float
    order_n: int

    def __post_init__(self):
        if not self.scale_a > 0.0:
            raise DomainError(f"scale_a must be positive, got {self.scale_a!r}")
        if not self.mean_snr > 0.0:
            raise DomainError(f"mean_snr must be positive, got {self.mean_snr!r}")
        if int(self.order_n) != self.order_n or self.order_n < 1:
            raise DomainError(f"order_n must be a positive integer, got {self.order_n!r}")

@dataclass(frozen=True)
class ImpulseApprox:
    """One Dirac impulse: critical point per axis (in x = t^N coordinates) and mass."""
    locations: Tuple[float, ...]
    weight: float

    def __post_init__(self):
        if len(self.locations) not in (1, 2):
            raise DomainError("impulses are one- or two-dimensional")
        if not self.weight > 0.0:
            raise DomainError(f"impulse weight must be positive, got {self.weight!r}")
        if any(loc < 0.0 for loc in self.locations):
            raise DomainError("impulse locations must be nonnegative")

    @property
    def dimension(self) -> int:
        return len(self.locations)

    @property
    def exponent_sum(self) -> float:
        return float(sum(self.locations))

class RegimeKind(str, Enum):
    Q_SAMPLER = "q_sampler"
    PDF_SAMPLER = "pdf_sampler"

@dataclass(frozen=True)
class Regime:
    kind: RegimeKind
    threshold_high: float = field(default=Q_SAMPLER_THRESHOLD)
    threshold_low: float = field(default=PDF_SAMPLER_THRESHOLD)

    def __post_init__(self):
        if not self.threshold_low < self.threshold_high:
            raise DomainError("threshold_low must be below threshold_high")

# ---------------------------------------------------------------------------
# Finite-N integrand
# ---------------------------------------------------------------------------

def _log_factors(scale_a: float, mean_snr: float, order_n: int, t: np.ndarray):
    log_t = np.log(t)
    with np.errstate(over="ignore"):
        x = np.exp(order_n * log_t)
    log_q = log_ndtr(-np.sqrt(scale_a * x))
    log_c = math.log(order_n) + (order_n - 1) * log_t
    log_f = -math.log(mean_snr) - x / mean_snr
    return log_q, log_c, log_f

def _exp_or_zero(log_value: np.ndarray) -> np.ndarray:
    with np.errstate(invalid="ignore"):
        out = np.exp(log_value)
    return np.where(np.isnan(out), 0.0, out)

def finite_n_integrand_1d(factors: IntegrandFactors, t):
    """
    Return (h, g, full) at t for the transformed single-variable integrand:
    h = q c, g = f c and full = q c f. Evaluated in log space; underflow gives 0.
    """
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr <= 0.0) or not np.all(np.isfinite(t_arr)):
        raise DomainError("t must be positive and finite")

    log_q, log_c, log_f = _log_factors(factors.scale_a, factors.mean_snr, factors.order_n, t_arr)
    h = _exp_or_zero(log_q + log_c)
    g = _exp_or_zero(log_f + log_c)
    full = _exp_or_zero(log_q + log_c + log_f)
    if np.ndim(t) == 0:
        return float(h), float(g), float(full)
    return h, g, full

def finite_n_integrand_2d(a1: float, a2: float, mean_snr: float, order_n: int, t, u):
    """
    Two-variable analogue: h(t^N, u^N) = Q(sqrt(a1 t^N + a2 u^N)) N^2 t^(N-1) u^(N-1)
    and the full integrand h * f(t) * f(u). Returns (h, full).
    """
    for name, value in (("a1", a1), ("a2", a2), ("mean_snr", mean_snr)):
        if not value > 0.0:
            raise DomainError(f"{name} must be positive, got {value!r}")
    t_arr = np.asarray(t, dtype=float)
    u_arr = np.asarray(u, dtype=float)
    if np.any(t_arr <= 0.0) or np.any(u_arr <= 0.0):
        raise DomainError("t and u must be positive")

    log_n = math.log(order_n)
    log_t, log_u = np.log(t_arr), np.log(u_arr)
    with np.errstate(over="ignore", invalid="ignore"):
        x = np.exp(order_n * log_t)
        y = np.exp(order_n * log_u)
        log_q = log_ndtr(-np.sqrt(a1 * x + a2 * y))
    log_c = 2.0 * log_n + (order_n - 1) * (log_t + log_u)
    log_f = -2.0 * math.log(mean_snr) - (x + y) / mean_snr

    h = _exp_or_zero(log_q + log_c)
    full = _exp_or_zero(log_q + log_c + log_f)
    if np.ndim(t) == 0 and np.ndim(u) == 0:
        return float(h), float(full)
    return h, full

# ---------------------------------------------------------------------------
# Critical points
# ---------------------------------------------------------------------------

Order = Optional[Union[int, float]]

def _impulse_order(order_n: Order) -> Union[int, float]:
    order = SETTINGS["sampling"]["impulse_order"] if order_n is None else order_n
    if not order >= 1:
        raise DomainError(f"order_n must be >= 1, got {order!r}")
    return order

def _rho(order_n: Union[int, float]) -> float:
    return 1.0 if math.isinf(order_n) else (order_n - 1.0) / order_n

def stationary_radius(dimension: int, order_n: Union[int, float] = math.inf) -> float:
    """
    Root w of w phi(w) = 2 d rho Q(w), rho = (N-1)/N.

    This is the stationarity condition of h in x-coordinates with the total
    argument w = sqrt(a1 x + ...); rho -> 1 gives the asymptotic impulse.
    """
    if dimension not in (1, 2):
        raise DomainError(f"dimension must be 1 or 2, got {dimension!r}")
    rho = _rho(order_n)
    if rho <= 0.0:
        return 0.0
    log_rhs = math.log(2.0 * dimension * rho)

    def residual(w: float):
        log_q = float(log_ndtr(-w))
        mills = math.exp(log_gaussian_pdf(w) - log_q)
        value = math.log(w) + log_gaussian_pdf(w) - log_rhs - log_q
        return value, 1.0 / w - w + mills

    return safeguarded_newton(
        residual, 0.05, 12.0, x0=1.5,
        tol=SETTINGS["sampling"]["solver_tol"],
        max_iter=SETTINGS["sampling"]["solver_max_iter"],
    )

def critical_point_1d(scale_a: float, order_n: Order = None) -> float:
    """
    Location x* of the impulse replacing Q(sqrt(a x)) N t^(N-1).

    ``order_n`` defaults to the configured impulse order (1000);
    ``math.inf`` gives the N -> infinity root.
    """
    if not scale_a > 0.0:
        raise DomainError(f"scale_a must be positive, got {scale_a!r}")
    w = stationary_radius(1, _impulse_order(order_n))
    return w * w / scale_a

def finite_n_critical_point_1d(scale_a: float, order_n: int) -> float:
    """Exact peak of h at finite N, in x-coordinates."""
    if not scale_a > 0.0:
        raise DomainError(f"scale_a must be positive, got {scale_a!r}")
    w = stationary_radius(1, order_n)
    return w * w / scale_a

def critical_point_2d(a1: float, a2: float, order_n: Order = None) -> Tuple[float, float]:
    """
    Maximizer of Q(sqrt(a1 x + a2 y)) N^2 t^(N-1) u^(N-1).

    Both stationarity equations give a1 x = a2 y = w^2 / 2 with
    w phi(w) = 4 rho Q(w).
    """
    if not (a1 > 0.0 and a2 > 0.0):
        raise DomainError(f"a1 and a2 must be positive, got {a1!r}, {a2!r}")
    w = stationary_radius(2, _impulse_order(order_n))
    half = 0.5 * w * w
    return half / a1, half / a2

def stationarity_residual_1d(scale_a: float, location: float, order_n: Order = None) -> float:
    w = math.sqrt(scale_a * location)
    return w * gaussian_pdf(w) - 2.0 * _rho(_impulse_order(order_n)) * gaussian_q(w)

def stationarity_residual_2d(a1: float, a2: float, location: Tuple[float, float], order_n: Order = None) -> float:
    w = math.sqrt(a1 * location[0] + a2 * location[1])
    return w * gaussian_pdf(w) - 4.0 * _rho(_impulse_order(order_n)) * gaussian_q(w)

def critical_point_2d_general(
    log_q: Callable[[float, float], float],
    start: Tuple[float, float] = (1.0, 1.0),
    tol: float = 1e-10,
    order_n: Order = None,
) -> Tuple[float, float]:
    """
    Impulse location for an arbitrary positive integrand q(x, y).

    The stationarity conditions x d(log q)/dx = y d(log q)/dy = -rho make the
    critical point the maximizer of (x y)^rho q(x, y); it is searched in log
    coordinates so positivity needs no constraint.
    """
    rho = _rho(_impulse_order(order_n))

    def objective(z: np.ndarray) -> float:
        x, y = math.exp(z[0]), math.exp(z[1])
        value = log_q(x, y)
        if not math.isfinite(value):
            return math.inf
        return -(rho * (z[0] + z[1]) + value)

    z0 = np.log(np.asarray(start, dtype=float))
    result = minimize(
        objective, z0, method="Nelder-Mead",
        options={"xatol": tol, "fatol": tol * 1e-2, "maxiter": 4000, "maxfev": 8000},
    )
    if not result.success:
        logger.warning(f"critical_point_2d_general: {result.message}")
    logger.debug(f"critical_point_2d_general: {result.nit} iterations, f={result.fun!r}")
    return float(math.exp(result.x[0])), float(math.exp(result.x[1]))

def finite_n_peak_1d(scale_a: float, order_n: int, x_grid: Optional[np.ndarray] = None) -> float:
    """Grid-scan maximizer of h at finite N, reported in x-coordinates."""
    if x_grid is None:
        hi = 4.0 / scale_a
        x_grid = np.linspace(hi * 1e-4, hi, 400_001)
    x_grid = np.asarray(x_grid, dtype=float)
    t = np.exp(np.log(x_grid) / order_n)
    factors = IntegrandFactors(scale_a=scale_a, mean_snr=1.0, order_n=order_n)
    h, _, _ = finite_n_integrand_1d(factors, t)
    return float(x_grid[int(np.argmax(h))])

# ---------------------------------------------------------------------------
# Impulse weights and the pdf sampler
# ---------------------------------------------------------------------------

def impulse_weight_1d(scale_a: float) -> float:
    """Integral of Q(sqrt(a x)) over x >= 0."""
    if not scale_a > 0.0:
        raise DomainError(f"scale_a must be positive, got {scale_a!r}")
    return 1.0 / (2.0 * scale_a)

def impulse_weight_2d(a1: float, a2: float) -> float:
    """Integral of Q(sqrt(a1 x + a2 y)) over the positive quadrant."""
    if not (a1 > 0.0 and a2 > 0.0):
        raise DomainError(f"a1 and a2 must be positive, got {a1!r}, {a2!r}")
    return 3.0 / (4.0 * a1 * a2)


def impulse_approx_2d(a1: float, a2: float) -> ImpulseApprox:
    return ImpulseApprox(locations=critical_point_2d(a1, a2), weight=impulse_weight_2d(a1, a2))


def pdf_sampler_location(mean_snr: float, order_n: Union[int, float] = math.inf) -> float:
    """Critical point ((N-1)/N) s of g = f c; the pdf has unit mass so the weight is 1."""
    if not mean_snr > 0.0:
        raise DomainError(f"mean_snr must be positive, got {mean_snr!r}")
    if math.isinf(order_n):
        return float(mean_snr)
    if order_n < 1:
        raise DomainError(f"order_n must be >= 1, got {order_n!r}")
    return (order_n - 1.0) / order_n * mean_snr

def regime_select(mean_snr: float, midband_boundary: Optional[float] = None) -> Regime:
    """
    Pick the factor to sample with: the Q-function at s >= 2, the pdf at
    s <= 1/3. In between neither bound holds and ``midband_boundary``
    (default 1.0, i.e. 0 dB) splits the band.
    """
    if not mean_snr > 0.0:
        raise DomainError(f"mean_snr must be positive, got {mean_snr!r}")
    boundary = SETTINGS["sampling"]["midband_boundary"] if midband_boundary is None else midband_boundary
    if not PDF_SAMPLER_THRESHOLD <= boundary <= Q_SAMPLER_THRESHOLD:
        raise DomainError(f"midband boundary must lie in [1/3, 2], got {boundary!r}")

    if mean_snr >= Q_SAMPLER_THRESHOLD:
        return Regime(RegimeKind.Q_SAMPLER)
    if mean_snr <= PDF_SAMPLER_THRESHOLD:
        return Regime(RegimeKind.PDF_SAMPLER)
    if mean_snr >= boundary:
        return Regime(RegimeKind.Q_SAMPLER)
    return Regime(RegimeKind.PDF_SAMPLER)
