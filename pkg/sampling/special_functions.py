"""
Gaussian tail function, its inverse, the Gaussian pdf and the exponential
bounds used to decide which factor of the BER integrand acts as the sampler.

Every function accepts a float or a numpy array; scalars come back as float.
"""

import logging
import math
from typing import Optional, TypeVar, Union

import numpy as np
from scipy.special import erfc, log_ndtr, ndtri

from config.config import SETTINGS
from sampling.roots import expand_bracket, safeguarded_newton
from utils.errors import DomainError

logger = logging.getLogger(__name__)

NumberOrArray = TypeVar("NumberOrArray", np.ndarray, float)

_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)


def _as_output(value: np.ndarray, like) -> Union[float, np.ndarray]:
    return float(value) if np.ndim(like) == 0 else value


def gaussian_q(x: NumberOrArray) -> NumberOrArray:
    """Upper tail of the standard normal, Q(x) = 0.5 * erfc(x / sqrt(2))."""
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError("gaussian_q requires finite arguments")
    return _as_output(0.5 * erfc(arr / math.sqrt(2.0)), x)


def log_gaussian_q(x: NumberOrArray) -> NumberOrArray:
    """log Q(x); stays finite far into the tail where Q itself underflows."""
    arr = np.asarray(x, dtype=float)
    return _as_output(log_ndtr(-arr), x)


def gaussian_pdf(x: NumberOrArray) -> NumberOrArray:
    arr = np.asarray(x, dtype=float)
    return _as_output(np.exp(-0.5 * arr * arr - _LOG_SQRT_2PI), x)


def log_gaussian_pdf(x: NumberOrArray) -> NumberOrArray:
    arr = np.asarray(x, dtype=float)
    return _as_output(-0.5 * arr * arr - _LOG_SQRT_2PI, x)


def _inverse_residual(log_p: float):
    # f(x) = log Q(x) - log p is strictly decreasing; f'(x) = -phi(x)/Q(x)
    def residual(x: float):
        log_q = float(log_ndtr(-x))
        return log_q - log_p, -math.exp(log_gaussian_pdf(x) - log_q)
    return residual


def gaussian_q_inv(p: float, tol: Optional[float] = None) -> float:
    """
    Inverse of the Gaussian tail function.

    Starts from the rational approximation behind ``scipy.special.ndtri`` and
    polishes it with a bracketed Newton iteration on log Q, so tiny
    probabilities keep full relative accuracy.
    """
    p = float(p)
    if not (0.0 < p < 1.0) or math.isnan(p):
        raise DomainError(f"gaussian_q_inv requires 0 < p < 1, got {p!r}")
    if p == 0.5:
        return 0.0

    tol = SETTINGS["sampling"]["solver_tol"] if tol is None else tol
    x0 = -float(ndtri(p))
    residual = _inverse_residual(math.log(p))
    lo, hi = expand_bracket(residual, x0 - 0.25, x0 + 0.25)
    return safeguarded_newton(
        residual, lo, hi, x0=x0, tol=tol,
        max_iter=SETTINGS["sampling"]["solver_max_iter"],
    )


def gaussian_q_inv_array(p: np.ndarray) -> np.ndarray:
    """Vectorized Q^{-1}: ndtri followed by one log-space Newton step."""
    p = np.asarray(p, dtype=float)
    if np.any((p <= 0.0) | (p >= 1.0)):
        raise DomainError("gaussian_q_inv_array requires 0 < p < 1")
    x = -ndtri(p)
    log_q = log_ndtr(-x)
    slope = np.exp(log_gaussian_pdf(x) - log_q)
    return x + (log_q - np.log(p)) / slope


def chernoff_bound(x: NumberOrArray) -> NumberOrArray:
    """(1/2) exp(-x/2), an upper bound on Q(sqrt(x)) for x >= 0."""
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0.0) or not np.all(np.isfinite(arr)):
        raise DomainError("chernoff_bound requires finite x >= 0")
    return _as_output(0.5 * np.exp(-0.5 * arr), x)


def exp_lower_bound(x: NumberOrArray) -> NumberOrArray:
    """3 exp(-3x), a lower bound on Q(sqrt(x)) claimed only for x > 1."""
    arr = np.asarray(x, dtype=float)
    if np.any(arr <= 1.0) or not np.all(np.isfinite(arr)):
        raise DomainError("exp_lower_bound requires finite x > 1")
    return _as_output(3.0 * np.exp(-3.0 * arr), x)


def exponential_pdf(x: NumberOrArray, mean_snr: float) -> NumberOrArray:
    """(1/s) exp(-x/s); with s = 2 this is the Chernoff bound, with s = 1/3 the lower bound."""
    if mean_snr <= 0.0:
        raise DomainError(f"mean_snr must be positive, got {mean_snr!r}")
    arr = np.asarray(x, dtype=float)
    return _as_output(np.exp(-arr / mean_snr) / mean_snr, x)


def pdf_dominance_threshold(mean_snr: float) -> float:
    """
    Smallest x beyond which the exponential pdf with mean s >= 2 dominates the
    Chernoff bound, i.e. (1/s) exp(-x/s) >= (1/2) exp(-x/2) for x >= result.
    """
    if mean_snr < 2.0:
        raise DomainError(f"dominance threshold is defined for mean_snr >= 2, got {mean_snr!r}")
    if mean_snr == 2.0:
        return 0.0
    return 2.0 * mean_snr * math.log(mean_snr / 2.0) / (mean_snr - 2.0)
