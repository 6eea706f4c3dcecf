import logging
import math
from typing import Callable, Optional, Tuple

logger = logging.getLogger(__name__)


def safeguarded_newton(
    func: Callable[[float], Tuple[float, float]],
    lo: float,
    hi: float,
    x0: Optional[float] = None,
    tol: float = 1e-12,
    max_iter: int = 100,
) -> float:
    """Find the root of ``func`` bracketed by [lo, hi].

    Newton steps fall back to bisection whenever a step leaves the bracket
    or stalls.

    Args:
        func: Returns ``(f, df)`` at x
        lo: One end of the bracket; f(lo) and f(hi) must differ in sign
        hi: The other end of the bracket
        x0: Starting point inside the bracket (midpoint by default)
        tol: Absolute tolerance on the root
        max_iter: Iteration budget

    Returns:
        The root
    """
    f_lo, _ = func(lo)
    f_hi, _ = func(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if f_lo * f_hi > 0.0:
        raise ValueError(f"Root not bracketed by [{lo}, {hi}] (f = {f_lo}, {f_hi})")

    # Orient so that f(xlo) < 0
    if f_lo < 0.0:
        xlo, xhi = lo, hi
    else:
        xlo, xhi = hi, lo

    x = 0.5 * (lo + hi) if x0 is None or not (min(lo, hi) < x0 < max(lo, hi)) else x0
    dxold = abs(hi - lo)
    dx = dxold
    f, df = func(x)

    for iteration in range(1, max_iter + 1):
        # Bisect if Newton out of range or not decreasing fast enough
        if (((x - xhi) * df - f) * ((x - xlo) * df - f) >= 0.0
                or abs(2.0 * f) > abs(dxold * df)):
            dxold = dx
            dx = 0.5 * (xhi - xlo)
            x = xlo + dx
            if x == xlo:
                return x
        else:
            dxold = dx
            dx = f / df
            previous = x
            x -= dx
            if x == previous:
                return x

        if abs(dx) < tol:
            logger.debug(f"safeguarded_newton converged in {iteration} steps at x={x!r}")
            return x

        f, df = func(x)
        if f == 0.0:
            return x
        if f < 0.0:
            xlo = x
        else:
            xhi = x

    logger.warning(f"safeguarded_newton hit max_iter={max_iter}; last step {dx:.3e}")
    return x


def expand_bracket(
    func: Callable[[float], Tuple[float, float]],
    lo: float,
    hi: float,
    factor: float = 2.0,
    max_expansions: int = 60,
) -> Tuple[float, float]:
    """Widen [lo, hi] geometrically until ``func`` changes sign across it."""
    f_lo, _ = func(lo)
    f_hi, _ = func(hi)
    for _ in range(max_expansions):
        if f_lo * f_hi <= 0.0 and math.isfinite(f_lo) and math.isfinite(f_hi):
            return lo, hi
        width = hi - lo
        lo -= factor * width
        hi += factor * width
        f_lo, _ = func(lo)
        f_hi, _ = func(hi)
    raise ValueError(f"Could not bracket a root starting from [{lo}, {hi}]")
