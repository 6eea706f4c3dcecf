"""
Acceptance checks: every closed form against the quadrature and Monte Carlo
oracles, plus the stored constants against the live solvers.

Each check returns CheckResult rows; a check never raises for a numerical
mismatch, only for broken inputs.
"""

import logging
import math
import time
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from channel.fading_sim import ChannelConfig, semi_analytic_relay, simulate_network_node1
from oracle.quadrature import (
    QuadratureSpec,
    analytic_expect_q_1d,
    expect_min_2d,
    expect_q_1d,
    expect_q_2d,
    expect_relay_3d,
    integrate_q_1d,
    integrate_q_2d,
)
from sampling.closed_form import (
    NETWORK_NODE1_TERMS,
    RELAY_TERMS,
    STORED_CONSTANTS,
    approx_i0,
    approx_i0_pdf_sampler,
    approx_i1,
    approx_i2,
    approx_network_node1,
    approx_relay,
    asymptotic_decomposition,
    live_constants,
)
from sampling.sampling_core import critical_point_2d
from sampling.special_functions import chernoff_bound, exp_lower_bound, gaussian_q, pdf_dominance_threshold
from utils.curves import BerCurve, CurvePoint, db_to_linear

logger = logging.getLogger(__name__)

# Reference values the stored constants and the solvers must both reproduce
REFERENCE_CRITICAL_POINTS: Dict[str, float] = {
    "critical_1d_a1": 1.4157,
    "critical_1d_a2": 0.7079,
    "critical_2d_a2": 0.8197,
}

# Regression lock on the literal relay and network constants
LOCKED_CONSTANTS: Dict[str, float] = {
    "p1_rd_limit": 1.3049,
    "p2_rd_limit_x": 1.7564,
    "p2_rd_limit_y": 1.3737,
}
LOCKED_RELAY_TERMS = ((1.0 / 16.0, 1.3049), (3.0 / 16.0, 1.6394), (1.0 / 4.0, 3.1301))
LOCKED_NETWORK_TERMS = ((1.0 / 16.0, 1.3049), (3.0 / 8.0, 1.6394), (4.0 / 16.0, 3.1301))


@dataclass(frozen=True)
class CheckResult:
    check: str
    name: str
    passed: bool
    measured: float
    expected: float
    tolerance: str
    seconds: float = 0.0


def _relative(measured: float, expected: float) -> float:
    return abs(measured - expected) / abs(expected)


class _Recorder:
    def __init__(self, check: str):
        self.check = check
        self.rows: List[CheckResult] = []
        self._start = time.perf_counter()

    def add(self, name: str, passed: bool, measured: float, expected: float, tolerance: str):
        self.rows.append(CheckResult(self.check, name, bool(passed), float(measured), float(expected), tolerance))

    def absolute(self, name: str, measured: float, expected: float, tol: float):
        self.add(name, abs(measured - expected) <= tol, measured, expected, f"abs {tol:g}")

    def relative(self, name: str, measured: float, expected: float, tol: float):
        self.add(name, _relative(measured, expected) <= tol, measured, expected, f"rel {tol:.0%}")

    def finish(self) -> List[CheckResult]:
        elapsed = time.perf_counter() - self._start
        logger.info(f"{self.check}: {sum(r.passed for r in self.rows)}/{len(self.rows)} passed in {elapsed:.2f}s")
        return [CheckResult(**{**r.__dict__, "seconds": elapsed}) for r in self.rows]


def check_critical_points() -> List[CheckResult]:
    rec = _Recorder("critical_points")
    live = live_constants()
    _, y = critical_point_2d(2.0, 2.0)
    rec.absolute("critical_2d_a2 (y)", y, REFERENCE_CRITICAL_POINTS["critical_2d_a2"], 1e-3)
    for key, reference in REFERENCE_CRITICAL_POINTS.items():
        rec.absolute(f"{key} solver", live[key], reference, 1e-3)
        rec.absolute(f"{key} stored", STORED_CONSTANTS[key], live[key], 2e-3)
    for key, reference in LOCKED_CONSTANTS.items():
        rec.absolute(f"{key} stored", STORED_CONSTANTS[key], reference, 0.0)
    for label, stored, locked in (("relay", RELAY_TERMS, LOCKED_RELAY_TERMS), ("network", NETWORK_NODE1_TERMS, LOCKED_NETWORK_TERMS)):
        for i, ((amplitude, exponent), (locked_a, locked_e)) in enumerate(zip(stored, locked), start=1):
            rec.absolute(f"{label} term {i} exponent", exponent, locked_e, 1e-12)
            rec.absolute(f"{label} term {i} amplitude", amplitude, locked_a, 0.0)
    return rec.finish()


def check_impulse_weights(spec: Optional[QuadratureSpec] = None) -> List[CheckResult]:
    rec = _Recorder("impulse_weights")
    rec.absolute("integral Q(sqrt(x))", integrate_q_1d(1.0, spec), 0.5, 1e-6)
    rec.absolute("integral Q(sqrt(2x+2y))", integrate_q_2d(2.0, 2.0, spec), 0.1875, 1e-5)
    return rec.finish()


def check_i0(spec: Optional[QuadratureSpec] = None) -> List[CheckResult]:
    rec = _Recorder("i0_accuracy")
    s = db_to_linear(3.0)
    rec.relative("approx_i0 @ 3 dB", approx_i0(s).value, expect_q_1d(s, 1.0, spec), 0.20)
    for snr_db in range(10, 31, 5):
        s = db_to_linear(float(snr_db))
        rec.relative(f"approx_i0 @ {snr_db} dB", approx_i0(s).value, expect_q_1d(s, 1.0, spec), 0.05)
    for snr_db in (-20, -15, -10, -5):
        s = db_to_linear(float(snr_db))
        rec.relative(f"pdf sampler @ {snr_db} dB", approx_i0_pdf_sampler(s).value, expect_q_1d(s, 1.0, spec), 0.35)
    return rec.finish()


def check_i1_i2(spec: Optional[QuadratureSpec] = None) -> List[CheckResult]:
    rec = _Recorder("i1_i2_accuracy")
    for snr_db in (20, 25, 30):
        s = db_to_linear(float(snr_db))
        rec.relative(f"approx_i1 @ {snr_db} dB", approx_i1(s).value, expect_q_2d(s, 2.0, 2.0, spec), 0.10)
    for snr_db in (15, 20, 25, 30):
        s = db_to_linear(float(snr_db))
        rec.relative(f"approx_i2 @ {snr_db} dB", approx_i2(s).value, expect_min_2d(s, spec), 0.15)
    return rec.finish()


def check_relay(trials: int, seed: int, spec: Optional[QuadratureSpec] = None) -> List[CheckResult]:
    rec = _Recorder("relay")
    for snr_db in (15, 20, 25, 30):
        s = db_to_linear(float(snr_db))
        closed = approx_relay(s).value
        rec.relative(f"approx_relay vs cubature @ {snr_db} dB", closed, expect_relay_3d(s, spec), 0.25)
        sim = semi_analytic_relay(ChannelConfig(s), trials, seed)
        margin = 3.0 * sim.std_error + 0.25 * sim.mean
        rec.add(f"approx_relay vs semi-analytic @ {snr_db} dB", abs(closed - sim.mean) <= margin,
                closed, sim.mean, "3 sigma + 25%")
    grid = np.arange(20.0, 40.5, 2.5)
    curve = BerCurve("relay", "closed_form",
                     [CurvePoint(float(db), approx_relay(db_to_linear(float(db))).value) for db in grid])
    diversity, _ = asymptotic_decomposition(curve)
    rec.absolute("approx_relay diversity 20-40 dB", diversity, 2.0, 0.1)
    return rec.finish()


def check_network(trials: int, seed: int) -> List[CheckResult]:
    rec = _Recorder("network")
    for snr_db in (15, 20, 25):
        s = db_to_linear(float(snr_db))
        sim = simulate_network_node1(ChannelConfig(s), trials, seed)
        rec.relative(f"approx_network_node1 @ {snr_db} dB", approx_network_node1(s).value, sim.mean, 0.30)
    points = []
    for db in np.arange(20.0, 30.5, 2.5):
        sim = simulate_network_node1(ChannelConfig(db_to_linear(float(db))), trials, seed)
        points.append(CurvePoint(float(db), sim.mean, sim.std_error))
    diversity, _ = asymptotic_decomposition(BerCurve("network", "montecarlo", points))
    rec.absolute("simulated diversity 20-30 dB", diversity, 2.0, 0.2)
    return rec.finish()


def check_bounds(seed: int, samples: int = 100_000) -> List[CheckResult]:
    rec = _Recorder("bounds")
    rng = np.random.default_rng(seed)
    x = rng.uniform(0.0, 40.0, samples)
    x = x[x > 0.0]
    q = gaussian_q(np.sqrt(x))
    worst = float(np.max(q - chernoff_bound(x)))
    rec.add("Q(sqrt x) <= chernoff", worst <= 0.0, worst, 0.0, "max excess <= 0")

    x = rng.uniform(1.0, 40.0, samples)
    x = x[x > 1.0]
    q = gaussian_q(np.sqrt(x))
    worst = float(np.max(exp_lower_bound(x) - q))
    rec.add("Q(sqrt x) >= 3 exp(-3x)", worst <= 0.0, worst, 0.0, "max excess <= 0")

    for s in (2.0, 5.0, 100.0):
        lo = max(pdf_dominance_threshold(s), 1.0)
        xs = rng.uniform(lo, 40.0 * s, samples)
        worst = float(np.max(gaussian_q(np.sqrt(xs)) - np.exp(-xs / s) / s))
        rec.add(f"Q <= pdf, s={s:g}", worst <= 0.0, worst, 0.0, "max excess <= 0")
    for s in (1.0 / 3.0, 0.1, 0.01):
        xs = rng.uniform(1.0, 40.0, samples)
        xs = xs[xs > 1.0]
        worst = float(np.max(np.exp(-xs / s) / s - gaussian_q(np.sqrt(xs))))
        rec.add(f"Q >= pdf, s={s:.3g}", worst <= 0.0, worst, 0.0, "max excess <= 0")
    return rec.finish()


def check_oracle_consistency(spec: Optional[QuadratureSpec] = None) -> List[CheckResult]:
    rec = _Recorder("oracle_consistency")
    for snr_db in (-10.0, 0.0, 10.0, 20.0, 30.0):
        for a in (0.5, 1.0, 2.0, 4.0):
            s = db_to_linear(snr_db)
            rec.absolute(f"expect_q_1d s={snr_db:g} dB a={a:g}", expect_q_1d(s, a, spec), analytic_expect_q_1d(s, a), 1e-8)
    for snr_db in (0.0, 10.0, 20.0, 30.0, 40.0):
        s = db_to_linear(snr_db)
        rec.absolute(f"expect_min_2d s={snr_db:g} dB", expect_min_2d(s, spec), analytic_expect_q_1d(0.5 * s, 2.0), 1e-8)
    return rec.finish()


def check_determinism(seed: int, trials: int = 200_000) -> List[CheckResult]:
    rec = _Recorder("determinism")
    config = ChannelConfig(db_to_linear(15.0))
    runs = [
        (semi_analytic_relay, "semi_analytic_relay"),
        (simulate_network_node1, "simulate_network_node1"),
    ]
    for func, name in runs:
        single = func(config, trials, seed, workers=1)
        pooled = func(config, trials, seed, workers=4)
        rec.add(f"{name} workers 1 vs 4", single == pooled, pooled.mean, single.mean, "bit-identical")
    return rec.finish()


def run_acceptance(trials: int, seed: int, spec: Optional[QuadratureSpec] = None) -> List[CheckResult]:
    checks: Sequence[Callable[[], List[CheckResult]]] = (
        check_critical_points,
        lambda: check_impulse_weights(spec),
        lambda: check_i0(spec),
        lambda: check_i1_i2(spec),
        lambda: check_relay(trials, seed, spec),
        lambda: check_network(trials, seed),
        lambda: check_bounds(seed),
        lambda: check_oracle_consistency(spec),
        lambda: check_determinism(seed),
    )
    results: List[CheckResult] = []
    for check in checks:
        results.extend(check())
    return results
