import argparse
import logging
import math
import sys
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from channel.fading_sim import (
    ChannelConfig,
    SimEstimate,
    semi_analytic_i0,
    semi_analytic_i1,
    semi_analytic_i2,
    semi_analytic_relay,
    simulate_network_node1,
    simulate_relay_symbol,
)
from config.config import SETTINGS
from oracle.quadrature import expect_min_2d, expect_q_1d, expect_q_2d, expect_relay_3d
from sampling.closed_form import (
    approx_i0,
    approx_i0_chernoff,
    approx_i0_pdf_sampler,
    approx_i0_q_sampler,
    approx_i1,
    approx_i2,
    approx_network_node1,
    approx_relay,
)
from utils.curves import BerCurve, CurvePoint, db_to_linear, write_curves_csv
from utils.errors import DomainError, QuadratureConvergenceError, UsageError

SCENARIOS = ("i0", "i1", "i2", "relay", "network")
METHODS = ("closed_form", "quadrature", "montecarlo", "all")
VARIANTS = ("piecewise", "q_sampler", "pdf_sampler", "chernoff")
MC_MODES = ("semi", "symbol")

logger = logging.getLogger(__name__)

I0_VARIANTS = {
    "piecewise": approx_i0,
    "q_sampler": approx_i0_q_sampler,
    "pdf_sampler": approx_i0_pdf_sampler,
    "chernoff": approx_i0_chernoff,
}


@dataclass(frozen=True)
class SweepRequest:
    scenario: str
    method: str
    start_db: float
    stop_db: float
    step_db: float
    trials: int
    seed: int
    a1: float = 2.0
    a2: float = 2.0
    output_path: str = "-"
    variant: str = "piecewise"
    mc_mode: str = "semi"

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise UsageError(f"unknown scenario {self.scenario!r}; choose from {', '.join(SCENARIOS)}")
        if self.method not in METHODS:
            raise UsageError(f"unknown method {self.method!r}; choose from {', '.join(METHODS)}")
        if not all(math.isfinite(v) for v in (self.start_db, self.stop_db, self.step_db)):
            raise UsageError("SNR grid bounds must be finite")
        if self.start_db > self.stop_db:
            raise UsageError(f"start ({self.start_db}) must not exceed stop ({self.stop_db})")
        if self.step_db <= 0.0:
            raise UsageError(f"step must be positive, got {self.step_db}")
        if self.trials < 1:
            raise UsageError(f"trials must be >= 1, got {self.trials}")
        if not (self.a1 > 0.0 and self.a2 > 0.0):
            raise UsageError(f"a1 and a2 must be positive, got ({self.a1}, {self.a2})")
        if self.variant != "piecewise" and self.scenario != "i0":
            raise UsageError("--variant applies to scenario i0 only")
        if self.mc_mode != "semi" and self.scenario != "relay":
            raise UsageError("--mc-mode applies to scenario relay only")
        if self.scenario == "network" and self.method == "quadrature":
            raise UsageError("scenario network has no quadrature oracle")

    @property
    def snr_grid_db(self) -> List[float]:
        count = int(math.floor((self.stop_db - self.start_db) / self.step_db + 1e-9)) + 1
        return [round(self.start_db + i * self.step_db, 10) for i in range(count)]

    @property
    def methods(self) -> Tuple[str, ...]:
        if self.method != "all":
            return (self.method,)
        if self.scenario == "network":
            return ("closed_form", "montecarlo")
        return ("closed_form", "quadrature", "montecarlo")


# (ber, std_error) for one SNR point
PointFn = Callable[[float], Tuple[float, Optional[float]]]


def _closed_form(request: SweepRequest) -> PointFn:
    approx = {
        "i0": I0_VARIANTS[request.variant],
        "i1": lambda s: approx_i1(s, request.a1, request.a2),
        "i2": approx_i2,
        "relay": approx_relay,
        "network": approx_network_node1,
    }[request.scenario]
    return lambda s: (approx(s).value, None)


def _quadrature(request: SweepRequest) -> PointFn:
    expect = {
        "i0": lambda s: expect_q_1d(s, 1.0),
        "i1": lambda s: expect_q_2d(s, request.a1, request.a2),
        "i2": expect_min_2d,
        "relay": expect_relay_3d,
    }[request.scenario]

    def point(s: float) -> Tuple[float, Optional[float]]:
        try:
            return expect(s), None
        except QuadratureConvergenceError as e:
            logger.warning(f"⚠️ {request.scenario} quadrature at {s:.6g} did not converge: {e}; writing best estimate")
            return min(max(e.best_estimate, 0.0), 1.0), None

    return point


def low_confidence_detail(estimate: SimEstimate) -> str:
    """Why an estimate is flagged: error events when counted, else the relative std error."""
    if estimate.error_events is not None:
        return f"{estimate.error_events} error events, std_error={estimate.std_error:.3e}"
    if estimate.mean > 0.0:
        return f"relative std_error={estimate.std_error / estimate.mean:.1%}, std_error={estimate.std_error:.3e}"
    return f"zero mean, std_error={estimate.std_error:.3e}"


def _montecarlo(request: SweepRequest) -> PointFn:
    trials, seed = request.trials, request.seed
    simulate: Dict[str, Callable[[float], SimEstimate]] = {
        "i0": lambda s: semi_analytic_i0(s, trials, seed),
        "i1": lambda s: semi_analytic_i1(s, trials, seed, request.a1, request.a2),
        "i2": lambda s: semi_analytic_i2(s, trials, seed),
        "relay": lambda s: (simulate_relay_symbol if request.mc_mode == "symbol" else semi_analytic_relay)(
            ChannelConfig(s), trials, seed),
        "network": lambda s: simulate_network_node1(ChannelConfig(s), trials, seed),
    }

    def point(s: float) -> Tuple[float, Optional[float]]:
        estimate = simulate[request.scenario](s)
        if estimate.low_confidence:
            logger.warning(f"⚠️ {request.scenario} montecarlo at {s:.6g}: low-confidence estimate "
                           f"({low_confidence_detail(estimate)})")
        return estimate.mean, estimate.std_error

    return point


_METHOD_BUILDERS = {
    "closed_form": _closed_form,
    "quadrature": _quadrature,
    "montecarlo": _montecarlo,
}


def build_curves(request: SweepRequest) -> List[BerCurve]:
    grid = request.snr_grid_db
    curves = []
    for method in request.methods:
        point = _METHOD_BUILDERS[method](request)
        rows = []
        for snr_db in grid:
            ber, std_error = point(db_to_linear(snr_db))
            rows.append(CurvePoint(snr_db, ber, std_error))
        logger.info(f"{request.scenario}/{method}: {len(rows)} point(s)")
        curves.append(BerCurve(request.scenario, method, rows))
    return curves


def run_sweep(request: SweepRequest, stream=None) -> int:
    """Compute every requested curve and write them as CSV; returns the row count."""
    curves = build_curves(request)
    if stream is not None:
        return write_curves_csv(curves, stream)
    if request.output_path == "-":
        return write_curves_csv(curves, sys.stdout)
    with open(request.output_path, "w", encoding="utf-8", newline="") as f:
        return write_curves_csv(curves, f)


def handle(args: argparse.Namespace) -> int:
    try:
        request = SweepRequest(
            scenario=args.scenario,
            method=args.method,
            start_db=args.start,
            stop_db=args.stop,
            step_db=args.step,
            trials=args.trials,
            seed=args.seed,
            a1=args.a1,
            a2=args.a2,
            output_path=args.output,
            variant=args.variant,
            mc_mode=args.mc_mode,
        )
    except UsageError as e:
        print(f"❌ {e}", file=sys.stderr)
        return 2

    try:
        rows = run_sweep(request)
    except DomainError as e:
        print(f"❌ {e}", file=sys.stderr)
        return 2
    logger.info(f"✅ wrote {rows} row(s) to {request.output_path}")
    return 0


def setup(subparsers) -> None:
    simulation = SETTINGS["simulation"]
    parser = subparsers.add_parser("sweep", help="Sweep an SNR grid and write BER curves as CSV.")
    parser.add_argument("--scenario", required=True, choices=SCENARIOS)
    parser.add_argument("--method", default="all", choices=METHODS)
    parser.add_argument("--start", type=float, default=0.0, help="first SNR in dB")
    parser.add_argument("--stop", type=float, default=30.0, help="last SNR in dB")
    parser.add_argument("--step", type=float, default=1.0, help="SNR step in dB")
    parser.add_argument("--trials", type=int, default=simulation["default_trials"])
    parser.add_argument("--seed", type=int, default=simulation["default_seed"])
    parser.add_argument("--a1", type=float, default=2.0, help="I1 scale on the first SNR")
    parser.add_argument("--a2", type=float, default=2.0, help="I1 scale on the second SNR")
    parser.add_argument("--output", default="-", help="CSV path, '-' for stdout")
    parser.add_argument("--variant", default="piecewise", choices=VARIANTS, help="I0 approximation (i0 only)")
    parser.add_argument("--mc-mode", default="semi", choices=MC_MODES, help="relay Monte Carlo flavour")
    parser.set_defaults(handler=handle)
