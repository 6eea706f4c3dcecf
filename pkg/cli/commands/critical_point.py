import argparse
import sys
from typing import List, Optional

from config.config import SETTINGS
from sampling.sampling_core import (
    critical_point_1d,
    critical_point_2d,
    finite_n_critical_point_1d,
    impulse_weight_1d,
    impulse_weight_2d,
    stationarity_residual_1d,
    stationarity_residual_2d,
)
from utils.ansi_colors import color_enabled
from utils.errors import DomainError
from utils.report_utils import format_key_values


def critical_point_report(dim: int, a1: float, a2: float, orders: Optional[List[int]] = None) -> str:
    """Location(s), impulse weight and stationarity residual as a printable block."""
    color = color_enabled()
    order = SETTINGS["sampling"]["impulse_order"]
    if dim == 1:
        x = critical_point_1d(a1)
        rows = [
            ("a", f"{a1:g}"),
            ("order N", f"{order}"),
            ("location", f"{x:.6f}"),
            ("weight", f"{impulse_weight_1d(a1):.6f}"),
            ("residual", f"{stationarity_residual_1d(a1, x):.3e}"),
        ]
        for n in orders or []:
            rows.append((f"location at N={n}", f"{finite_n_critical_point_1d(a1, n):.6f}"))
        return format_key_values("📍 1D critical point", rows, color)

    x, y = critical_point_2d(a1, a2)
    rows = [
        ("a1, a2", f"{a1:g}, {a2:g}"),
        ("order N", f"{order}"),
        ("location", f"({x:.6f}, {y:.6f})"),
        ("weight", f"{impulse_weight_2d(a1, a2):.6f}"),
        ("residual", f"{stationarity_residual_2d(a1, a2, (x, y)):.3e}"),
    ]
    return format_key_values("📍 2D critical point", rows, color)


def handle(args: argparse.Namespace) -> int:
    try:
        a2 = args.a1 if args.a2 is None else args.a2
        print(critical_point_report(args.dim, args.a1, a2, args.order_n))
    except DomainError as e:
        print(f"❌ {e}", file=sys.stderr)
        return 2
    return 0


def setup(subparsers) -> None:
    parser = subparsers.add_parser("critical-point", help="Solve for the impulse location of Q(sqrt(a x)) or Q(sqrt(a1 x + a2 y)).")
    parser.add_argument("--dim", type=int, choices=(1, 2), default=1)
    parser.add_argument("--a1", "--a", type=float, default=1.0, help="scale on x")
    parser.add_argument("--a2", type=float, default=None, help="scale on y (dim 2 only, defaults to --a1)")
    parser.add_argument("--order-n", type=int, action="append", help="also print the finite-N location (dim 1, repeatable)")
    parser.set_defaults(handler=handle)
