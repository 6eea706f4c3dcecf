import argparse

from sampling.rederive import rederive_relay_terms
from utils.ansi_colors import color_enabled
from utils.report_utils import format_rederive_report


def handle(args: argparse.Namespace) -> int:
    print(format_rederive_report(rederive_relay_terms(), color_enabled()))
    return 0


def setup(subparsers) -> None:
    parser = subparsers.add_parser(
        "rederive",
        help="Re-solve the relay impulse constants and report drift from the stored values.",
    )
    parser.set_defaults(handler=handle)
