import argparse
import logging
import sys

from config.config import SETTINGS
from oracle.acceptance import run_acceptance
from utils.ansi_colors import color_enabled
from utils.report_utils import format_check_report

logger = logging.getLogger(__name__)


def handle(args: argparse.Namespace) -> int:
    validate = SETTINGS["validate"]
    trials = args.trials or (validate["full_trials"] if args.full else validate["trials"])
    seed = validate["seed"] if args.seed is None else args.seed
    logger.info(f"running acceptance suite with {trials} trials per Monte Carlo point, seed {seed}")

    results = run_acceptance(trials, seed)
    print(format_check_report(results, color_enabled()))

    failed = [r for r in results if not r.passed]
    for r in failed:
        logger.error(f"{r.check}/{r.name}: measured {r.measured:.6g}, expected {r.expected:.6g} ({r.tolerance})")
    return 1 if failed else 0


def setup(subparsers) -> None:
    parser = subparsers.add_parser("validate", help="Run the acceptance suite; exit 1 on any failure.")
    parser.add_argument("--full", action="store_true", help="use the full Monte Carlo trial count")
    parser.add_argument("--trials", type=int, help="override the Monte Carlo trial count")
    parser.add_argument("--seed", type=int, help="override the validation seed")
    parser.set_defaults(handler=handle)
