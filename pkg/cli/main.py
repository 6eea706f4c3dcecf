import argparse
import importlib
import logging
import os
import sys
from typing import List, Optional

# Add project root to sys.path so imports like `from sampling...` work
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from config.config import QSAMPLING_LOG_LEVEL

EXIT_OK = 0
EXIT_VALIDATION_FAILED = 1
EXIT_USAGE = 2

COMMANDS = [
    "cli.commands.sweep",
    "cli.commands.critical_point",
    "cli.commands.validate",
    "cli.commands.rederive",
    # Add more sub-commands here if needed
]

logger = logging.getLogger("qsampling")


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags already; keep the message on stderr
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"❌ {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="qsampling",
        description="Closed-form fading BER approximations from the Q-function sampling property, "
                    "checked against quadrature and Monte Carlo.",
    )
    parser.add_argument("--log-level", default=QSAMPLING_LOG_LEVEL, help="DEBUG, INFO, WARNING or ERROR")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        module = importlib.import_module(name)
        module.setup(subparsers)
        logger.debug(f"✅ Loaded command: {name}")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, str(args.log_level).upper(), logging.WARNING),
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        stream=sys.stderr,
    )
    return args.handler(args)


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print("🛑 Interrupted by user.", file=sys.stderr)
        sys.exit(130)
