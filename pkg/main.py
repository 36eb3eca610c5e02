"""
symquandle - command-line entry point.

Builds the argument parser from the command groups, configures logging and
dispatches to the selected command.
"""
import argparse
import logging
import sys
from typing import Optional, Sequence

from dotenv import load_dotenv
load_dotenv()

from app.commands import COMMAND_GROUPS
from app.commands.common import ToolkitArgumentParser
from app.config.constants import EXIT_INVALID_INPUT
from app.config.logging import setup_logging
from app.core.exceptions import ValidationException
from app.core.middleware import run_command

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = ToolkitArgumentParser(
        prog="symquandle",
        description="Symplectic quandles, their structure and link invariants",
    )
    parser.add_argument("--log-level", default=None, help="Overrides LOG_LEVEL")
    parser.add_argument("--json", action="store_true", default=False, help="Emit JSON")
    parser.add_argument(
        "--seedless-deterministic", action="store_true",
        help="Accepted for interface stability; every run is deterministic",
    )
    subparsers = parser.add_subparsers(dest="group", required=True)
    for group in COMMAND_GROUPS:
        group.register(subparsers)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except ValidationException as e:
        print(f"error: {e.message}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    setup_logging(args.log_level)
    return run_command(args.handler, args)


def main() -> None:
    raise SystemExit(run())


# ── Dev entrypoint ────────────────────────────────────────────────────────────
if __name__ == "__main__":
    main()
