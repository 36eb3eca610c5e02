"""Argument helpers and output shared by the command groups."""
import argparse
import json

from app.core.exceptions import ValidationException
from app.services.symplectic import SymplecticSpace, build_symplectic, space_from_text
from app.services.quandle_core import QuandleTable
from app.utils.matrix_io import read_table


class ToolkitArgumentParser(argparse.ArgumentParser):
    """Usage errors become ValidationException so they exit 1 like other bad input."""

    def error(self, message):
        raise ValidationException(f"{self.prog}: {message}")


def add_command(subparsers, name: str, handler, help_text: str, command_name: str):
    parser = subparsers.add_parser(name, help=help_text, description=help_text)
    parser.add_argument(
        "--json", action="store_true", default=argparse.SUPPRESS,
        help="Emit JSON instead of text",
    )
    parser.set_defaults(handler=handler, command_name=command_name)
    return parser


def add_space_arguments(parser, required: bool = True) -> None:
    parser.add_argument("--ring", required=required, help="Ring spec, e.g. Z4 or GF(2^2)/t^2+t+1")
    parser.add_argument("--dim", type=int, required=required, help="Module dimension d")
    parser.add_argument("--gram", required=required, help='Gram matrix rows, e.g. "0,2;2,0"')


def space_from_args(args) -> SymplecticSpace:
    return space_from_text(args.ring, args.dim, args.gram)


def target_from_args(args) -> tuple[QuandleTable, str]:
    """The target quandle of an invariant command and a label for it."""
    if args.target_file and args.ring:
        raise ValidationException("Give either --target-file or --ring/--dim/--gram, not both")
    if args.target_file:
        return read_table(args.target_file), args.target_file
    if not (args.ring and args.dim is not None and args.gram):
        raise ValidationException("A target needs --target-file or all of --ring, --dim and --gram")
    space = space_from_args(args)
    return build_symplectic(space), f"{args.ring} d={args.dim} gram={space.gram.to_text()}"


def emit(args, text: str, payload) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, separators=(",", ":")))
    else:
        print(text)
