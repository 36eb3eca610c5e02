"""`symplectic ...` commands: form-level computations on a space."""
import logging

from app.commands.common import add_command, add_space_arguments, emit, space_from_args
from app.config.constants import EXIT_OK
from app.core.exceptions import ValidationException
from app.services.ring_algebra import GramMatrix, make_ring, parse_gram
from app.services.symplectic import (
    SymplecticSpace,
    degenerate_submodule,
    is_isometric,
    standard_gram,
    symplectic_reduce,
)

logger = logging.getLogger(__name__)


def _matrix_text(rows) -> str:
    return "\n".join(" ".join(str(v) for v in row) for row in rows)


def radical(args) -> int:
    space = space_from_args(args)
    vectors = degenerate_submodule(space)
    indices = [space.module.index_of(v) for v in vectors]
    text = "\n".join(f"{i}: ({', '.join(map(str, v))})" for i, v in zip(indices, vectors))
    emit(args, text, {"indices": indices, "vectors": [list(v) for v in vectors]})
    return EXIT_OK


def reduce_form(args) -> int:
    reduction = symplectic_reduce(space_from_args(args))
    text = f"rank {reduction.rank}, radical dimension {reduction.radical_dim}\n" + _matrix_text(reduction.basis)
    emit(args, text, reduction._asdict())
    return EXIT_OK


def isometric(args) -> int:
    first = space_from_args(args)
    second = SymplecticSpace(first.ring, parse_gram(args.gram2, first.ring))
    report = is_isometric(first, second, exhaustive=args.exhaustive)
    if report.isometric:
        text = f"isometric ({report.method})\n" + _matrix_text(report.witness)
    else:
        text = f"not isometric ({report.method}, {report.candidates_checked} candidates)"
    emit(args, text, report.model_dump())
    return EXIT_OK


def standard(args) -> int:
    ring = make_ring(args.ring)
    try:
        alphas = [int(a) for a in args.alphas.split(",") if a.strip()]
    except ValueError as e:
        raise ValidationException(f"Cannot parse --alphas '{args.alphas}'") from e
    gram: GramMatrix = standard_gram(ring, alphas, args.radical)
    emit(args, gram.to_text(), {"gram": gram.to_lists()})
    return EXIT_OK


def register(subparsers) -> None:
    group = subparsers.add_parser("symplectic", help="Symplectic form operations")
    commands = group.add_subparsers(dest="action", required=True)

    p = add_command(commands, "radical", radical, "Degenerate submodule of the form", "symplectic radical")
    add_space_arguments(p)

    p = add_command(commands, "reduce", reduce_form, "Symplectic basis over a field", "symplectic reduce")
    add_space_arguments(p)

    p = add_command(commands, "isometric", isometric, "Isometry test between two forms",
                    "symplectic isometric")
    add_space_arguments(p)
    p.add_argument("--gram2", required=True, help="Gram matrix of the second form")
    p.add_argument("--exhaustive", action="store_true", help="Force the brute-force search")

    p = add_command(commands, "standard", standard, "Standard block form as a Gram string",
                    "symplectic standard")
    p.add_argument("--ring", required=True)
    p.add_argument("--alphas", required=True, help="Comma separated invariant factors")
    p.add_argument("--radical", type=int, default=0, help="Number of zero rows appended")
