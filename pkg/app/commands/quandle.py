"""`quandle ...` commands: build, inspect and compare quandle matrices."""
import logging
import sys

from app.commands.common import (
    add_command,
    add_space_arguments,
    emit,
    space_from_args,
)
from app.config.constants import EXIT_INVALID_INPUT, EXIT_OK
from app.core.exceptions import ValidationException
from app.services.quandle_core import (
    alexander_quandle,
    cyclic_quandle,
    disjoint_union,
    dual,
    is_isomorphic,
    maximal_trivial_component,
    orbits,
    quandle_polynomial,
    require_quandle,
    subquandles,
    trivial_quandle,
    validate_axioms,
)
from app.services.symplectic import build_symplectic
from app.utils.matrix_io import format_table, read_table, write_table

logger = logging.getLogger(__name__)


def _output_table(args, table) -> int:
    if getattr(args, "output", None):
        write_table(table, args.output)
        emit(args, f"wrote {args.output}", {"order": table.order, "path": args.output})
    elif getattr(args, "json", False):
        emit(args, "", {"order": table.order, "table": table.to_lists()})
    else:
        sys.stdout.write(format_table(table))
    return EXIT_OK


def build(args) -> int:
    return _output_table(args, build_symplectic(space_from_args(args)))


def check(args) -> int:
    report = validate_axioms(read_table(args.file))
    lines = [f"order {report.order}: " + ("quandle" if report.is_quandle else "NOT a quandle")]
    lines += [
        f"axiom ({v.axiom}) at {list(v.witness)}: {v.message}" for v in report.violations
    ]
    payload = report.model_dump()
    payload["is_quandle"] = report.is_quandle
    emit(args, "\n".join(lines), payload)
    if not report.is_quandle:
        print(f"error: table violates the quandle axioms ({len(report.violations)} violations)",
              file=sys.stderr)
        return EXIT_INVALID_INPUT
    return EXIT_OK


def _read_quandle(path):
    return require_quandle(read_table(path))


def qpoly(args) -> int:
    poly = quandle_polynomial(_read_quandle(args.file))
    emit(args, poly.to_text(), poly.to_dict())
    return EXIT_OK


def show_orbits(args) -> int:
    parts = orbits(_read_quandle(args.file))
    emit(args, "\n".join(" ".join(map(str, p)) for p in parts), parts)
    return EXIT_OK


def trivial_component(args) -> int:
    members = maximal_trivial_component(_read_quandle(args.file))
    emit(args, " ".join(map(str, members)), members)
    return EXIT_OK


def show_dual(args) -> int:
    return _output_table(args, dual(_read_quandle(args.file)))


def union(args) -> int:
    return _output_table(args, disjoint_union(_read_quandle(args.first), _read_quandle(args.second)))


def iso(args) -> int:
    phi = is_isomorphic(_read_quandle(args.first), _read_quandle(args.second))
    text = "not isomorphic" if phi is None else "isomorphic: " + " ".join(map(str, phi))
    emit(args, text, {"isomorphic": phi is not None, "bijection": phi})
    return EXIT_OK


def show_subquandles(args) -> int:
    subs = subquandles(_read_quandle(args.file))
    emit(args, "\n".join(" ".join(map(str, s)) for s in subs), [list(s) for s in subs])
    return EXIT_OK


def example(args) -> int:
    if args.kind == "trivial":
        table = trivial_quandle(args.order)
    elif args.kind == "cyclic":
        table = cyclic_quandle(args.order)
    else:
        if args.t is None:
            raise ValidationException("The alexander example needs --t")
        table = alexander_quandle(args.order, args.t)
    return _output_table(args, table)


def register(subparsers) -> None:
    group = subparsers.add_parser("quandle", help="Quandle matrix operations")
    commands = group.add_subparsers(dest="action", required=True)

    p = add_command(commands, "build", build, "Build a symplectic quandle matrix", "quandle build")
    add_space_arguments(p)
    p.add_argument("-o", "--output", help="Write the matrix to this file")

    for name, handler, help_text in (
        ("check", check, "Check the quandle axioms"),
        ("qpoly", qpoly, "Quandle polynomial qp(s,t)"),
        ("orbits", show_orbits, "Orbit decomposition"),
        ("trivial-component", trivial_component, "Maximal trivial component"),
        ("subquandles", show_subquandles, "All subquandles"),
    ):
        p = add_command(commands, name, handler, help_text, f"quandle {name}")
        p.add_argument("file", help="Quandle matrix file")

    p = add_command(commands, "dual", show_dual, "Dual quandle matrix", "quandle dual")
    p.add_argument("file", help="Quandle matrix file")
    p.add_argument("-o", "--output", help="Write the matrix to this file")

    p = add_command(commands, "union", union, "Disjoint union of two quandles", "quandle union")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("-o", "--output", help="Write the matrix to this file")

    p = add_command(commands, "iso", iso, "Isomorphism test", "quandle iso")
    p.add_argument("first")
    p.add_argument("second")

    p = add_command(commands, "example", example, "Standard example quandles", "quandle example")
    p.add_argument("kind", choices=["trivial", "cyclic", "alexander"])
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--t", type=int, help="Alexander parameter (a unit mod order)")
    p.add_argument("-o", "--output", help="Write the matrix to this file")
