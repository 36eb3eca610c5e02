"""`invariant ...` commands: coloring invariants of a link against a target quandle."""
from app.commands.common import add_command, add_space_arguments, emit, target_from_args
from app.config.constants import EXIT_OK
from app.core.exceptions import ModuleContextException
from app.services.invariants import compute_invariants, phi_e_decomposed
from app.services.link_model import arcs_and_relations, format_gauss, parse_gauss
from app.services.quandle_core import require_quandle


def _prepare(args):
    code = parse_gauss(args.gauss)
    table, target = target_from_args(args)
    require_quandle(table)
    return format_gauss(code), arcs_and_relations(code), table, target


def _run(args, field: str) -> int:
    link, presentation, table, target = _prepare(args)
    if field == "phi_sqp" and table.context is None:
        raise ModuleContextException(
            "phi-sqp needs a target given by --ring/--dim/--gram, not a bare matrix file"
        )
    result = compute_invariants(link, presentation, table, target)
    emit(args, str(getattr(result, field)), result.model_dump())
    return EXIT_OK


def count(args) -> int:
    return _run(args, "count")


def phi_e(args) -> int:
    return _run(args, "phi_e")


def phi_sqp(args) -> int:
    return _run(args, "phi_sqp")


def decomposition(args) -> int:
    link, presentation, table, target = _prepare(args)
    poly = phi_e_decomposed(presentation, table)
    emit(args, poly.to_text(), {"link": link, "target": target, "phi_e": poly.to_text()})
    return EXIT_OK


def register(subparsers) -> None:
    group = subparsers.add_parser("invariant", help="Quandle coloring invariants")
    commands = group.add_subparsers(dest="action", required=True)
    for name, handler, help_text in (
        ("count", count, "Counting invariant |Hom(Q(L),T)|"),
        ("phi-e", phi_e, "Enhanced invariant, sum of q^|Im f|"),
        ("phi-sqp", phi_sqp, "Symplectic quandle polynomial, sum of q^|Im f| z^rho(f)"),
        ("subquandle-decomposition", decomposition, "phi_E as a sum over subquandles"),
    ):
        p = add_command(commands, name, handler, help_text, f"invariant {name}")
        p.add_argument("--gauss", required=True, help="Signed Gauss code; empty for the unknot")
        p.add_argument("--target-file", help="Target quandle matrix file")
        add_space_arguments(p, required=False)
