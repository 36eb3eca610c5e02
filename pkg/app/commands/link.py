"""`link parse`: show the presentation of a Gauss code."""
from app.commands.common import add_command, emit
from app.config.constants import EXIT_OK
from app.services.link_model import arcs_and_relations, format_gauss, parse_gauss


def parse(args) -> int:
    code = parse_gauss(args.gauss)
    presentation = arcs_and_relations(code)
    lines = [
        f"{format_gauss(code) or '(unknot)'}: {len(code.components)} components, "
        f"{len(code.crossings)} crossings, {presentation.generators} generators"
    ]
    for rel in presentation.relations:
        op = "▷" if rel.sign > 0 else "▷⁻¹"
        lines.append(f"crossing {rel.crossing}: {rel.a} {op} {rel.b} = {rel.c}")
    payload = {
        "gauss": format_gauss(code),
        "components": len(code.components),
        "crossings": code.crossings,
        "presentation": presentation.model_dump(),
    }
    emit(args, "\n".join(lines), payload)
    return EXIT_OK


def register(subparsers) -> None:
    group = subparsers.add_parser("link", help="Signed Gauss codes")
    commands = group.add_subparsers(dest="action", required=True)
    p = add_command(commands, "parse", parse, "Parse a Gauss code", "link parse")
    p.add_argument("--gauss", required=True, help='Signed Gauss code, e.g. "O1+U2+O3+U1+O2+U3+"')
