"""`scan conjecture`: quandle isomorphism against isometry over Z_n."""
import re

from app.commands.common import add_command, emit
from app.config.constants import EXIT_OK
from app.core.exceptions import ValidationException
from app.services.symplectic import conjecture_scan

_RANGE_PATTERN = re.compile(r"^(\d+)\.\.(\d+)$")


def parse_moduli(text: str) -> list[int]:
    """`a..b` inclusive, or a comma separated list."""
    match = _RANGE_PATTERN.match(text.strip())
    if match:
        low, high = int(match.group(1)), int(match.group(2))
        if low > high:
            raise ValidationException(f"Empty moduli range '{text}'")
        return list(range(low, high + 1))
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        raise ValidationException(f"Cannot parse --moduli '{text}'; use a..b") from e


def conjecture(args) -> int:
    report = conjecture_scan(parse_moduli(args.moduli), dim=args.dim, workers=args.workers)
    lines = []
    for row in report.rows:
        status = "coincide" if row.coincide else "DIFFER"
        classes = " | ".join(" ".join(map(str, c)) for c in row.quandle_classes)
        lines.append(f"Z{row.n} d={row.dim}: {status}; classes {classes}")
        for pair in row.counterexamples:
            lines.append(
                f"  alpha={pair.alpha} beta={pair.beta}: "
                f"isomorphic={pair.quandle_isomorphic} isometric={pair.isometric}"
            )
    payload = report.model_dump()
    payload["all_coincide"] = report.all_coincide
    emit(args, "\n".join(lines), payload)
    return EXIT_OK


def register(subparsers) -> None:
    group = subparsers.add_parser("scan", help="Searches over families of forms")
    commands = group.add_subparsers(dest="action", required=True)
    p = add_command(commands, "conjecture", conjecture,
                    "Compare quandle isomorphism and isometry of [[0,a],[-a,0]] over Z_n",
                    "scan conjecture")
    p.add_argument("--moduli", required=True, help="Range a..b of moduli n")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--workers", type=int, default=None, help="Process pool size")
