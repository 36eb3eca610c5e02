"""Quandle matrix files and the golden tables shipped in data/golden."""
import json
import logging
from pathlib import Path

import numpy as np

from app.config.constants import ERRATA_FILE, GOLDEN_DIR
from app.core.exceptions import ValidationException
from app.models.schemas import ErratumEntry
from app.services.quandle_core import QuandleTable

logger = logging.getLogger(__name__)

PROJECT_ROOT = Path(__file__).resolve().parents[2]


def parse_table(text: str) -> QuandleTable:
    """n lines of n whitespace-separated 1-based integers; blank lines ignored."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            rows.append([int(v) for v in line.split()])
        except ValueError as e:
            raise ValidationException(
                f"Line {lineno} is not a row of integers", {"line": lineno}
            ) from e
    widths = {len(row) for row in rows}
    if len(widths) > 1:
        raise ValidationException("Rows have different lengths", {"lengths": sorted(widths)})
    return QuandleTable(rows)


def read_table(path) -> QuandleTable:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ValidationException(f"Cannot read quandle matrix file {path}: {e.strerror}") from e
    table = parse_table(text)
    logger.debug("Read table of order %d from %s", table.order, path)
    return table


def format_table(table: QuandleTable) -> str:
    width = len(str(table.order))
    return "\n".join(
        " ".join(f"{v:>{width}}" for v in row) for row in table.to_lists()
    ) + "\n"


def write_table(table: QuandleTable, path) -> None:
    Path(path).write_text(format_table(table), encoding="utf-8")
    logger.info("Wrote table of order %d to %s", table.order, path)


def load_errata(golden_dir=None) -> dict[str, list[ErratumEntry]]:
    path = Path(golden_dir or PROJECT_ROOT / GOLDEN_DIR) / ERRATA_FILE
    raw = json.loads(path.read_text(encoding="utf-8"))
    return {name: [ErratumEntry(**entry) for entry in entries] for name, entries in raw.items()}


def load_golden(name: str, apply_errata: bool = True, golden_dir=None) -> QuandleTable:
    """A printed table, with its recorded errata replaced by the computed values."""
    directory = Path(golden_dir or PROJECT_ROOT / GOLDEN_DIR)
    table = read_table(directory / name)
    if not apply_errata:
        return table
    entries = np.array(table.entries)
    for erratum in load_errata(directory).get(name, []):
        current = entries[erratum.row - 1, erratum.column - 1]
        if current != erratum.printed:
            raise ValidationException(
                f"{name}: erratum at ({erratum.row},{erratum.column}) expects {erratum.printed}, "
                f"file has {current}"
            )
        entries[erratum.row - 1, erratum.column - 1] = erratum.computed
    return QuandleTable(entries)
