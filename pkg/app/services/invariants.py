"""
Quandle colorings of link presentations and the invariants built from them.

A coloring assigns a target element to every arc so that every crossing
relation holds in the target table. Colorings are 1-based tuples indexed by
generator and are always returned in lexicographic order.
"""
import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from app.config.constants import PHI_E_VARIABLES, PHI_SQP_VARIABLES
from app.config.settings import settings
from app.core.exceptions import (
    ModuleContextException,
    ResourceCapException,
    ValidationException,
)
from app.models.schemas import InvariantResult, Presentation
from app.services.quandle_core import (
    ModuleContext,
    QuandleTable,
    dual,
    is_closed,
    subquandles,
)
from app.utils.polynomial import InvariantPolynomial

logger = logging.getLogger(__name__)


# ─────────────────────────────────────────────────────────────
# Backtracking enumeration
# ─────────────────────────────────────────────────────────────
def _positive_triples(presentation: Presentation) -> list[tuple[int, int, int]]:
    """Zero-based (x, y, z) with x ▷ y = z; a ▷⁻¹ b = c is rewritten as c ▷ b = a."""
    triples = []
    for rel in presentation.relations:
        if rel.sign > 0:
            triples.append((rel.a - 1, rel.b - 1, rel.c - 1))
        else:
            triples.append((rel.c - 1, rel.b - 1, rel.a - 1))
    return triples


def _generator_order(presentation: Presentation) -> list[int]:
    """Most constrained first: generators in the most relations, ties by index."""
    usage = Counter()
    for rel in presentation.relations:
        usage.update({rel.a - 1, rel.b - 1, rel.c - 1})
    return sorted(range(presentation.generators), key=lambda g: (-usage[g], g))


def _propagate(colors: list[int], triples, op: np.ndarray, inv: np.ndarray, allowed) -> bool:
    """Force colors through the relations until nothing changes; False on conflict."""
    changed = True
    while changed:
        changed = False
        for x, y, z in triples:
            cx, cy, cz = colors[x], colors[y], colors[z]
            if cy < 0:
                continue
            if cx >= 0:
                forced = int(op[cx, cy])
                if cz >= 0:
                    if cz != forced:
                        return False
                    continue
                if not allowed[forced]:
                    return False
                colors[z] = forced
                changed = True
            elif cz >= 0:
                forced = int(inv[cz, cy])
                if not allowed[forced]:
                    return False
                colors[x] = forced
                changed = True
    return True


def _search(colors: list[int], order, depth: int, triples, op, inv, allowed, out: list) -> None:
    while depth < len(order) and colors[order[depth]] >= 0:
        depth += 1
    if depth == len(order):
        out.append(tuple(c + 1 for c in colors))
        return
    g = order[depth]
    for value in np.flatnonzero(allowed):
        trial = colors.copy()
        trial[g] = int(value)
        if _propagate(trial, triples, op, inv, allowed):
            _search(trial, order, depth + 1, triples, op, inv, allowed, out)


def _enumerate_branch(args) -> list[tuple[int, ...]]:
    """Colorings with the first generator of the order fixed to one value."""
    generators, triples, order, op, inv, allowed, first_value = args
    colors = [-1] * generators
    colors[order[0]] = first_value
    found: list[tuple[int, ...]] = []
    if _propagate(colors, triples, op, inv, allowed):
        _search(colors, order, 1, triples, op, inv, allowed, found)
    return found


def enumerate_colorings(
    presentation: Presentation,
    table: QuandleTable,
    values=None,
    workers: int | None = None,
) -> list[tuple[int, ...]]:
    """All colorings, optionally with every arc restricted to the given values.

    The search may be split across a process pool by the first generator's value;
    the merged result is re-sorted, so the output does not depend on workers.
    """
    op = table.zero_based
    inv = dual(table).zero_based
    allowed = np.zeros(table.order, dtype=bool)
    if values is None:
        allowed[:] = True
    else:
        allowed[[v - 1 for v in values]] = True
    triples = _positive_triples(presentation)
    order = _generator_order(presentation)
    branches = [
        (presentation.generators, triples, order, op, inv, allowed, int(v))
        for v in np.flatnonzero(allowed)
    ]
    workers = workers or settings.WORKERS
    if workers > 1 and len(branches) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_enumerate_branch, branches))
    else:
        parts = [_enumerate_branch(branch) for branch in branches]
    colorings = sorted(c for part in parts for c in part)
    logger.info("Found %d colorings (%d generators, target order %d)",
                len(colorings), presentation.generators, table.order)
    return colorings


def naive_colorings(presentation: Presentation, table: QuandleTable) -> list[tuple[int, ...]]:
    """Check every one of |T|^g assignments directly against the table."""
    n, g = table.order, presentation.generators
    total = n ** g
    if total > settings.NAIVE_ORACLE_CAP:
        raise ResourceCapException(
            f"Naive enumeration of {total} assignments exceeds NAIVE_ORACLE_CAP={settings.NAIVE_ORACLE_CAP}",
            {"assignments": total},
        )
    assignments = np.stack(np.unravel_index(np.arange(total), (n,) * g), axis=1)
    ok = np.ones(total, dtype=bool)
    for x, y, z in _positive_triples(presentation):
        ok &= table.zero_based[assignments[:, x], assignments[:, y]] == assignments[:, z]
    return [tuple(int(c) + 1 for c in row) for row in assignments[ok]]


# ─────────────────────────────────────────────────────────────
# Invariants
# ─────────────────────────────────────────────────────────────
def counting_invariant(presentation: Presentation, table: QuandleTable) -> int:
    return len(enumerate_colorings(presentation, table))


def phi_e(presentation: Presentation, table: QuandleTable) -> InvariantPolynomial:
    """Sum over colorings f of q^|Im f|."""
    poly = InvariantPolynomial(PHI_E_VARIABLES, ascending=True)
    for coloring in enumerate_colorings(presentation, table):
        poly.add_term((len(set(coloring)),), 1)
    return poly


def surjective_hom_count(presentation: Presentation, table: QuandleTable, subquandle) -> int:
    """Colorings whose image is exactly the given subquandle."""
    target = set(subquandle)
    if not is_closed(table, target):
        raise ValidationException(
            "Subset is not a subquandle", {"subset": sorted(target)}
        )
    return sum(
        1 for coloring in enumerate_colorings(presentation, table, values=target)
        if set(coloring) == target
    )


def phi_e_decomposed(presentation: Presentation, table: QuandleTable) -> InvariantPolynomial:
    """Sum over subquandles S of |onto colorings with image S| q^|S|."""
    poly = InvariantPolynomial(PHI_E_VARIABLES, ascending=True)
    for sub in subquandles(table):
        poly.add_term((len(sub),), surjective_hom_count(presentation, table, sub))
    return poly


def submodule_span(elements, context: ModuleContext) -> int:
    """Size of the R-submodule spanned by the given element indices."""
    module = context.module
    return len(module.span(module.vector_of(i) for i in elements))


def phi_sqp(presentation: Presentation, table: QuandleTable) -> InvariantPolynomial:
    """Sum over colorings f of q^|Im f| z^rho(f), rho the size of the span of Im f."""
    if table.context is None:
        raise ModuleContextException(
            "The symplectic quandle polynomial needs a target built from a module"
        )
    poly = InvariantPolynomial(PHI_SQP_VARIABLES, ascending=True)
    spans: dict[frozenset, int] = {}
    for coloring in enumerate_colorings(presentation, table):
        image = frozenset(coloring)
        if image not in spans:
            spans[image] = submodule_span(image, table.context)
        poly.add_term((len(image), spans[image]), 1)
    return poly


def compute_invariants(
    link: str,
    presentation: Presentation,
    table: QuandleTable,
    target: str,
) -> InvariantResult:
    """Count, phi_E and (when the target has module structure) phi_sqp in one pass."""
    colorings = enumerate_colorings(presentation, table)
    e_poly = InvariantPolynomial(PHI_E_VARIABLES, ascending=True)
    sqp_poly = InvariantPolynomial(PHI_SQP_VARIABLES, ascending=True) if table.context else None
    spans: dict[frozenset, int] = {}
    for coloring in colorings:
        image = frozenset(coloring)
        e_poly.add_term((len(image),), 1)
        if sqp_poly is not None:
            if image not in spans:
                spans[image] = submodule_span(image, table.context)
            sqp_poly.add_term((len(image), spans[image]), 1)
    return InvariantResult(
        link=link,
        target=target,
        count=len(colorings),
        phi_e=e_poly.to_text(),
        phi_sqp=sqp_poly.to_text() if sqp_poly is not None else None,
    )
