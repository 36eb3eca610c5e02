"""
Finite quandles as explicit operation tables.

A table follows the quandle-matrix convention: entries are 1-based and
entry[i][j] is the index of x_i ▷ x_j (rows are the left operand). Internally
the tables are read-only numpy arrays; a zero-based view is used for fancy
indexing.
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property

import networkx as nx
import numpy as np

from app.config.constants import QP_VARIABLES
from app.config.settings import settings
from app.core.exceptions import (
    QuandleAxiomException,
    ResourceCapException,
    ValidationException,
)
from app.models.schemas import AxiomViolation, ValidationReport
from app.services.ring_algebra import FiniteRing, FreeModule
from app.utils.polynomial import InvariantPolynomial

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ModuleContext:
    """Marks a table as a quandle on R^d, indexed by the canonical index map."""
    ring: FiniteRing
    dim: int
    module: FreeModule = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "module", FreeModule(self.ring, self.dim))


class QuandleTable:
    """An n x n operation table with 1-based entries.

    Construction checks only the shape and the entry range; the quandle axioms
    are checked by validate_axioms (or require_quandle).
    """

    def __init__(self, entries, context: ModuleContext | None = None):
        try:
            array = np.array(entries, dtype=np.int64)
        except (TypeError, ValueError) as e:
            raise ValidationException(f"Quandle table is not an integer matrix: {e}") from e
        if array.ndim != 2 or array.shape[0] != array.shape[1]:
            raise ValidationException(
                "Quandle table must be square", {"shape": list(array.shape)}
            )
        n = array.shape[0]
        if n == 0:
            raise ValidationException("Quandle table is empty")
        bad = np.argwhere((array < 1) | (array > n))
        if len(bad):
            i, j = (int(v) + 1 for v in bad[0])
            raise ValidationException(
                f"Entry ({i},{j}) = {array[i - 1, j - 1]} is outside 1..{n}",
                {"row": i, "column": j},
            )
        if context is not None and context.module.size != n:
            raise ValidationException(
                f"Module context of size {context.module.size} does not match order {n}"
            )
        array.setflags(write=False)
        self.entries = array
        self.context = context

    @property
    def order(self) -> int:
        return self.entries.shape[0]

    @cached_property
    def zero_based(self) -> np.ndarray:
        view = self.entries - 1
        view.setflags(write=False)
        return view

    def op(self, i: int, j: int) -> int:
        return int(self.entries[i - 1, j - 1])

    def to_lists(self) -> list[list[int]]:
        return self.entries.tolist()

    def __eq__(self, other) -> bool:
        return isinstance(other, QuandleTable) and np.array_equal(self.entries, other.entries)

    def __hash__(self) -> int:
        return hash(self.entries.tobytes())

    def __repr__(self) -> str:
        return f"QuandleTable(order={self.order})"


# ─────────────────────────────────────────────────────────────
# Axioms
# ─────────────────────────────────────────────────────────────
def validate_axioms(table) -> ValidationReport:
    """List every violation of idempotence (i), column bijectivity (ii) and
    right self-distributivity (iii), witnesses given as 1-based indices."""
    t = table if isinstance(table, QuandleTable) else QuandleTable(table)
    n = t.order
    z = t.zero_based
    idx = np.arange(n)
    violations: list[AxiomViolation] = []

    for i in np.flatnonzero(z[idx, idx] != idx):
        violations.append(AxiomViolation(
            axiom="i", witness=(int(i) + 1,),
            message=f"x{i + 1} ▷ x{i + 1} = x{z[i, i] + 1}",
        ))

    for j in range(n):
        column = z[:, j]
        if len(np.unique(column)) != n:
            missing = sorted(set(range(n)) - set(column.tolist()))
            violations.append(AxiomViolation(
                axiom="ii", witness=(j + 1,),
                message=f"column {j + 1} misses {[m + 1 for m in missing]}",
            ))

    for c in range(n):
        zc = z[:, c]
        lhs = zc[z]                       # (a ▷ b) ▷ c
        rhs = z[zc[:, None], zc[None, :]]  # (a ▷ c) ▷ (b ▷ c)
        for a, b in np.argwhere(lhs != rhs):
            violations.append(AxiomViolation(
                axiom="iii", witness=(int(a) + 1, int(b) + 1, c + 1),
                message=f"(x{a + 1}▷x{b + 1})▷x{c + 1} != (x{a + 1}▷x{c + 1})▷(x{b + 1}▷x{c + 1})",
            ))

    report = ValidationReport(order=n, violations=violations)
    logger.debug("Validated table of order %d: %d violations", n, len(violations))
    return report


def require_quandle(table: QuandleTable) -> QuandleTable:
    report = validate_axioms(table)
    if not report.is_quandle:
        first = report.violations[0]
        raise QuandleAxiomException(
            f"Table is not a quandle: axiom ({first.axiom}) fails at {list(first.witness)}",
            {"violations": [v.model_dump() for v in report.violations]},
        )
    return table


# ─────────────────────────────────────────────────────────────
# Derived tables
# ─────────────────────────────────────────────────────────────
def dual(table: QuandleTable) -> QuandleTable:
    """dual[i][j] = k where table[k][j] = i, i.e. the operation ▷⁻¹."""
    n = table.order
    z = table.zero_based
    inverse = np.empty_like(z)
    rows = np.arange(n)
    for j in range(n):
        if len(np.unique(z[:, j])) != n:
            raise QuandleAxiomException(
                f"Column {j + 1} is not a permutation; the table has no dual",
                {"column": j + 1},
            )
        inverse[z[:, j], j] = rows
    return QuandleTable(inverse + 1, context=table.context)


def is_involutory(table: QuandleTable) -> bool:
    return dual(table) == table


def disjoint_union(a: QuandleTable, b: QuandleTable) -> QuandleTable:
    """Block table with a top-left, b shifted by |a| bottom-right, and the
    off-diagonal blocks acting trivially (every entry equals its row number)."""
    n, m = a.order, b.order
    rows = np.arange(1, n + m + 1)
    union = np.repeat(rows[:, None], n + m, axis=1)
    union[:n, :n] = a.entries
    union[n:, n:] = b.entries + n
    return QuandleTable(union)


# ─────────────────────────────────────────────────────────────
# Structure
# ─────────────────────────────────────────────────────────────
def orbits(table: QuandleTable) -> list[list[int]]:
    """Connected components of the graph with edges {i, i ▷ j}, each sorted,
    listed by smallest member."""
    graph = nx.Graph()
    graph.add_nodes_from(range(1, table.order + 1))
    rows, cols = np.nonzero(table.entries != np.arange(1, table.order + 1)[:, None])
    graph.add_edges_from(
        (int(i) + 1, int(table.entries[i, j])) for i, j in zip(rows, cols)
    )
    components = [sorted(c) for c in nx.connected_components(graph)]
    return sorted(components, key=lambda c: c[0])


def is_connected(table: QuandleTable) -> bool:
    return len(orbits(table)) == 1


def maximal_trivial_component(table: QuandleTable) -> list[int]:
    """Elements i with i ▷ j = i and j ▷ i = j for every j."""
    labels = np.arange(1, table.order + 1)
    acts_trivially = (table.entries == labels[:, None]).all(axis=1)
    acted_on_trivially = (table.entries == labels[:, None]).all(axis=0)
    return [int(i) + 1 for i in np.flatnonzero(acts_trivially & acted_on_trivially)]


def is_almost_connected(table: QuandleTable) -> bool:
    """True when the table is its trivial component plus at most one orbit.

    A table that is entirely trivial counts as almost connected.
    """
    trivial = set(maximal_trivial_component(table))
    rest = set(range(1, table.order + 1)) - trivial
    if not rest:
        return True
    for orbit in orbits(table):
        members = set(orbit)
        if members <= trivial:
            continue
        if members != rest:
            return False
    return True


def quandle_polynomial_profile(table: QuandleTable) -> list[tuple[int, int]]:
    """(c(i), r(i)) per element: c(i) = |{j : j ▷ i = j}|, r(i) = |{j : i ▷ j = i}|."""
    labels = np.arange(1, table.order + 1)
    fixes = table.entries == labels[:, None]
    c = fixes.sum(axis=0)
    r = fixes.sum(axis=1)
    return [(int(ci), int(ri)) for ci, ri in zip(c, r)]


def quandle_polynomial(table: QuandleTable) -> InvariantPolynomial:
    """qp(s, t) = sum over elements of s^c(i) t^r(i)."""
    poly = InvariantPolynomial(QP_VARIABLES)
    for c, r in quandle_polynomial_profile(table):
        poly.add_term((c, r), 1)
    return poly


# ─────────────────────────────────────────────────────────────
# Subquandles
# ─────────────────────────────────────────────────────────────
def closure(table: QuandleTable, elements, inverse: QuandleTable | None = None) -> tuple[int, ...]:
    """Smallest subset containing the elements and closed under ▷ and ▷⁻¹."""
    z = table.zero_based
    zi = (inverse or dual(table)).zero_based
    mask = np.zeros(table.order, dtype=bool)
    mask[[e - 1 for e in elements]] = True
    while True:
        members = np.flatnonzero(mask)
        grid = np.ix_(members, members)
        grown = mask.copy()
        grown[z[grid].ravel()] = True
        grown[zi[grid].ravel()] = True
        if np.array_equal(grown, mask):
            return tuple(int(m) + 1 for m in members)
        mask = grown


def is_closed(table: QuandleTable, subset, inverse: QuandleTable | None = None) -> bool:
    subset = sorted(set(subset))
    return bool(subset) and list(closure(table, subset, inverse)) == subset


def subquandles(table: QuandleTable) -> list[tuple[int, ...]]:
    """Every nonempty subquandle, by saturating closures from the singletons.

    Sorted by size, then lexicographically.
    """
    inverse = dual(table)
    cap = settings.SUBQUANDLE_CAP
    found: set[tuple[int, ...]] = set()
    frontier = [closure(table, [i], inverse) for i in range(1, table.order + 1)]
    found.update(frontier)
    while frontier:
        grown = []
        for sub in frontier:
            present = set(sub)
            for x in range(1, table.order + 1):
                if x in present:
                    continue
                bigger = closure(table, sub + (x,), inverse)
                if bigger not in found:
                    found.add(bigger)
                    grown.append(bigger)
                    if len(found) > cap:
                        raise ResourceCapException(
                            f"More than SUBQUANDLE_CAP={cap} subquandles",
                            {"order": table.order},
                        )
        frontier = grown
    result = sorted(found, key=lambda s: (len(s), s))
    logger.info("Found %d subquandles in a table of order %d", len(result), table.order)
    return result


# ─────────────────────────────────────────────────────────────
# Isomorphism
# ─────────────────────────────────────────────────────────────
def _element_keys(table: QuandleTable) -> list[tuple[int, int, int]]:
    size_of = {}
    for orbit in orbits(table):
        for i in orbit:
            size_of[i] = len(orbit)
    profile = quandle_polynomial_profile(table)
    return [profile[i] + (size_of[i + 1],) for i in range(table.order)]


def is_isomorphic(a: QuandleTable, b: QuandleTable) -> list[int] | None:
    """A bijection phi (phi[i-1] = image of i) with phi(x ▷ y) = phi(x) ▷ phi(y),
    or None.

    Backtracks over elements in ascending order with candidates in ascending
    order, so the witness is deterministic. Candidates must share the
    (c(i), r(i), orbit size) key, and every assignment is closed under products
    of already assigned pairs before branching again.
    """
    n = a.order
    if b.order != n:
        return None
    keys_a, keys_b = _element_keys(a), _element_keys(b)
    if sorted(keys_a) != sorted(keys_b):
        logger.debug("Element profiles differ; not isomorphic")
        return None
    za, zb = a.zero_based, b.zero_based
    candidates = [[v for v in range(n) if keys_b[v] == keys_a[u]] for u in range(n)]

    def assign(phi: list[int], used: list[bool], x: int, u: int) -> bool:
        """Set phi[x] = u and propagate products; False on contradiction."""
        phi[x], used[u] = u, True
        queue = [x]
        while queue:
            y = queue.pop()
            for w in range(n):
                if phi[w] < 0:
                    continue
                for s, t in ((y, w), (w, y)):
                    target = int(za[s, t])
                    image = int(zb[phi[s], phi[t]])
                    if phi[target] >= 0:
                        if phi[target] != image:
                            return False
                    elif used[image] or keys_b[image] != keys_a[target]:
                        return False
                    else:
                        phi[target], used[image] = image, True
                        queue.append(target)
        return True

    def search(phi: list[int], used: list[bool]) -> list[int] | None:
        try:
            x = phi.index(-1)
        except ValueError:
            return phi
        for u in candidates[x]:
            if used[u]:
                continue
            trial_phi, trial_used = phi.copy(), used.copy()
            if assign(trial_phi, trial_used, x, u):
                result = search(trial_phi, trial_used)
                if result is not None:
                    return result
        return None

    phi = search([-1] * n, [False] * n)
    if phi is None:
        return None
    mapping = np.asarray(phi)
    # full check of phi(x ▷ y) = phi(x) ▷ phi(y)
    if not np.array_equal(mapping[za], zb[mapping[:, None], mapping[None, :]]):
        return None
    return [int(v) + 1 for v in mapping]


# ─────────────────────────────────────────────────────────────
# Standard examples
# ─────────────────────────────────────────────────────────────
def trivial_quandle(n: int) -> QuandleTable:
    if n < 1:
        raise ValidationException("Quandle order must be at least 1", {"order": n})
    rows = np.arange(1, n + 1)
    return QuandleTable(np.repeat(rows[:, None], n, axis=1))


def alexander_quandle(n: int, t: int) -> QuandleTable:
    """Z_n with x ▷ y = t·x + (1 − t)·y; element x has label x, with 0 labelled n."""
    if n < 1:
        raise ValidationException("Quandle order must be at least 1", {"order": n})
    if np.gcd(t % n, n) != 1 and n > 1:
        raise ValidationException(f"t={t} is not a unit mod {n}", {"order": n, "t": t})
    x = np.arange(1, n + 1)
    values = (t * x[:, None] + (1 - t) * x[None, :]) % n
    values[values == 0] = n
    return QuandleTable(values)


def cyclic_quandle(n: int) -> QuandleTable:
    """The dihedral quandle x ▷ y = 2y − x on Z_n."""
    return alexander_quandle(n, -1)
