"""
Symplectic quandles: x ▷ y = x + <x, y> y on R^d.

Form-level computations (radical, reduction, isometry) work from the Gram
matrix alone; only build_symplectic materializes a table, under ELEMENT_CAP.
"""
import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import networkx as nx
import numpy as np

from app.config.settings import settings
from app.core.exceptions import (
    NotAFieldException,
    ResourceCapException,
    RingException,
    ValidationException,
)
from app.models.schemas import (
    ConjecturePair,
    ConjectureReport,
    ConjectureRow,
    IsometryReport,
)
from app.services.quandle_core import ModuleContext, QuandleTable, is_isomorphic
from app.services.ring_algebra import (
    FiniteRing,
    FreeModule,
    GramMatrix,
    bilinear_form,
    congruent,
    identity_matrix,
    make_ring,
    pairwise_form,
    parse_gram,
    parse_ring_spec,
    ring_make,
)

logger = logging.getLogger(__name__)

# rows of the table built per step, keeps the (rows, N, d) buffer small
_BUILD_CHUNK = 256


@dataclass(frozen=True)
class SymplecticSpace:
    ring: FiniteRing
    gram: GramMatrix

    def __post_init__(self):
        if self.gram.ring != self.ring:
            raise RingException(f"Gram matrix is over {self.gram.ring}, space is over {self.ring}")
        if self.gram.dim < 1:
            raise RingException("Symplectic space needs dimension at least 1")

    @property
    def dim(self) -> int:
        return self.gram.dim

    @property
    def module(self) -> FreeModule:
        return FreeModule(self.ring, self.dim)


def space_from_text(ring_text: str, dim: int, gram_text: str) -> SymplecticSpace:
    """The CLI triple --ring/--dim/--gram as a space."""
    ring = make_ring(ring_text)
    gram = parse_gram(gram_text, ring)
    if gram.dim != dim:
        raise RingException(
            f"--dim {dim} does not match a {gram.dim}x{gram.dim} Gram matrix",
            {"dim": dim, "gram": gram_text},
        )
    return SymplecticSpace(ring, gram)


def build_symplectic(space: SymplecticSpace) -> QuandleTable:
    """The quandle table of (R^d, <,>) under the canonical indexing."""
    module = space.module
    ring = space.ring
    vectors = module.vectors()  # raises past ELEMENT_CAP
    forms = pairwise_form(vectors, space.gram)
    n = module.size
    entries = np.empty((n, n), dtype=np.int64)
    for start in range(0, n, _BUILD_CHUNK):
        stop = min(start + _BUILD_CHUNK, n)
        scaled = ring.mul_table[forms[start:stop, :, None], vectors[None, :, :]]
        products = ring.add_table[vectors[start:stop, None, :], scaled]
        entries[start:stop] = module.indices_of(products)
    logger.info("Built symplectic quandle of order %d over %s", n, ring)
    return QuandleTable(entries, context=ModuleContext(ring, space.dim))


def _row_times_gram(vectors: np.ndarray, gram: GramMatrix) -> np.ndarray:
    """x A for every row x."""
    ring = gram.ring
    out = np.zeros_like(vectors)
    for i, j in zip(*np.nonzero(gram.entries)):
        out[:, j] = ring.add_table[out[:, j], ring.mul_table[vectors[:, i], gram.entries[i, j]]]
    return out


def degenerate_submodule(space: SymplecticSpace) -> list[tuple[int, ...]]:
    """{x : <x, y> = 0 for all y}, in index order."""
    module = space.module
    vectors = module.vectors()
    radical = vectors[~_row_times_gram(vectors, space.gram).any(axis=1)]
    result = [tuple(int(c) for c in v) for v in radical]
    if module.span(result) != set(result):
        raise ValidationException("Radical is not closed under the module operations")
    return result


def radical_indices(space: SymplecticSpace) -> list[int]:
    return [space.module.index_of(v) for v in degenerate_submodule(space)]


def is_nondegenerate(space: SymplecticSpace) -> bool:
    return len(degenerate_submodule(space)) == 1


def dual_space(space: SymplecticSpace) -> SymplecticSpace:
    """The space with Gram -A; its quandle is the dual quandle."""
    return SymplecticSpace(space.ring, space.gram.negated())


def standard_gram(ring: FiniteRing, alphas, radical_dim: int = 0) -> GramMatrix:
    """Blocks [[0, a], [-a, 0]] for each a in alphas, then radical_dim zero rows."""
    alphas = list(alphas)
    if radical_dim < 0:
        raise ValidationException("Radical dimension must be non-negative")
    d = 2 * len(alphas) + radical_dim
    entries = [[0] * d for _ in range(d)]
    for k, alpha in enumerate(alphas):
        if not 0 <= alpha < ring.order:
            raise RingException(f"{alpha} is not an element of {ring}", {"alpha": alpha})
        entries[2 * k][2 * k + 1] = alpha
        entries[2 * k + 1][2 * k] = ring.neg(alpha)
    return GramMatrix(entries, ring)


class Reduction(NamedTuple):
    basis: list[list[int]]
    rank: int
    radical_dim: int


def symplectic_reduce(space: SymplecticSpace) -> Reduction:
    """Change of basis B with B A B^T in standard form, over a field.

    Hyperbolic pairs are taken first-index-first; each pair (u, v) is scaled so
    <u, v> = 1 and the remaining vectors are made orthogonal to it by
    w -> w - <w, v> u + <w, u> v. Vectors left without a partner span the radical.
    """
    ring, gram = space.ring, space.gram
    if not ring.is_field:
        raise NotAFieldException(f"Symplectic reduction needs a field; {ring} is not one")
    module = space.module
    remaining = [tuple(row) for row in identity_matrix(space.dim)]
    pairs: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    radical: list[tuple[int, ...]] = []
    while remaining:
        u = remaining.pop(0)
        partner = next(
            (k for k, w in enumerate(remaining) if bilinear_form(u, w, gram)), None
        )
        if partner is None:
            radical.append(u)
            continue
        v = remaining.pop(partner)
        v = module.scale(ring.inverse(bilinear_form(u, v, gram)), v)
        pairs.append((u, v))
        remaining = [
            module.add(
                module.add(w, module.scale(ring.neg(bilinear_form(w, v, gram)), u)),
                module.scale(bilinear_form(w, u, gram), v),
            )
            for w in remaining
        ]
    basis = [list(vec) for pair in pairs for vec in pair] + [list(vec) for vec in radical]
    reduction = Reduction(basis, 2 * len(pairs), len(radical))
    target = standard_gram(ring, [1] * len(pairs), len(radical))
    if congruent(basis, gram) != target.to_lists():
        raise ValidationException("Reduction failed to reach the standard form")
    logger.debug("Reduced %s: rank %d, radical %d", gram, reduction.rank, reduction.radical_dim)
    return reduction


# ─────────────────────────────────────────────────────────────
# Isometry
# ─────────────────────────────────────────────────────────────
def _all_matrices(ring: FiniteRing, d: int) -> np.ndarray:
    count = ring.order ** (d * d)
    codes = np.arange(count, dtype=np.int64)
    weights = ring.order ** np.arange(d * d, dtype=np.int64)
    return ((codes[:, None] // weights[None, :]) % ring.order).reshape(count, d, d)


def _batch_mul(ring: FiniteRing, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product over the ring on the last two axes; b may be a single matrix."""
    out = None
    for k in range(a.shape[-1]):
        term = ring.mul_table[a[..., :, k, None], b[..., None, k, :]]
        out = term if out is None else ring.add_table[out, term]
    return out


def _batch_det(ring: FiniteRing, mats: np.ndarray) -> np.ndarray:
    d = mats.shape[-1]
    total = np.zeros(len(mats), dtype=np.int64)
    for perm in itertools.permutations(range(d)):
        inversions = sum(1 for i in range(d) for j in range(i + 1, d) if perm[i] > perm[j])
        term = np.ones(len(mats), dtype=np.int64)
        for i in range(d):
            term = ring.mul_table[term, mats[:, i, perm[i]]]
        if inversions % 2:
            term = ring.neg_table[term]
        total = ring.add_table[total, term]
    return total


def is_isometric(a: SymplecticSpace, b: SymplecticSpace, exhaustive: bool = False) -> IsometryReport:
    """Look for P with P A P^T = A'.

    In dimension 2, P A P^T = det(P) A, so A' must be a unit multiple u A and
    diag(u, 1) is a witness. Otherwise (or with exhaustive=True) every d x d
    matrix is tried in index order, capped by ISOMETRY_SEARCH_CAP.
    """
    if a.ring != b.ring or a.dim != b.dim:
        raise RingException("Isometry needs spaces over the same ring and dimension")
    ring, d = a.ring, a.dim
    if a.gram == b.gram and not exhaustive:
        return IsometryReport(isometric=True, witness=identity_matrix(d), method="identical")

    if d == 2 and not exhaustive:
        alpha, beta = int(a.gram.entries[0, 1]), int(b.gram.entries[0, 1])
        units = ring.units()
        for checked, u in enumerate(units, start=1):
            if ring.mul(u, alpha) == beta:
                witness = [[u, 0], [0, 1]]
                if congruent(witness, a.gram) != b.gram.to_lists():
                    raise ValidationException("Unit-multiple witness failed the congruence check")
                return IsometryReport(
                    isometric=True, witness=witness, method="dimension-2", candidates_checked=checked
                )
        return IsometryReport(isometric=False, method="dimension-2", candidates_checked=len(units))

    space_size = ring.order ** (d * d)
    if space_size > settings.ISOMETRY_SEARCH_CAP:
        raise ResourceCapException(
            f"Isometry search over {space_size} matrices exceeds ISOMETRY_SEARCH_CAP="
            f"{settings.ISOMETRY_SEARCH_CAP}",
            {"candidates": space_size},
        )
    mats = _all_matrices(ring, d)
    invertible = np.isin(_batch_det(ring, mats), ring.units())
    mats = mats[invertible]
    images = _batch_mul(ring, _batch_mul(ring, mats, a.gram.entries), np.transpose(mats, (0, 2, 1)))
    hits = np.flatnonzero((images == b.gram.entries).all(axis=(1, 2)))
    logger.info("Exhaustive isometry search: %d invertible candidates, %d witnesses", len(mats), len(hits))
    if not len(hits):
        return IsometryReport(isometric=False, method="exhaustive", candidates_checked=len(mats))
    first = int(hits[0])
    return IsometryReport(
        isometric=True, witness=mats[first].tolist(), method="exhaustive", candidates_checked=first + 1
    )


def induced_bijection(p: list[list[int]], a: SymplecticSpace, b: SymplecticSpace) -> list[int]:
    """sigma with sigma[i-1] the index in b's quandle of element i of a's, for P A P^T = A'.

    x -> x P carries (R^d, A') to (R^d, A); sigma is its inverse.
    """
    if congruent(p, a.gram) != b.gram.to_lists():
        raise ValidationException("P does not carry the first form onto the second")
    module = a.module
    vectors = module.vectors()
    images = _batch_mul(a.ring, vectors[:, None, :], np.asarray(p, dtype=np.int64))[:, 0, :]
    sigma = np.empty(module.size, dtype=np.int64)
    sigma[module.indices_of(images) - 1] = np.arange(1, module.size + 1)
    return sigma.tolist()


# ─────────────────────────────────────────────────────────────
# Conjecture scan
# ─────────────────────────────────────────────────────────────
def _partition(alphas: list[int], related) -> list[list[int]]:
    graph = nx.Graph()
    graph.add_nodes_from(alphas)
    graph.add_edges_from(pair for pair, same in related.items() if same)
    return sorted((sorted(c) for c in nx.connected_components(graph)), key=lambda c: c[0])


def scan_modulus(n: int, dim: int = 2) -> ConjectureRow:
    """Compare quandle isomorphism with isometry for the forms [[0, a], [-a, 0]] over Z_n."""
    ring = ring_make(parse_ring_spec(f"Z{n}"))
    alphas = list(range(n))
    spaces = {alpha: SymplecticSpace(ring, standard_gram(ring, [alpha])) for alpha in alphas}
    tables = {alpha: build_symplectic(space) for alpha, space in spaces.items()}
    isomorphic, isometric = {}, {}
    counterexamples = []
    for alpha, beta in itertools.combinations(alphas, 2):
        iso = is_isomorphic(tables[alpha], tables[beta]) is not None
        isom = is_isometric(spaces[alpha], spaces[beta]).isometric
        isomorphic[(alpha, beta)], isometric[(alpha, beta)] = iso, isom
        if iso != isom:
            counterexamples.append(
                ConjecturePair(alpha=alpha, beta=beta, quandle_isomorphic=iso, isometric=isom)
            )
    quandle_classes = _partition(alphas, isomorphic)
    isometry_classes = _partition(alphas, isometric)
    row = ConjectureRow(
        n=n,
        dim=dim,
        quandle_classes=quandle_classes,
        isometry_classes=isometry_classes,
        coincide=quandle_classes == isometry_classes,
        counterexamples=counterexamples,
    )
    logger.info("Scanned Z_%d: %d quandle classes, coincide=%s", n, len(quandle_classes), row.coincide)
    return row


def conjecture_scan(moduli, dim: int = 2, workers: int | None = None) -> ConjectureReport:
    moduli = sorted(set(moduli))
    if not moduli:
        raise ValidationException("No moduli to scan")
    if moduli[0] < 2:
        raise ValidationException("Moduli must be at least 2", {"moduli": moduli})
    if moduli[-1] > settings.SCAN_MAX_MODULUS or dim > settings.SCAN_MAX_DIM:
        raise ResourceCapException(
            f"Scan bounds exceed SCAN_MAX_MODULUS={settings.SCAN_MAX_MODULUS} "
            f"or SCAN_MAX_DIM={settings.SCAN_MAX_DIM}",
            {"moduli": moduli, "dim": dim},
        )
    if dim != 2:
        raise ValidationException("The scan enumerates 2-dimensional forms only", {"dim": dim})
    workers = workers or settings.WORKERS
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(scan_modulus, moduli, [dim] * len(moduli)))
    else:
        rows = [scan_modulus(n, dim) for n in moduli]
    return ConjectureReport(rows=sorted(rows, key=lambda row: row.n))
