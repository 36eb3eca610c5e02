"""
Finite commutative rings, free modules and bilinear forms.

Elements of Z_n and GF(p^m) are encoded as integers 0..|R|-1. For Z_n the code is
the canonical residue; for GF(p^m) it is the base-p evaluation of the coefficient
vector, so 0 -> 0, 1 -> 1, t -> p. Vectors of R^d are indexed 1-based by
index = 1 + sum(code(x_i) * |R|^(i-1)), the convention of the golden tables.

All arithmetic is table driven: each ring precomputes numpy addition and
multiplication tables, so module-wide computations become fancy indexing.
"""
import itertools
import logging
import re
from functools import reduce

import numpy as np

from app.config.constants import (
    DEFAULT_MODULI,
    GRAM_ENTRY_SEPARATOR,
    GRAM_ROW_SEPARATOR,
    MODULUS_VARIABLE,
)
from app.config.settings import settings
from app.core.exceptions import ResourceCapException, RingException, ValidationException
from app.models.schemas import RingSpec

logger = logging.getLogger(__name__)

# Ring tables are |R| x |R|; larger rings are outside desk scale
RING_TABLE_CAP = 512

_Z_PATTERN = re.compile(r"^Z(\d+)$")
_GF_PATTERN = re.compile(r"^GF\((\d+)\^(\d+)\)(?:/(.+))?$")
_TERM_PATTERN = re.compile(r"^(\d*)(?:(t)(?:\^(\d+))?)?$")


# ─────────────────────────────────────────────────────────────
# Small helpers over Z_p[t]
# ─────────────────────────────────────────────────────────────
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % k for k in range(2, int(n ** 0.5) + 1))


def _poly_rem(a: list[int], g: tuple[int, ...], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial g over Z_p (low degree first)."""
    a = list(a)
    dg = len(g) - 1
    for k in range(len(a) - 1, dg - 1, -1):
        c = a[k] % p
        if c:
            for j in range(dg + 1):
                a[k - dg + j] = (a[k - dg + j] - c * g[j]) % p
    return [c % p for c in a[:dg]] if len(a) >= dg else [c % p for c in a]


def is_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..m//2 over Z_p."""
    m = len(modulus) - 1
    for degree in range(1, m // 2 + 1):
        for low in itertools.product(range(p), repeat=degree):
            divisor = tuple(low) + (1,)
            if not any(_poly_rem(list(modulus), divisor, p)):
                return False
    return True


def format_polynomial(coefficients: tuple[int, ...], var: str = MODULUS_VARIABLE) -> str:
    terms = []
    for degree in range(len(coefficients) - 1, -1, -1):
        c = coefficients[degree]
        if not c:
            continue
        if degree == 0:
            terms.append(str(c))
            continue
        power = var if degree == 1 else f"{var}^{degree}"
        terms.append(power if c == 1 else f"{c}{power}")
    return "+".join(terms) if terms else "0"


def parse_polynomial(text: str, p: int) -> tuple[int, ...]:
    """Parse e.g. 't^2+t+1' or 't^2-1' into coefficients mod p, low degree first."""
    body = text.replace(" ", "").replace("−", "-")
    if not body:
        raise RingException("Empty modulus polynomial")
    if body[0] not in "+-":
        body = "+" + body
    coefficients: dict[int, int] = {}
    for sign, term in re.findall(r"([+-])([^+-]+)", body):
        match = _TERM_PATTERN.match(term)
        if not match or (not match.group(1) and not match.group(2)):
            raise RingException(f"Cannot parse modulus term '{term}'", {"modulus": text})
        coef = int(match.group(1)) if match.group(1) else 1
        degree = (int(match.group(3)) if match.group(3) else 1) if match.group(2) else 0
        coefficients[degree] = coefficients.get(degree, 0) + (coef if sign == "+" else -coef)
    top = max(coefficients)
    return tuple(coefficients.get(k, 0) % p for k in range(top + 1))


# ─────────────────────────────────────────────────────────────
# Ring specs
# ─────────────────────────────────────────────────────────────
def parse_ring_spec(text: str) -> RingSpec:
    """Parse `Z<n>` or `GF(<p>^<m>)[/<modulus in t>]`."""
    body = text.strip().replace(" ", "")
    match = _Z_PATTERN.match(body)
    if match:
        return _build_spec(kind="modular", n=int(match.group(1)))
    match = _GF_PATTERN.match(body)
    if not match:
        raise RingException(f"Unrecognised ring spec '{text}'", {"spec": text})
    p, m = int(match.group(1)), int(match.group(2))
    if m < 1:
        raise RingException("GF degree must be at least 1", {"m": m})
    _check_table_cap(p, m)
    if not is_prime(p):
        raise RingException(f"GF characteristic {p} is not prime", {"p": p})
    if match.group(3):
        modulus = parse_polynomial(match.group(3), p)
    elif m == 1:
        modulus = (0, 1)
    elif (p, m) in DEFAULT_MODULI:
        modulus = DEFAULT_MODULI[(p, m)]
    else:
        raise RingException(f"No default modulus for GF({p}^{m}); give one explicitly", {"p": p, "m": m})
    return _build_spec(kind="galois", p=p, m=m, modulus=modulus)


def _check_table_cap(base: int, exponent: int = 1) -> None:
    """Refuse base**exponent > RING_TABLE_CAP before any primality or irreducibility work."""
    if base > RING_TABLE_CAP or (base > 1 and exponent > RING_TABLE_CAP.bit_length()) \
            or base ** exponent > RING_TABLE_CAP:
        order = f"{base}^{exponent}" if exponent > 1 else str(base)
        raise ResourceCapException(
            f"Ring of order {order} exceeds table cap {RING_TABLE_CAP}",
            {"base": base, "exponent": exponent},
        )


def _build_spec(**fields) -> RingSpec:
    try:
        return RingSpec(**fields)
    except ValueError as e:
        raise RingException(f"Invalid ring spec: {e}", fields) from e


def format_ring_spec(spec: RingSpec) -> str:
    if spec.kind == "modular":
        return f"Z{spec.n}"
    return f"GF({spec.p}^{spec.m})/{format_polynomial(spec.modulus)}"


# ─────────────────────────────────────────────────────────────
# Rings
# ─────────────────────────────────────────────────────────────
class FiniteRing:
    """A finite commutative ring with identity, Z_n or GF(p^m), on integer codes."""

    def __init__(self, spec: RingSpec, add_table: np.ndarray, mul_table: np.ndarray):
        self.spec = spec
        self.order = spec.order
        self.add_table = add_table
        self.mul_table = mul_table
        # negation: the unique b with a + b = 0
        self.neg_table = np.argmax(add_table == 0, axis=1)
        for table in (self.add_table, self.mul_table, self.neg_table):
            table.setflags(write=False)

    # arithmetic on codes
    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_table[a, self.neg_table[b]])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def sum(self, values) -> int:
        return reduce(self.add, values, 0)

    @property
    def characteristic(self) -> int:
        return self.spec.n if self.spec.kind == "modular" else self.spec.p

    @property
    def is_field(self) -> bool:
        return self.spec.kind == "galois" or is_prime(self.spec.n)

    def elements(self) -> range:
        return range(self.order)

    def is_unit(self, a: int) -> bool:
        return bool((self.mul_table[a] == 1).any())

    def units(self) -> list[int]:
        return [a for a in self.elements() if self.is_unit(a)]

    def inverse(self, a: int) -> int:
        hits = np.flatnonzero(self.mul_table[a] == 1)
        if not len(hits):
            raise RingException(f"{a} is not a unit in {self}", {"element": a})
        return int(hits[0])

    def squaring_is_bijective(self) -> bool:
        squares = np.diagonal(self.mul_table)
        return len(np.unique(squares)) == self.order

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteRing) and self.spec == other.spec

    def __hash__(self) -> int:
        return hash(self.spec)

    def __repr__(self) -> str:
        return format_ring_spec(self.spec)


def _modular_tables(n: int) -> tuple[np.ndarray, np.ndarray]:
    idx = np.arange(n, dtype=np.int64)
    return (idx[:, None] + idx[None, :]) % n, (idx[:, None] * idx[None, :]) % n


def _galois_tables(p: int, m: int, modulus: tuple[int, ...]) -> tuple[np.ndarray, np.ndarray]:
    q = p ** m
    codes = np.arange(q, dtype=np.int64)
    weights = p ** np.arange(m, dtype=np.int64)
    digits = (codes[:, None] // weights[None, :]) % p          # (q, m) coefficient vectors

    add = (((digits[:, None, :] + digits[None, :, :]) % p) * weights).sum(axis=2)

    # schoolbook product, then reduce top-down by the monic modulus
    prod = np.zeros((q, q, 2 * m - 1), dtype=np.int64)
    for i in range(m):
        for j in range(m):
            prod[:, :, i + j] += digits[:, None, i] * digits[None, :, j]
    low = np.asarray(modulus[:m], dtype=np.int64)
    for k in range(2 * m - 2, m - 1, -1):
        lead = prod[:, :, k] % p
        prod[:, :, k - m:k] -= lead[:, :, None] * low[None, None, :]
        prod[:, :, k] = 0
    mul = ((prod[:, :, :m] % p) * weights).sum(axis=2)
    return add, mul


def ring_make(spec: RingSpec) -> FiniteRing:
    """Validate the spec and build the ring's arithmetic tables."""
    if spec.kind == "modular":
        _check_table_cap(spec.n)
        if spec.n < 2:
            raise RingException("Z_n needs n >= 2", {"n": spec.n})
    else:
        _check_table_cap(spec.p, spec.m)
        if not is_prime(spec.p):
            raise RingException(f"GF characteristic {spec.p} is not prime", {"p": spec.p})
        if any(not 0 <= c < spec.p for c in spec.modulus):
            raise RingException("Modulus coefficients must lie in 0..p-1", {"modulus": spec.modulus})
        if not is_irreducible(spec.modulus, spec.p):
            raise RingException(
                f"Modulus {format_polynomial(spec.modulus)} is reducible over Z_{spec.p}",
                {"modulus": spec.modulus},
            )
    if spec.kind == "modular":
        add, mul = _modular_tables(spec.n)
    else:
        add, mul = _galois_tables(spec.p, spec.m, spec.modulus)
    ring = FiniteRing(spec, add, mul)
    logger.debug("Built ring %s of order %d", ring, ring.order)
    return ring


def make_ring(text: str) -> FiniteRing:
    return ring_make(parse_ring_spec(text))


# ─────────────────────────────────────────────────────────────
# Free modules and the canonical indexing
# ─────────────────────────────────────────────────────────────
def index_of(coords, ring: FiniteRing) -> int:
    """1-based index of a vector: 1 + sum(code(x_i) * |R|^(i-1))."""
    index = 0
    for code in reversed(tuple(coords)):
        if not 0 <= code < ring.order:
            raise RingException(f"{code} is not an element of {ring}", {"coords": list(coords)})
        index = index * ring.order + code
    return index + 1


def vector_of(index: int, ring: FiniteRing, dim: int) -> tuple[int, ...]:
    size = ring.order ** dim
    if not 1 <= index <= size:
        raise RingException(f"Index {index} out of range 1..{size}", {"index": index})
    k = index - 1
    coords = []
    for _ in range(dim):
        k, code = divmod(k, ring.order)
        coords.append(code)
    return tuple(coords)


class FreeModule:
    """R^d with the canonical 1-based indexing."""

    def __init__(self, ring: FiniteRing, dim: int):
        if dim < 0:
            raise RingException("Module dimension must be non-negative", {"dim": dim})
        self.ring = ring
        self.dim = dim
        self.size = ring.order ** dim
        self._vectors: np.ndarray | None = None

    def vectors(self) -> np.ndarray:
        """All vectors as a (size, dim) code array, row k holding the vector of index k+1."""
        if self._vectors is None:
            if self.size > settings.ELEMENT_CAP:
                raise ResourceCapException(
                    f"Module of size {self.size} exceeds ELEMENT_CAP={settings.ELEMENT_CAP}",
                    {"size": self.size},
                )
            codes = np.arange(self.size, dtype=np.int64)
            weights = self.ring.order ** np.arange(self.dim, dtype=np.int64)
            self._vectors = (codes[:, None] // weights[None, :]) % self.ring.order
            self._vectors.setflags(write=False)
        return self._vectors

    def index_of(self, coords) -> int:
        if len(coords) != self.dim:
            raise RingException(f"Expected {self.dim} coordinates, got {len(coords)}")
        return index_of(coords, self.ring)

    def vector_of(self, index: int) -> tuple[int, ...]:
        return vector_of(index, self.ring, self.dim)

    def indices_of(self, vectors: np.ndarray) -> np.ndarray:
        """Vectorized index_of over the last axis of a code array."""
        weights = self.ring.order ** np.arange(self.dim, dtype=np.int64)
        return (vectors * weights).sum(axis=-1) + 1

    def add(self, x, y) -> tuple[int, ...]:
        return tuple(self.ring.add(a, b) for a, b in zip(x, y))

    def scale(self, r: int, x) -> tuple[int, ...]:
        return tuple(self.ring.mul(r, a) for a in x)

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.dim

    def span(self, vectors) -> set[tuple[int, ...]]:
        """Closure of the vectors and 0 under addition and scalar multiplication."""
        closed = {self.zero()}
        for g in vectors:
            g = tuple(g)
            if g in closed:
                continue
            multiples = {self.scale(r, g) for r in self.ring.elements()}
            closed = {self.add(s, mg) for s in closed for mg in multiples}
        return closed


# ─────────────────────────────────────────────────────────────
# Gram matrices and bilinear forms
# ─────────────────────────────────────────────────────────────
class GramMatrix:
    """An antisymmetric, alternating d x d matrix over a finite ring."""

    def __init__(self, entries, ring: FiniteRing):
        try:
            array = np.array(entries, dtype=np.int64)
        except (TypeError, ValueError) as e:
            raise ValidationException(f"Gram matrix is not a rectangular integer array: {e}") from e
        if array.ndim != 2 or array.shape[0] != array.shape[1]:
            raise ValidationException("Gram matrix must be square", {"shape": list(array.shape)})
        if array.size and (array.min() < 0 or array.max() >= ring.order):
            raise ValidationException(f"Gram entries must be codes of {ring}", {"entries": array.tolist()})
        if np.any(np.diagonal(array) != 0):
            raise ValidationException("Gram matrix must be alternating (zero diagonal)", {"entries": array.tolist()})
        if np.any(array.T != ring.neg_table[array]):
            raise ValidationException("Gram matrix must be antisymmetric", {"entries": array.tolist()})
        array.setflags(write=False)
        self.entries = array
        self.ring = ring

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def is_zero(self) -> bool:
        return not self.entries.any()

    def negated(self) -> "GramMatrix":
        return GramMatrix(self.ring.neg_table[self.entries], self.ring)

    def to_lists(self) -> list[list[int]]:
        return self.entries.tolist()

    def to_text(self) -> str:
        return GRAM_ROW_SEPARATOR.join(
            GRAM_ENTRY_SEPARATOR.join(str(v) for v in row) for row in self.entries.tolist()
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GramMatrix)
            and self.ring == other.ring
            and np.array_equal(self.entries, other.entries)
        )

    def __repr__(self) -> str:
        return f"GramMatrix({self.to_text()} over {self.ring})"


def parse_gram(text: str, ring: FiniteRing) -> GramMatrix:
    """Rows separated by ';', entries by ','; each entry an element code."""
    try:
        rows = [
            [int(v) for v in row.split(GRAM_ENTRY_SEPARATOR)]
            for row in text.replace(" ", "").split(GRAM_ROW_SEPARATOR)
            if row
        ]
    except ValueError as e:
        raise ValidationException(f"Cannot parse Gram matrix '{text}'", {"gram": text}) from e
    if not rows:
        raise ValidationException("Gram matrix is empty", {"gram": text})
    return GramMatrix(rows, ring)


def bilinear_form(x, y, gram: GramMatrix) -> int:
    """<x, y> = x A y^T = sum_ij x_i A_ij y_j."""
    if len(x) != gram.dim or len(y) != gram.dim:
        raise RingException(
            f"Dimension mismatch: vectors of length {len(x)}, {len(y)} against a {gram.dim}x{gram.dim} form"
        )
    ring = gram.ring
    total = 0
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, yj in enumerate(y):
            a = int(gram.entries[i, j])
            if a and yj:
                total = ring.add(total, ring.mul(ring.mul(xi, a), yj))
    return total


def pairwise_form(vectors: np.ndarray, gram: GramMatrix) -> np.ndarray:
    """<v_i, v_j> for all pairs of rows, as an (N, N) code array."""
    ring = gram.ring
    n = len(vectors)
    result = np.zeros((n, n), dtype=np.int64)
    for i, j in zip(*np.nonzero(gram.entries)):
        left = ring.mul_table[vectors[:, i], gram.entries[i, j]]
        term = ring.mul_table[left[:, None], vectors[None, :, j]]
        result = ring.add_table[result, term]
    return result


# ─────────────────────────────────────────────────────────────
# Small matrices over the ring
# ─────────────────────────────────────────────────────────────
def mat_mul(a: list[list[int]], b: list[list[int]], ring: FiniteRing) -> list[list[int]]:
    return [
        [ring.sum(ring.mul(a[i][k], b[k][j]) for k in range(len(b))) for j in range(len(b[0]))]
        for i in range(len(a))
    ]


def transpose(a: list[list[int]]) -> list[list[int]]:
    return [list(row) for row in zip(*a)]


def congruent(p: list[list[int]], gram: GramMatrix) -> list[list[int]]:
    """P A P^T."""
    return mat_mul(mat_mul(p, gram.to_lists(), gram.ring), transpose(p), gram.ring)


def determinant(p: list[list[int]], ring: FiniteRing) -> int:
    """Leibniz expansion; fine for the small dimensions used here."""
    d = len(p)
    total = 0
    for perm in itertools.permutations(range(d)):
        inversions = sum(1 for i in range(d) for j in range(i + 1, d) if perm[i] > perm[j])
        term = 1
        for i in range(d):
            term = ring.mul(term, p[i][perm[i]])
            if not term:
                break
        if term:
            total = ring.add(total, ring.neg(term) if inversions % 2 else term)
    return total


def identity_matrix(d: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(d)] for i in range(d)]
