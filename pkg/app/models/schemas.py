"""Pydantic models for the symplectic quandle toolkit."""
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator


class RingSpec(BaseModel):
    """Z_n (kind='modular') or GF(p^m) with an explicit modulus (kind='galois')."""
    model_config = ConfigDict(frozen=True)

    kind: Literal["modular", "galois"]
    n: int | None = None
    p: int | None = None
    m: int | None = None
    modulus: tuple[int, ...] | None = None  # low degree first, monic, length m+1

    @model_validator(mode="after")
    def check_shape(self):
        if self.kind == "modular":
            if self.n is None:
                raise ValueError("modular ring needs n")
        else:
            if self.p is None or self.m is None or self.modulus is None:
                raise ValueError("galois ring needs p, m and modulus")
            if len(self.modulus) != self.m + 1 or self.modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree m")
        return self

    @property
    def order(self) -> int:
        return self.n if self.kind == "modular" else self.p ** self.m


class AxiomViolation(BaseModel):
    axiom: Literal["i", "ii", "iii"]
    witness: tuple[int, ...]  # 1-based indices
    message: str = ""


class ValidationReport(BaseModel):
    order: int
    violations: list[AxiomViolation] = Field(default_factory=list)

    @property
    def is_quandle(self) -> bool:
        return not self.violations


class IsometryReport(BaseModel):
    isometric: bool
    witness: list[list[int]] | None = None  # P with P*A*P^T = A'
    method: Literal["identical", "dimension-2", "exhaustive"] = "exhaustive"
    candidates_checked: int = 0


class GaussToken(BaseModel):
    model_config = ConfigDict(frozen=True)

    over: bool
    crossing: int = Field(..., ge=1)
    sign: Literal[1, -1]


class GaussCode(BaseModel):
    model_config = ConfigDict(frozen=True)

    components: tuple[tuple[GaussToken, ...], ...]

    @property
    def crossings(self) -> list[int]:
        return sorted({tok.crossing for comp in self.components for tok in comp})


class Relation(BaseModel):
    """a ▷ b = c when sign is +1, a ▷⁻¹ b = c when sign is -1 (generators 1-based)."""
    model_config = ConfigDict(frozen=True)

    a: int
    b: int
    c: int
    sign: Literal[1, -1]
    crossing: int


class Presentation(BaseModel):
    model_config = ConfigDict(frozen=True)

    generators: int
    relations: tuple[Relation, ...] = ()


class InvariantResult(BaseModel):
    link: str
    target: str
    count: int
    phi_e: str
    phi_sqp: str | None = None


class ConjecturePair(BaseModel):
    alpha: int
    beta: int
    quandle_isomorphic: bool
    isometric: bool


class ConjectureRow(BaseModel):
    n: int
    dim: int
    quandle_classes: list[list[int]]
    isometry_classes: list[list[int]]
    coincide: bool
    counterexamples: list[ConjecturePair] = Field(default_factory=list)


class ConjectureReport(BaseModel):
    rows: list[ConjectureRow]

    @property
    def all_coincide(self) -> bool:
        return all(row.coincide for row in self.rows)


class ErratumEntry(BaseModel):
    row: int
    column: int
    printed: int
    computed: int
