"""Sparse multivariate integer polynomials in named formal variables."""
import json
from typing import Iterable


class InvariantPolynomial:
    """
    Terms are stored as {exponent tuple: coefficient}, zero coefficients never kept.

    Canonical order is descending total degree, then lexicographically descending
    exponent tuples; both the text form and the JSON form follow it. Polynomials
    built with ascending=True list their terms in exactly the reverse order (the
    knot invariants are printed lowest degree first, e.g. `qz + 15qz^4`).
    Equality ignores the ordering flag.
    """

    def __init__(
        self,
        variables: Iterable[str],
        terms: dict[tuple[int, ...], int] | None = None,
        ascending: bool = False,
    ):
        self.variables = tuple(variables)
        self.ascending = ascending
        self.terms: dict[tuple[int, ...], int] = {}
        for exponents, coef in (terms or {}).items():
            self.add_term(exponents, coef)

    def add_term(self, exponents, coef: int) -> None:
        exponents = tuple(int(e) for e in exponents)
        if len(exponents) != len(self.variables):
            raise ValueError(f"Expected {len(self.variables)} exponents, got {len(exponents)}")
        if any(e < 0 for e in exponents):
            raise ValueError("Exponents must be non-negative")
        if coef == 0:
            return
        total = self.terms.get(exponents, 0) + coef
        if total:
            self.terms[exponents] = total
        else:
            del self.terms[exponents]

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted(
            self.terms.items(),
            key=lambda kv: (sum(kv[0]), kv[0]),
            reverse=not self.ascending,
        )

    def specialize(self, **values: int):
        """Substitute integers for some variables; returns an int when none remain."""
        unknown = set(values) - set(self.variables)
        if unknown:
            raise ValueError(f"Unknown variables: {sorted(unknown)}")
        keep = [i for i, v in enumerate(self.variables) if v not in values]
        result = InvariantPolynomial([self.variables[i] for i in keep], ascending=self.ascending)
        for exponents, coef in self.terms.items():
            factor = coef
            for i, v in enumerate(self.variables):
                if v in values:
                    factor *= values[v] ** exponents[i]
            result.add_term(tuple(exponents[i] for i in keep), factor)
        if not keep:
            return result.terms.get((), 0)
        return result

    def __add__(self, other: "InvariantPolynomial") -> "InvariantPolynomial":
        if self.variables != other.variables:
            raise ValueError("Cannot add polynomials in different variables")
        result = InvariantPolynomial(self.variables, self.terms, ascending=self.ascending)
        for exponents, coef in other.terms.items():
            result.add_term(exponents, coef)
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, InvariantPolynomial)
            and self.variables == other.variables
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.variables, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for exponents, coef in self.sorted_terms():
            monomial = "".join(
                var if e == 1 else f"{var}^{e}"
                for var, e in zip(self.variables, exponents)
                if e
            )
            magnitude = abs(coef)
            body = monomial if magnitude == 1 and monomial else f"{magnitude}{monomial}"
            if not pieces:
                pieces.append(("-" if coef < 0 else "") + body)
            else:
                pieces.append(("- " if coef < 0 else "+ ") + body)
        return " ".join(pieces)

    def to_dict(self) -> dict:
        return {
            "vars": list(self.variables),
            "terms": [{"exp": list(e), "coef": c} for e, c in self.sorted_terms()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict, ascending: bool = False) -> "InvariantPolynomial":
        poly = cls(data["vars"], ascending=ascending)
        for term in data["terms"]:
            poly.add_term(tuple(term["exp"]), term["coef"])
        return poly

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"InvariantPolynomial({self.to_text()!r})"
