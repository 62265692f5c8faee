"""Sparse arithmetic in Z[x]/(x^M - 1), used as a stand-in for Z[xi_M]."""

from __future__ import annotations

from kacgen.core_types import IntPoly, cyclotomic


class CycloInt:
    """Integer combination of powers of a formal M-th root of unity."""

    __slots__ = ("modulus", "terms")

    def __init__(self, modulus: int, terms: dict[int, int] | None = None) -> None:
        self.modulus = modulus
        self.terms = {e % modulus: c for e, c in (terms or {}).items() if c}

    @classmethod
    def unit(cls, modulus: int, exponent: int, sign: int = 1) -> "CycloInt":
        return cls(modulus, {exponent % modulus: sign})

    def _new(self, terms: dict[int, int]) -> "CycloInt":
        out = CycloInt.__new__(CycloInt)
        out.modulus = self.modulus
        out.terms = {e: c for e, c in terms.items() if c}
        return out

    def __add__(self, other: "CycloInt") -> "CycloInt":
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return self._new(terms)

    def __neg__(self) -> "CycloInt":
        return self._new({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "CycloInt") -> "CycloInt":
        return self + (-other)

    def __mul__(self, other: "CycloInt") -> "CycloInt":
        m = self.modulus
        terms: dict[int, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1 + e2) % m
                terms[e] = terms.get(e, 0) + c1 * c2
        return self._new(terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def reduce(self) -> IntPoly:
        """Canonical representative modulo the M-th cyclotomic polynomial."""
        dense = [0] * self.modulus
        for e, c in self.terms.items():
            dense[e] += c
        _, rem = IntPoly(tuple(dense)).divmod_monic(cyclotomic(self.modulus))
        return rem

    def as_integer(self) -> int | None:
        """The element as an integer if it lies in Z, else None."""
        rem = self.reduce().coeffs
        if len(rem) <= 1:
            return rem[0] if rem else 0
        return None

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*x^{e}" for e, c in sorted(self.terms.items())) or "0"
        return f"CycloInt[{self.modulus}]({body})"
