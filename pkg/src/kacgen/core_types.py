"""Exact combinatorial and arithmetic value types.

Everything here is immutable and uses Python integers, so values can be
shared freely between threads and processes.
"""

from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from kacgen.errors import (
    InadmissiblePartition,
    NonPolynomialQuotient,
    RootNotUnity,
    UnsupportedType,
)

# ---------------------------------------------------------------------------
# Partitions and type tags
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing tuple of positive integers."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        parts = tuple(int(x) for x in self.parts)
        object.__setattr__(self, "parts", parts)
        if not parts:
            raise ValueError("a partition needs at least one part")
        if any(x < 1 for x in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be weakly decreasing: {parts}")

    @classmethod
    def of(cls, parts: Iterable[int]) -> "Partition":
        """Build a partition from parts in any order."""
        return cls(tuple(sorted((int(x) for x in parts), reverse=True)))

    @property
    def total(self) -> int:
        return sum(self.parts)

    @property
    def mu(self) -> int:
        return len(self.parts)

    @property
    def ascending(self) -> tuple[int, ...]:
        return tuple(reversed(self.parts))

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


def prefix_sums(p: Partition) -> tuple[int, ...]:
    """Offsets of each part in the ascending view: (0, l1, l1+l2, ...)."""
    out = []
    acc = 0
    for part in p.ascending:
        out.append(acc)
        acc += part
    return tuple(out)


def lcm_parts(p: Partition) -> int:
    return math.lcm(*p.parts)


class Family(enum.Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"
    TWO_A = "2A"
    TWO_D = "2D"

    @property
    def twisted(self) -> bool:
        return self in (Family.TWO_A, Family.TWO_D)


_FAMILY_ALIASES = {
    "A": Family.A,
    "B": Family.B,
    "C": Family.C,
    "D": Family.D,
    "2A": Family.TWO_A,
    "TWOA": Family.TWO_A,
    "2D": Family.TWO_D,
    "TWOD": Family.TWO_D,
}

# Smallest rank at which the group-level constructions make sense, and the
# (sometimes larger) smallest rank at which the affine diagram has the generic
# shape.
_MIN_RANK = {
    Family.A: 2,
    Family.B: 2,
    Family.C: 2,
    Family.D: 3,
    Family.TWO_A: 3,
    Family.TWO_D: 2,
}
_MIN_DIAGRAM_RANK = {**_MIN_RANK, Family.B: 3, Family.D: 4}


def parse_family(name: str) -> Family:
    try:
        return _FAMILY_ALIASES[name.strip().upper()]
    except KeyError:
        raise UnsupportedType(f"unsupported type {name!r}; expected one of A, B, C, D, 2A, 2D") from None


@dataclass(frozen=True)
class TypeTag:
    """A classical family together with its rank parameter."""

    family: Family
    rank: int

    def __post_init__(self) -> None:
        if not isinstance(self.family, Family):
            object.__setattr__(self, "family", parse_family(str(self.family)))
        if self.rank < _MIN_RANK[self.family]:
            raise UnsupportedType(
                f"type {self.family.value} needs rank >= {_MIN_RANK[self.family]}, got {self.rank}"
            )

    @classmethod
    def parse(cls, name: str, rank: int) -> "TypeTag":
        return cls(parse_family(name), int(rank))

    @property
    def twist_order(self) -> int:
        return 2 if self.family.twisted else 1

    @property
    def twisted(self) -> bool:
        return self.family.twisted

    @property
    def partition_total(self) -> int:
        """The integer that admissible partitions sum to."""
        return self.rank + 1 if self.family is Family.TWO_D else self.rank

    @property
    def has_diagram(self) -> bool:
        return self.rank >= _MIN_DIAGRAM_RANK[self.family]

    def require_diagram(self) -> None:
        if not self.has_diagram:
            need = _MIN_DIAGRAM_RANK[self.family]
            raise UnsupportedType(f"Kac diagrams for type {self.family.value} need rank >= {need}")

    def admissibility_violation(self, p: Partition) -> str | None:
        """Describe why ``p`` is inadmissible, or return None."""
        n = self.partition_total
        if p.total != n:
            return f"parts must sum to {n}, got {p.total}"
        fam = self.family
        if fam is Family.A and p.parts != (self.rank,):
            return f"type A admits only the single-part partition ({self.rank})"
        if fam is Family.D and p.mu % 2:
            return f"type D needs an even number of parts, got {p.mu}"
        if fam is Family.TWO_A and any(x % 2 == 0 for x in p.parts):
            return "type 2A needs every part odd"
        if fam is Family.TWO_D and p.mu % 2 == 0:
            return f"type 2D needs an odd number of parts, got {p.mu}"
        return None

    def check_partition(self, p: Partition) -> None:
        reason = self.admissibility_violation(p)
        if reason is not None:
            raise InadmissiblePartition(f"{p} for {self}: {reason}")

    def __str__(self) -> str:
        return f"{self.family.value}{self.rank}"


def min_rank(family: Family, *, diagrams: bool = False) -> int:
    return (_MIN_DIAGRAM_RANK if diagrams else _MIN_RANK)[family]


def partitions(n: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """All partitions of ``n`` in lexicographically descending order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def admissible_partitions(tag: TypeTag) -> Iterator[Partition]:
    for parts in partitions(tag.partition_total):
        p = Partition(parts)
        if tag.admissibility_violation(p) is None:
            yield p


# ---------------------------------------------------------------------------
# Gaussian integers
# ---------------------------------------------------------------------------


class GaussInt:
    """Element re + im*i of Z[i]."""

    __slots__ = ("re", "im")

    def __init__(self, re: int = 0, im: int = 0) -> None:
        self.re = int(re)
        self.im = int(im)

    @staticmethod
    def coerce(x: "GaussInt | int") -> "GaussInt":
        return x if isinstance(x, GaussInt) else GaussInt(x, 0)

    def __add__(self, other: "GaussInt | int") -> "GaussInt":
        o = GaussInt.coerce(other)
        return GaussInt(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: "GaussInt | int") -> "GaussInt":
        o = GaussInt.coerce(other)
        return GaussInt(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: "GaussInt | int") -> "GaussInt":
        return GaussInt.coerce(other) - self

    def __mul__(self, other: "GaussInt | int") -> "GaussInt":
        if isinstance(other, int):
            return GaussInt(self.re * other, self.im * other)
        return GaussInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __neg__(self) -> "GaussInt":
        return GaussInt(-self.re, -self.im)

    def __bool__(self) -> bool:
        return bool(self.re or self.im)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.im == 0 and self.re == other
        if isinstance(other, GaussInt):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.re, self.im)) if self.im else hash(self.re)

    def conjugate(self) -> "GaussInt":
        return GaussInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def is_unit(self) -> bool:
        return self.norm() == 1

    def unit_inverse(self) -> "GaussInt":
        if not self.is_unit():
            raise ZeroDivisionError(f"{self} is not a unit")
        return self.conjugate()

    def __repr__(self) -> str:
        if not self.im:
            return f"{self.re}"
        if not self.re:
            return f"{self.im}i"
        return f"({self.re}{self.im:+d}i)"


GZERO = GaussInt(0, 0)
GONE = GaussInt(1, 0)
GI = GaussInt(0, 1)


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntPoly:
    """Dense integer polynomial, coefficients in ascending degree."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _trim(int(c) for c in self.coeffs))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPoly":
        return cls((0,) * k + (c,))

    @classmethod
    def binomial(cls, k: int, sign: int) -> "IntPoly":
        """t^k - sign."""
        coeffs = [0] * (k + 1)
        coeffs[0] -= sign
        coeffs[k] += 1
        return cls(tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __add__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPoly(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-x for x in self.coeffs))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        if not self.coeffs or not other.coeffs:
            return IntPoly(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(tuple(out))

    def divmod_monic(self, divisor: "IntPoly") -> tuple["IntPoly", "IntPoly"]:
        if not divisor.is_monic():
            raise ValueError("divisor must be monic")
        rem = list(self.coeffs)
        d = divisor.degree
        if len(rem) - 1 < d:
            return IntPoly(()), self
        quot = [0] * (len(rem) - d)
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            if c:
                quot[i - d] = c
                for j, b in enumerate(divisor.coeffs):
                    rem[i - d + j] -= c * b
        return IntPoly(tuple(quot)), IntPoly(tuple(rem[:d]))

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                var = "t" if k == 1 else f"t^{k}"
                body = var if mag == 1 else f"{mag}*{var}"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def _times_binomial(coeffs: list[int], k: int, sign: int) -> list[int]:
    """Multiply by t^k - sign."""
    out = [0] * (len(coeffs) + k)
    for i, c in enumerate(coeffs):
        out[i + k] += c
        out[i] -= sign * c
    return out


def _divide_binomial(coeffs: list[int], k: int, sign: int) -> list[int]:
    """Exact division by t^k - sign; raises on a nonzero remainder."""
    n = len(coeffs) - 1
    if n < k:
        raise NonPolynomialQuotient(f"degree {n} polynomial is not divisible by t^{k} - ({sign})")
    rem = list(coeffs)
    quot = [0] * (n - k + 1)
    for i in range(n, k - 1, -1):
        c = rem[i]
        quot[i - k] = c
        rem[i] = 0
        rem[i - k] += sign * c
    if any(rem[:k]):
        raise NonPolynomialQuotient(f"t^{k} - ({sign}) does not divide exactly")
    return quot


@dataclass(frozen=True)
class FactoredPoly:
    """Product of (t^k - sign)^mult factors; multiplicities may be negative."""

    factors: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        merged: Counter[tuple[int, int]] = Counter()
        for k, sign, mult in self.factors:
            if k < 1 or sign not in (1, -1):
                raise ValueError(f"bad factor {(k, sign, mult)}")
            merged[(int(k), int(sign))] += int(mult)
        canon = tuple(
            (k, s, mult)
            for (k, s), mult in sorted(merged.items(), key=lambda kv: (-kv[0][0], -kv[0][1]))
            if mult
        )
        object.__setattr__(self, "factors", canon)

    @classmethod
    def of(cls, *factors: tuple[int, int, int]) -> "FactoredPoly":
        return cls(tuple(factors))

    def __mul__(self, other: "FactoredPoly") -> "FactoredPoly":
        return FactoredPoly(self.factors + other.factors)

    @property
    def degree(self) -> int:
        return sum(k * mult for k, _, mult in self.factors)

    def evaluate(self, x: int) -> Fraction:
        """Product of factor values; undefined where a cancelled factor vanishes."""
        acc = Fraction(1)
        for k, sign, mult in self.factors:
            acc *= Fraction(x**k - sign) ** mult
        return acc

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        bits = []
        for k, sign, mult in self.factors:
            var = "t" if k == 1 else f"t^{k}"
            base = f"({var} {'-' if sign == 1 else '+'} 1)"
            bits.append(base if mult == 1 else f"{base}^{mult}")
        return "*".join(bits)


def expand(f: FactoredPoly) -> IntPoly:
    """Exact dense expansion; negative multiplicities are divided out last."""
    coeffs = [1]
    for k, sign, mult in f.factors:
        for _ in range(max(mult, 0)):
            coeffs = _times_binomial(coeffs, k, sign)
    for k, sign, mult in f.factors:
        for _ in range(max(-mult, 0)):
            coeffs = _divide_binomial(coeffs, k, sign)
    return IntPoly(tuple(coeffs))


# ---------------------------------------------------------------------------
# Roots of unity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RootMultiset:
    """Multiset of roots xi^e of a fixed primitive m-th root of unity xi."""

    modulus: int
    counts: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        merged: Counter[int] = Counter()
        for e, c in self.counts:
            merged[int(e) % self.modulus] += int(c)
        if any(c < 0 for c in merged.values()):
            raise NonPolynomialQuotient("negative root multiplicity")
        object.__setattr__(self, "counts", tuple(sorted((e, c) for e, c in merged.items() if c)))

    @classmethod
    def from_mapping(cls, modulus: int, counts: Mapping[int, int]) -> "RootMultiset":
        return cls(modulus, tuple(counts.items()))

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)

    @property
    def degree(self) -> int:
        return sum(c for _, c in self.counts)

    def to_intpoly(self) -> IntPoly:
        """Reconstruct the integer polynomial, one cyclotomic factor at a time."""
        m = self.modulus
        by_order: dict[int, dict[int, int]] = {}
        for e, c in self.counts:
            d = m // math.gcd(e, m)
            by_order.setdefault(d, {})[e] = c
        poly = IntPoly((1,))
        for d, roots in sorted(by_order.items()):
            step = m // d
            prim = [step * j for j in range(d) if math.gcd(j, d) == 1]
            mults = {roots.get(e, 0) for e in prim}
            if len(mults) != 1:
                raise ValueError(f"primitive {d}-th roots have unequal multiplicities; not over Z")
            for _ in range(mults.pop()):
                poly = poly * cyclotomic(d)
        return poly


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> IntPoly:
    """The d-th cyclotomic polynomial by exact division of t^d - 1."""
    coeffs = IntPoly.binomial(d, 1)
    for e in range(1, d):
        if d % e == 0:
            coeffs, rem = coeffs.divmod_monic(cyclotomic(e))
            assert not rem.coeffs
    return coeffs


def _binomial_roots(k: int, sign: int, m: int) -> list[int]:
    if sign == 1:
        if m % k:
            raise RootNotUnity(f"roots of t^{k} - 1 are not all {m}-th roots of unity")
        step = m // k
        return [j * step for j in range(k)]
    if m % (2 * k):
        raise RootNotUnity(f"roots of t^{k} + 1 are not all {m}-th roots of unity")
    step = m // (2 * k)
    return [(2 * j + 1) * step for j in range(k)]


def roots_mod(f: FactoredPoly, m: int) -> RootMultiset:
    counts: Counter[int] = Counter()
    for k, sign, mult in f.factors:
        for e in _binomial_roots(k, sign, m):
            counts[e] += mult
    return RootMultiset(m, tuple(counts.items()))


def intpoly_roots_mod(poly: IntPoly, m: int) -> RootMultiset:
    """Roots of an integer polynomial by trial division by cyclotomic factors."""
    counts: Counter[int] = Counter()
    rest = poly
    for d in sorted((d for d in range(1, m + 1) if m % d == 0), reverse=True):
        phi = cyclotomic(d)
        while rest.degree >= phi.degree:
            q, r = rest.divmod_monic(phi)
            if r.coeffs:
                break
            rest = q
            step = m // d
            for j in range(d):
                if math.gcd(j, d) == 1:
                    counts[j * step] += 1
    if rest.coeffs != (1,):
        raise RootNotUnity(f"{poly} has roots that are not {m}-th roots of unity")
    return RootMultiset(m, tuple(counts.items()))
