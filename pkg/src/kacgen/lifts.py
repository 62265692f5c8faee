"""Explicit generator matrices and lifts of elliptic classes.

Matrices are indexed from 1 in the formulas below, matching the usual
entrywise descriptions; the stored tuples are 0-indexed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from kacgen.core_types import (
    GI,
    GONE,
    GZERO,
    Family,
    GaussInt,
    Partition,
    TypeTag,
    prefix_sums,
)
from kacgen.errors import IndexOutOfRange, OrderCapExceeded, UnsupportedType
from kacgen.linalg import charpoly_ring

Entries = tuple[tuple[GaussInt, ...], ...]


@dataclass(frozen=True)
class LiftMatrix:
    """Square matrix over the Gaussian integers."""

    entries: Entries
    tag: TypeTag | None = field(default=None, compare=False)
    partition: Partition | None = field(default=None, compare=False)

    @property
    def size(self) -> int:
        return len(self.entries)

    @classmethod
    def identity(cls, n: int, tag: TypeTag | None = None) -> "LiftMatrix":
        return cls.from_entries(n, {}, tag=tag)

    @classmethod
    def from_entries(
        cls,
        n: int,
        overrides: Mapping[tuple[int, int], int | GaussInt],
        *,
        base_identity: bool = True,
        tag: TypeTag | None = None,
    ) -> "LiftMatrix":
        """Identity (or zero) matrix with 1-indexed entries overridden."""
        rows = [[GZERO] * n for _ in range(n)]
        if base_identity:
            for i in range(n):
                rows[i][i] = GONE
        for (i, j), v in overrides.items():
            rows[i - 1][j - 1] = GaussInt.coerce(v)
        return cls(tuple(tuple(r) for r in rows), tag)

    def _sparse(self) -> list[list[tuple[int, GaussInt]]]:
        return [[(j, v) for j, v in enumerate(row) if v] for row in self.entries]

    def __matmul__(self, other: "LiftMatrix") -> "LiftMatrix":
        n = self.size
        right = other._sparse()
        out = []
        for row in self._sparse():
            acc = [GZERO] * n
            for k, a in row:
                for j, b in right[k]:
                    acc[j] = acc[j] + a * b
            out.append(tuple(acc))
        return LiftMatrix(tuple(out), self.tag or other.tag)

    def transpose(self) -> "LiftMatrix":
        return LiftMatrix(tuple(zip(*self.entries)), self.tag)

    def scaled(self, c: int | GaussInt) -> "LiftMatrix":
        return LiftMatrix(tuple(tuple(x * c for x in row) for row in self.entries), self.tag)

    def is_identity(self) -> bool:
        return all(
            (v == 1) if i == j else not v
            for i, row in enumerate(self.entries)
            for j, v in enumerate(row)
        )

    def monomial_data(self) -> tuple[tuple[int, ...], tuple[GaussInt, ...]] | None:
        """(column -> row map, entry per column) if monomial with unit entries."""
        n = self.size
        rows_of_col = [-1] * n
        units: list[GaussInt] = [GZERO] * n
        for i, row in enumerate(self.entries):
            nz = [(j, v) for j, v in enumerate(row) if v]
            if len(nz) != 1:
                return None
            j, v = nz[0]
            if rows_of_col[j] != -1 or not v.is_unit():
                return None
            rows_of_col[j] = i
            units[j] = v
        return tuple(rows_of_col), tuple(units)

    def is_monomial(self) -> bool:
        return self.monomial_data() is not None

    def inverse(self) -> "LiftMatrix":
        """Inverse of a monomial matrix with unit entries."""
        data = self.monomial_data()
        if data is None:
            raise ValueError("only monomial matrices with unit entries are inverted here")
        rows_of_col, units = data
        n = self.size
        out = [[GZERO] * n for _ in range(n)]
        for j, i in enumerate(rows_of_col):
            out[j][i] = units[j].unit_inverse()
        return LiftMatrix(tuple(tuple(r) for r in out), self.tag)

    def det(self) -> GaussInt:
        data = self.monomial_data()
        if data is not None:
            rows_of_col, units = data
            sign = _perm_sign(rows_of_col)
            acc = GaussInt(sign)
            for u in units:
                acc = acc * u
            return acc
        coeffs = charpoly_ring([list(r) for r in self.entries], GZERO, GONE)
        return coeffs[0] * ((-1) ** self.size)

    def is_real(self) -> bool:
        return all(not x.im for row in self.entries for x in row)

    def int_rows(self) -> list[list[int]]:
        if not self.is_real():
            raise ValueError("matrix has imaginary entries")
        return [[x.re for x in row] for row in self.entries]

    def __str__(self) -> str:
        return "\n".join(" ".join(f"{x!r:>4}" for x in row) for row in self.entries)


def _perm_sign(images: Iterable[int]) -> int:
    images = list(images)
    seen = [False] * len(images)
    sign = 1
    for start in range(len(images)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = images[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def product(mats: Iterable[LiftMatrix], n: int, tag: TypeTag | None = None) -> LiftMatrix:
    """Left-to-right product; the empty product is the identity."""
    acc = LiftMatrix.identity(n, tag)
    for m in mats:
        acc = acc @ m
    return LiftMatrix(acc.entries, tag)


@dataclass(frozen=True)
class TwistedElement:
    """A lift, flagged when it stands for g semidirect theta."""

    matrix: LiftMatrix
    twisted: bool
    tag: TypeTag

    def __post_init__(self) -> None:
        if self.twisted != self.tag.twisted:
            raise ValueError(f"twisted flag {self.twisted} does not match {self.tag}")


# ---------------------------------------------------------------------------
# Standard representation data
# ---------------------------------------------------------------------------


def matrix_size(tag: TypeTag) -> int:
    ell = tag.rank
    return {
        Family.A: ell,
        Family.TWO_A: ell,
        Family.B: 2 * ell + 1,
        Family.C: 2 * ell,
        Family.D: 2 * ell,
        Family.TWO_D: 2 * ell + 2,
    }[tag.family]


def antidiagonal(n: int) -> LiftMatrix:
    return LiftMatrix.from_entries(n, {(i, n + 1 - i): 1 for i in range(1, n + 1)}, base_identity=False)


def symplectic_form(ell: int) -> LiftMatrix:
    """Antidiagonal form with +1 in the first ell rows and -1 below."""
    n = 2 * ell
    return LiftMatrix.from_entries(
        n,
        {(i, n + 1 - i): (1 if n + 1 - i > ell else -1) for i in range(1, n + 1)},
        base_identity=False,
    )


def _swaps(n: int, pairs: Iterable[tuple[int, int]]) -> LiftMatrix:
    over: dict[tuple[int, int], int] = {}
    for a, b in pairs:
        over.update({(a, a): 0, (b, b): 0, (a, b): 1, (b, a): 1})
    return LiftMatrix.from_entries(n, over)


def _check_index(k: int | None, lo: int, hi: int, what: str, tag: TypeTag) -> int:
    if k is None or not lo <= k <= hi:
        raise IndexOutOfRange(f"{what} needs {lo} <= k <= {hi} for {tag}, got {k}")
    return k


def _twoA_J(ell: int) -> LiftMatrix:
    if ell % 2:
        return antidiagonal(ell)
    half = ell // 2
    # K times Diag(i,...,i,-i,...,-i): column j of K scaled by the j-th diagonal entry.
    return LiftMatrix.from_entries(
        ell,
        {(ell + 1 - j, j): (GI if j <= half else -GI) for j in range(1, ell + 1)},
        base_identity=False,
    )


def generator(tag: TypeTag, kind: str, k: int | None = None) -> LiftMatrix:
    """One of the named generators s_k, t_k, t_ell, s_tilde_k, J for the tag."""
    fam, ell, n = tag.family, tag.rank, matrix_size(tag)

    def s_signed(k: int) -> LiftMatrix:
        return LiftMatrix.from_entries(n, {(k, k): 0, (k + 1, k + 1): 0, (k, k + 1): 1, (k + 1, k): -1})

    if kind == "s_k":
        if fam in (Family.A, Family.TWO_A):
            return _tagged(s_signed(_check_index(k, 1, ell - 1, kind, tag)), tag)
        if fam is Family.B:
            k = _check_index(k, 1, ell - 1, kind, tag)
            return _tagged(_swaps(n, [(k, k + 1), (2 * ell - k + 1, 2 * ell - k + 2)]), tag)
        if fam in (Family.C, Family.D):
            k = _check_index(k, 1, ell - 1, kind, tag)
            return _tagged(_swaps(n, [(k, k + 1), (2 * ell - k, 2 * ell - k + 1)]), tag)
        k = _check_index(k, 1, ell, kind, tag)
        return _tagged(_swaps(n, [(k, k + 1), (2 * ell - k + 2, 2 * ell - k + 3)]), tag)

    if kind == "t_ell":
        if fam is Family.B:
            return _tagged(
                LiftMatrix.from_entries(
                    n,
                    {(ell, ell): 0, (ell + 2, ell + 2): 0, (ell, ell + 2): 1, (ell + 2, ell): 1, (ell + 1, ell + 1): -1},
                ),
                tag,
            )
        if fam is Family.C:
            return _tagged(
                LiftMatrix.from_entries(n, {(ell, ell): 0, (ell + 1, ell + 1): 0, (ell, ell + 1): 1, (ell + 1, ell): -1}),
                tag,
            )
        if fam is Family.D:
            return generator(tag, "t_k", ell)
        raise UnsupportedType(f"t_ell is not defined for {tag}")

    if kind == "t_k":
        if fam in (Family.B, Family.C):
            k = _check_index(k, 1, ell, kind, tag)
            left = [generator(tag, "s_k", j) for j in range(k, ell)]
            mats = left + [generator(tag, "t_ell")] + left[::-1]
            return product(mats, n, tag)
        if fam is Family.D:
            k = _check_index(k, 1, ell, kind, tag)
            return _tagged(_swaps(n, [(k, 2 * ell - k + 1)]), tag)
        if fam is Family.TWO_D:
            k = _check_index(k, 1, ell + 1, kind, tag)
            left = [generator(tag, "s_k", j) for j in range(k, ell + 1)]
            mats = left + [generator(tag, "J")] + left[::-1]
            return product(mats, n, tag)
        raise UnsupportedType(f"t_k is not defined for {tag}")

    if kind == "s_tilde_k":
        if fam is not Family.TWO_A:
            raise UnsupportedType(f"s_tilde_k is only defined for type 2A, not {tag}")
        k = _check_index(k, 1, ell - 1, kind, tag)
        return _tagged(_swaps(n, [(k, k + 1)]), tag)

    if kind == "J":
        if fam is Family.TWO_A:
            return _tagged(_twoA_J(ell), tag)
        if fam is Family.TWO_D:
            return _tagged(_swaps(n, [(ell + 1, ell + 2)]), tag)
        raise UnsupportedType(f"J is only defined for twisted types, not {tag}")

    raise UnsupportedType(f"unknown generator kind {kind!r}")


def _tagged(m: LiftMatrix, tag: TypeTag) -> LiftMatrix:
    return LiftMatrix(m.entries, tag)


# ---------------------------------------------------------------------------
# Lifts
# ---------------------------------------------------------------------------


def _block_factors(tag: TypeTag, p: Partition, t_kind: str) -> list[list[LiftMatrix]]:
    """Per part: s_{l'+1} ... s_{l'+l_nu - 1} followed by t_{l'+l_nu}."""
    blocks = []
    for offset, part in zip(prefix_sums(p), p.ascending):
        mats = [generator(tag, "s_k", offset + j) for j in range(1, part)]
        mats.append(generator(tag, t_kind, offset + part))
        blocks.append(mats)
    return blocks


def _twoA_first_block(tag: TypeTag, first: int) -> list[LiftMatrix]:
    ell, n = tag.rank, tag.rank
    if ell % 4 in (0, 1):
        return [generator(tag, "s_k", j) for j in range(1, first)]
    if first > 1:
        mats = [generator(tag, "s_k", j) for j in range(1, first - 1)]
        mats.append(generator(tag, "s_tilde_k", first - 1))
        return mats
    return [LiftMatrix.from_entries(n, {(1, 1): -1}, tag=tag)]


def lift_tilde(tag: TypeTag, p: Partition) -> LiftMatrix:
    """The product of blocks before the final J for the twisted types."""
    tag.check_partition(p)
    n = matrix_size(tag)
    if tag.family is Family.TWO_A:
        mats = _twoA_first_block(tag, p.ascending[0])
        for offset, part in list(zip(prefix_sums(p), p.ascending))[1:]:
            mats += [generator(tag, "s_k", offset + j) for j in range(1, part)]
    elif tag.family is Family.TWO_D:
        mats = [m for block in _block_factors(tag, p, "t_k") for m in block]
    else:
        raise UnsupportedType(f"{tag} is not twisted")
    out = product(mats, n, tag)
    return LiftMatrix(out.entries, tag, p)


def lift(tag: TypeTag, p: Partition) -> TwistedElement:
    """The monomial lift of the elliptic class indexed by ``p``."""
    tag.check_partition(p)
    n = matrix_size(tag)
    fam = tag.family
    if fam is Family.A:
        mats = [generator(tag, "s_k", j) for j in range(1, tag.rank)]
    elif fam in (Family.B, Family.C, Family.D):
        mats = [m for block in _block_factors(tag, p, "t_k") for m in block]
    else:
        tilde = lift_tilde(tag, p)
        mats = [tilde, generator(tag, "J")]
    out = product(mats, n, tag)
    return TwistedElement(LiftMatrix(out.entries, tag, p), tag.twisted, tag)


# ---------------------------------------------------------------------------
# Group structure
# ---------------------------------------------------------------------------


def apply_theta(tag: TypeTag, g: LiftMatrix) -> LiftMatrix:
    """The pinned involution on the group, in the standard realization."""
    J = generator(tag, "J") if tag.twisted else None
    if tag.family is Family.TWO_A:
        return LiftMatrix((J @ g.inverse().transpose() @ J.inverse()).entries, g.tag, g.partition)
    if tag.family is Family.TWO_D:
        return LiftMatrix((J @ g @ J).entries, g.tag, g.partition)
    raise UnsupportedType(f"theta is trivial on untwisted type {tag}")


def twisted_product(tag: TypeTag, a: TwistedElement, b: TwistedElement) -> TwistedElement:
    """(g, x)(h, y) = (g theta^x(h), x + y) in G semidirect <theta>."""
    h = apply_theta(tag, b.matrix) if a.twisted else b.matrix
    parity = a.twisted != b.twisted
    m = a.matrix @ h
    # Parity may be even for a twisted tag; bypass the tag consistency check.
    out = object.__new__(TwistedElement)
    object.__setattr__(out, "matrix", m)
    object.__setattr__(out, "twisted", parity)
    object.__setattr__(out, "tag", tag)
    return out


def _cycle_lcm(images: tuple[int, ...]) -> int:
    seen = [False] * len(images)
    acc = 1
    for start in range(len(images)):
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = images[j]
            length += 1
        if length:
            acc = math.lcm(acc, length)
    return acc


def _is_scalar(g: LiftMatrix) -> bool:
    first = g.entries[0][0]
    if not first:
        return False
    return all(
        (x == first) if i == j else not x for i, row in enumerate(g.entries) for j, x in enumerate(row)
    )


def element_order(e: TwistedElement, *, modulo_centre: bool = False) -> int:
    """Least k >= 1 with e^k = 1, by repeated exact multiplication.

    With ``modulo_centre`` the target is any scalar matrix instead, which is
    the order of the induced automorphism of the Lie algebra. The cap is
    4*N*m_max with m_max = 2*4*lcm(cycle lengths), a generous a priori bound
    for a monomial matrix with fourth-root-of-unity entries.
    """
    data = e.matrix.monomial_data()
    if data is None:
        raise ValueError("element_order needs a monomial matrix")
    n = e.matrix.size
    m_max = 8 * _cycle_lcm(data[0])
    cap = 4 * n * m_max
    cur = e
    for k in range(1, cap + 1):
        if not cur.twisted and (_is_scalar(cur.matrix) if modulo_centre else cur.matrix.is_identity()):
            return k
        cur = twisted_product(e.tag, cur, e) if e.twisted else TwistedElement(cur.matrix @ e.matrix, False, e.tag)
    raise OrderCapExceeded(f"no return to the identity within {cap} steps")


def membership_violation(tag: TypeTag, g: LiftMatrix) -> str | None:
    """Why ``g`` is not in the standard realization of the group, or None."""
    if g.size != matrix_size(tag):
        return f"size {g.size} != {matrix_size(tag)}"
    if not g.is_monomial():
        return "not monomial with unit entries"
    fam = tag.family
    if fam is Family.C:
        J = symplectic_form(tag.rank)
        if g.transpose() @ J @ g != J:
            return "g^T J g != J"
        return None
    if fam in (Family.B, Family.D, Family.TWO_D):
        K = antidiagonal(g.size)
        if g.transpose() @ K @ g != K:
            return "g^T K g != K"
    if g.det() != 1:
        return f"det = {g.det()!r}"
    return None
