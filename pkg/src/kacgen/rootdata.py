"""Affine Dynkin diagrams, marks, orbit sizes and coweights for the classical families."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from kacgen.core_types import Family, TypeTag
from kacgen.errors import AllZeroLabels, NegativeLabel

# Bond glyphs as drawn left to right. Multiplicity and arrow direction are
# derived from the glyph so that the tables below stay readable.
BONDS = {
    "-": (1, None),
    "=>": (2, "right"),
    "<=": (2, "left"),
    "<=>": (2, "both"),
    "≡>": (4, "right"),
}

Vector = tuple[Fraction, ...]


@dataclass(frozen=True)
class Edge:
    a: int
    b: int
    multiplicity: int
    arrow: str | None  # "right" points from a to b


@dataclass(frozen=True)
class Branch:
    node: int
    attached_to: tuple[int, ...]


@dataclass(frozen=True)
class AffineDiagram:
    """Node data indexed by k for the node g_k; g_0 is the affine node."""

    tag: TypeTag
    marks_b: tuple[int, ...]
    marks_c: tuple[int, ...]
    orbit_size: tuple[int, ...]
    chain: tuple[int, ...]
    chain_bonds: tuple[str, ...]
    branches: tuple[Branch, ...]

    @property
    def size(self) -> int:
        return len(self.marks_b)

    @property
    def nodes(self) -> tuple[str, ...]:
        return tuple(f"g{k}" for k in range(self.size))

    @property
    def twist_order(self) -> int:
        return self.tag.twist_order

    @property
    def edges(self) -> tuple[Edge, ...]:
        out = []
        for (a, b), glyph in zip(zip(self.chain, self.chain[1:]), self.chain_bonds):
            mult, arrow = BONDS[glyph]
            out.append(Edge(a, b, mult, arrow))
        for br in self.branches:
            for target in br.attached_to:
                out.append(Edge(br.node, target, 1, None))
        return tuple(out)


@dataclass(frozen=True)
class CoweightTable:
    """Coweights of the simple roots g_1..g_n together with the roots themselves.

    Vectors live in the ambient coordinates of the standard planche, so the
    pairing is the ordinary dot product.
    """

    tag: TypeTag
    coweights: tuple[Vector, ...]  # index k-1 holds the coweight of g_k
    simple_roots: tuple[Vector, ...]

    @property
    def dimension(self) -> int:
        return len(self.coweights[0])

    def pairing_violations(self, diagram: AffineDiagram) -> list[str]:
        """Check <mu_g, rho> = b_g f / (c_g |g|) when g = rho, zero otherwise."""
        f = diagram.twist_order
        problems = []
        for gi, cw in enumerate(self.coweights, start=1):
            for ri, root in enumerate(self.simple_roots, start=1):
                got = sum((x * y for x, y in zip(cw, root)), Fraction(0))
                want = Fraction(0)
                if gi == ri:
                    want = Fraction(diagram.marks_b[gi] * f, diagram.marks_c[gi] * diagram.orbit_size[gi])
                if got != want:
                    problems.append(f"<mu_g{gi}, g{ri}> = {got}, expected {want}")
        return problems


@dataclass(frozen=True)
class KacPoint:
    barycentric: tuple[Fraction, ...]

    def is_valid(self) -> bool:
        return sum(self.barycentric, Fraction(0)) == 1 and all(x >= 0 for x in self.barycentric)


def semisimple_rank(tag: TypeTag) -> int:
    """Number of simple roots of the fixed-point group (nodes minus one)."""
    fam, ell = tag.family, tag.rank
    if fam is Family.A:
        return ell - 1
    if fam is Family.TWO_A:
        return ell // 2
    return ell


def _ones(k: int) -> tuple[int, ...]:
    return (1,) * k


@lru_cache(maxsize=None)
def diagram_for(tag: TypeTag) -> AffineDiagram:
    tag.require_diagram()
    fam, ell = tag.family, tag.rank
    n = semisimple_rank(tag)
    size = n + 1
    if fam is Family.A:
        b = c = _ones(size)
        orbit = _ones(size)
        if ell == 2:
            return AffineDiagram(tag, b, c, orbit, (0, 1), ("<=>",), ())
        chain = tuple(range(1, ell))
        return AffineDiagram(tag, b, c, orbit, chain, ("-",) * (len(chain) - 1), (Branch(0, (1, ell - 1)),))
    if fam is Family.B:
        b = (1, 1) + (2,) * (ell - 1)
        chain = tuple(range(1, ell + 1))
        bonds = ("-",) * (ell - 2) + ("=>",)
        return AffineDiagram(tag, b, b, _ones(size), chain, bonds, (Branch(0, (2,)),))
    if fam is Family.C:
        b = (1,) + (2,) * (ell - 1) + (1,)
        chain = tuple(range(ell + 1))
        bonds = ("=>",) + ("-",) * (ell - 2) + ("<=",)
        return AffineDiagram(tag, b, b, _ones(size), chain, bonds, ())
    if fam is Family.D:
        b = (1, 1) + (2,) * (ell - 3) + (1, 1)
        chain = tuple(range(1, ell))
        bonds = ("-",) * (ell - 2)
        branches = (Branch(0, (2,)), Branch(ell, (ell - 2,)))
        return AffineDiagram(tag, b, b, _ones(size), chain, bonds, branches)
    if fam is Family.TWO_A and ell % 2 == 0:
        if n == 2:
            return AffineDiagram(tag, (1, 1, 1), (1, 1, 2), (2, 2, 1), (0, 2, 1), ("<=", "=>"), ())
        b = (1, 1) + (2,) * (n - 2) + (1,)
        c = (1, 1) + (2,) * (n - 1)
        orbit = (2,) * n + (1,)
        chain = tuple(range(1, n + 1))
        bonds = ("-",) * (n - 2) + ("<=",)
        return AffineDiagram(tag, b, c, orbit, chain, bonds, (Branch(0, (2,)),))
    if fam is Family.TWO_A:
        orbit = (2,) * size
        if n == 1:
            return AffineDiagram(tag, (1, 2), (1, 1), orbit, (0, 1), ("≡>",), ())
        b = (1,) + (2,) * n
        c = (1,) + (2,) * (n - 1) + (1,)
        bonds = ("=>",) + ("-",) * (n - 2) + ("=>",)
        return AffineDiagram(tag, b, c, orbit, tuple(range(size)), bonds, ())
    # 2D
    c = (1,) + (2,) * (ell - 1) + (1,)
    orbit = (1,) * ell + (2,)
    bonds = ("<=",) + ("-",) * (ell - 2) + ("=>",)
    return AffineDiagram(tag, _ones(size), c, orbit, tuple(range(size)), bonds, ())


def _unit(dim: int, i: int, scale: Fraction | int = 1) -> list[Fraction]:
    v = [Fraction(0)] * dim
    v[i] = Fraction(scale)
    return v


def _prefix(dim: int, i: int, scale: Fraction) -> Vector:
    return tuple(scale if k < i else Fraction(0) for k in range(dim))


def _difference(dim: int, i: int, scale: int) -> Vector:
    v = _unit(dim, i, scale)
    v[i + 1] = Fraction(-scale)
    return tuple(v)


@lru_cache(maxsize=None)
def coweight_table(tag: TypeTag) -> CoweightTable:
    tag.require_diagram()
    fam, ell = tag.family, tag.rank
    one, half = Fraction(1), Fraction(1, 2)
    if fam is Family.A:
        cws = tuple(
            tuple((one if k < i else Fraction(0)) - Fraction(i, ell) for k in range(ell)) for i in range(1, ell)
        )
        roots = tuple(_difference(ell, k, 1) for k in range(ell - 1))
        return CoweightTable(tag, cws, roots)
    if fam is Family.TWO_A:
        n = ell // 2
        cws = tuple(_prefix(n, i, half) for i in range(1, n + 1))
        last = 2 if ell % 2 == 0 else 4
        roots = tuple(_difference(n, k, 2) for k in range(n - 1)) + (tuple(_unit(n, n - 1, last)),)
        return CoweightTable(tag, cws, roots)
    cws_list = [_prefix(ell, i, one) for i in range(1, ell + 1)]
    roots_list = [_difference(ell, k, 1) for k in range(ell - 1)]
    if fam is Family.B:
        roots_list.append(tuple(_unit(ell, ell - 1)))
    elif fam in (Family.C, Family.TWO_D):
        cws_list[-1] = _prefix(ell, ell, half)
        roots_list.append(tuple(_unit(ell, ell - 1, 2)))
    else:  # D
        cws_list[-2] = tuple([half] * (ell - 1) + [-half])
        cws_list[-1] = _prefix(ell, ell, half)
        last = _unit(ell, ell - 1)
        last[ell - 2] = one
        roots_list.append(tuple(last))
    return CoweightTable(tag, tuple(cws_list), tuple(roots_list))


def kac_point(labels: Sequence[int], tag: TypeTag) -> tuple[KacPoint, int]:
    """Barycentric coordinates (f/m) s_g b_g of a labelling, and m = f * sum s_g b_g."""
    diagram = diagram_for(tag)
    if len(labels) != diagram.size:
        raise ValueError(f"{tag} has {diagram.size} nodes, got {len(labels)} labels")
    if any(s < 0 for s in labels):
        raise NegativeLabel(f"labels must be non-negative: {list(labels)}")
    f = diagram.twist_order
    m = f * sum(s * b for s, b in zip(labels, diagram.marks_b))
    if m == 0:
        raise AllZeroLabels("all labels are zero")
    return KacPoint(tuple(Fraction(f * s * b, m) for s, b in zip(labels, diagram.marks_b))), m
