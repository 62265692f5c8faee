"""Brute-force Weyl groups as signed permutations, used to cross-check the lifts.

Every element is stored as a tuple of signed images: ``images[i] = +-(k+1)``
means the element sends e_(i+1) to +-e_(k+1). Type A and 2A use plain
permutations of R^l; the other families act on R^r with r = l (B, C, D) or
l + 1 (2D, a Weyl group of type D).
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from kacgen.core_types import Family, Partition, TypeTag, admissible_partitions
from kacgen.errors import InadmissiblePartition, NotElliptic, RankCapExceeded
from kacgen.lifts import LiftMatrix, generator, lift
from kacgen.linalg import charpoly_int

RANK_CAP = 6

Images = tuple[int, ...]


@dataclass(frozen=True)
class SignedPermutation:
    images: Images
    tag: TypeTag = field(compare=False)

    @property
    def perm(self) -> tuple[int, ...]:
        return tuple(abs(x) - 1 for x in self.images)

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple(1 if x > 0 else -1 for x in self.images)

    def __matmul__(self, other: "SignedPermutation") -> "SignedPermutation":
        return SignedPermutation(compose(self.images, other.images), self.tag)

    def __str__(self) -> str:
        return "[" + " ".join(f"{x:+d}" for x in self.images) + "]"


@dataclass(frozen=True)
class ConjClass:
    representative: SignedPermutation
    size: int
    elliptic: bool
    twisted: bool
    members: frozenset[Images] = field(compare=False, repr=False)


# ---------------------------------------------------------------------------
# signed permutation arithmetic
# ---------------------------------------------------------------------------


def compose(a: Images, b: Images) -> Images:
    """The map a o b (apply b first)."""
    out = []
    for x in b:
        y = a[abs(x) - 1]
        out.append(y if x > 0 else -y)
    return tuple(out)


def inverse(a: Images) -> Images:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[abs(x) - 1] = (i + 1) if x > 0 else -(i + 1)
    return tuple(out)


def identity(r: int) -> Images:
    return tuple(range(1, r + 1))


def power(a: Images, k: int) -> Images:
    result, base = identity(len(a)), a
    while k:
        if k & 1:
            result = compose(result, base)
        base = compose(base, base)
        k >>= 1
    return result


def order(a: Images) -> int:
    ident, cur, k = identity(len(a)), a, 1
    while cur != ident:
        cur = compose(cur, a)
        k += 1
    return k


def apply(a: Images, v: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(v)
    for i, x in enumerate(a):
        out[abs(x) - 1] = v[i] if x > 0 else -v[i]
    return tuple(out)


def as_matrix(a: Images) -> list[list[int]]:
    r = len(a)
    rows = [[0] * r for _ in range(r)]
    for i, x in enumerate(a):
        rows[abs(x) - 1][i] = 1 if x > 0 else -1
    return rows


# ---------------------------------------------------------------------------
# the model of each family
# ---------------------------------------------------------------------------


def coordinate_count(tag: TypeTag) -> int:
    return tag.rank + 1 if tag.family is Family.TWO_D else tag.rank


def _check_cap(tag: TypeTag) -> None:
    if tag.rank > RANK_CAP:
        raise RankCapExceeded(f"brute force is capped at rank {RANK_CAP}, got {tag}")


def weyl_image(tag: TypeTag, g: LiftMatrix) -> SignedPermutation:
    """Forget the torus part of a monomial matrix and keep its signed permutation.

    Index i <= r stands for +e_i and its mirror N + 1 - i for -e_i; a middle
    index (odd N) is fixed by every monomial element and ignored.
    """
    data = g.monomial_data()
    if data is None:
        raise ValueError("Weyl image needs a monomial matrix")
    rows_of_col, _ = data
    r = coordinate_count(tag)
    if tag.family in (Family.A, Family.TWO_A):
        return SignedPermutation(tuple(x + 1 for x in rows_of_col), tag)
    size = g.size
    images = []
    for j in range(r):
        row = rows_of_col[j]
        if row < r:
            images.append(row + 1)
        elif row >= size - r:
            images.append(-(size - row))
        else:
            raise ValueError("monomial matrix moves a coordinate into the middle")
    return SignedPermutation(tuple(images), tag)


def _transposition(r: int, k: int) -> Images:
    img = list(identity(r))
    img[k - 1], img[k] = img[k], img[k - 1]
    return tuple(img)


def simple_reflections(tag: TypeTag) -> list[Images]:
    fam, r = tag.family, coordinate_count(tag)
    refl = [_transposition(r, k) for k in range(1, r)]
    if fam in (Family.B, Family.C):
        last = list(identity(r))
        last[r - 1] = -r
        refl.append(tuple(last))
    elif fam in (Family.D, Family.TWO_D):
        last = list(identity(r))
        last[r - 2], last[r - 1] = -r, -(r - 1)
        refl.append(tuple(last))
    return refl


@lru_cache(maxsize=None)
def theta_element(tag: TypeTag) -> Images:
    """Weyl image of J; theta acts on W by conjugation with it (trivially if untwisted)."""
    if not tag.twisted:
        return identity(coordinate_count(tag))
    return weyl_image(tag, generator(tag, "J")).images


def theta(tag: TypeTag, w: Images) -> Images:
    tau = theta_element(tag)
    return compose(compose(tau, w), inverse(tau))


def reflection_operator(tag: TypeTag, w: Images) -> Images:
    """The linear map of w (times the diagram automorphism when twisted) on R^r.

    For 2A the automorphism is -w0, so the operator is again a signed permutation.
    """
    if tag.family is Family.TWO_A:
        tau = theta_element(tag)
        return compose(w, tuple(-x for x in tau))
    if tag.family is Family.TWO_D:
        return compose(w, theta_element(tag))
    return w


def enumerate_group(tag: TypeTag) -> Iterator[SignedPermutation]:
    _check_cap(tag)
    for images in _elements(tag):
        yield SignedPermutation(images, tag)


@lru_cache(maxsize=None)
def _elements(tag: TypeTag) -> tuple[Images, ...]:
    fam, r = tag.family, coordinate_count(tag)
    out = []
    for perm in itertools.permutations(range(1, r + 1)):
        if fam in (Family.A, Family.TWO_A):
            out.append(perm)
            continue
        for signs in itertools.product((1, -1), repeat=r):
            if fam in (Family.D, Family.TWO_D) and signs.count(-1) % 2:
                continue
            out.append(tuple(s * x for s, x in zip(signs, perm)))
    return tuple(out)


def roots(tag: TypeTag) -> list[tuple[int, ...]]:
    fam, r = tag.family, coordinate_count(tag)

    def vec(pairs: dict[int, int]) -> tuple[int, ...]:
        return tuple(pairs.get(k, 0) for k in range(r))

    out = []
    for i, j in itertools.permutations(range(r), 2):
        out.append(vec({i: 1, j: -1}))
        if fam not in (Family.A, Family.TWO_A) and i < j:
            out.append(vec({i: 1, j: 1}))
            out.append(vec({i: -1, j: -1}))
    if fam is Family.B:
        out += [vec({i: s}) for i in range(r) for s in (1, -1)]
    elif fam is Family.C:
        out += [vec({i: 2 * s}) for i in range(r) for s in (1, -1)]
    return out


# ---------------------------------------------------------------------------
# ellipticity
# ---------------------------------------------------------------------------


def fixed_space_trivial(tag: TypeTag, w: Images) -> bool:
    """No nonzero vector of the reflection representation is fixed by w (times theta)."""
    op = reflection_operator(tag, w)
    q = charpoly_int(as_matrix(op))
    if tag.family in (Family.A, Family.TWO_A):
        # R^l = V + line(1,...,1); the line has eigenvalue +1 for A and -1 for 2A.
        line = 1 if tag.family is Family.A else -1
        from kacgen.core_types import IntPoly

        q, rem = q.divmod_monic(IntPoly((-line, 1)))
        if rem.coeffs:
            raise ValueError("the all-ones line is not an eigenline")
    return q(1) != 0


def _closure(gens: list[Images], r: int) -> frozenset[Images]:
    start = identity(r)
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = compose(s, x)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def _theta_on_simple(tag: TypeTag) -> list[int]:
    refl = simple_reflections(tag)
    index = {s: k for k, s in enumerate(refl)}
    return [index[theta(tag, s)] for s in refl]


def theta_stable_subsets(tag: TypeTag) -> list[tuple[int, ...]]:
    """All theta-stable proper subsets of the simple reflections (0-based indices)."""
    perm = _theta_on_simple(tag)
    n = len(perm)
    out = []
    for size in range(n):
        for theta_set in itertools.combinations(range(n), size):
            if {perm[k] for k in theta_set} == set(theta_set):
                out.append(theta_set)
    return out


@dataclass
class _GroupData:
    elements: tuple[Images, ...]
    class_of: dict[Images, int]
    classes: list[ConjClass]
    in_parabolic: frozenset[Images]


def _orbits(tag: TypeTag, twisted: bool) -> tuple[dict[Images, int], list[list[Images]]]:
    elements = _elements(tag)
    gens = simple_reflections(tag)
    partners = [theta(tag, s) if twisted else s for s in gens]  # s^-1 = s for reflections
    class_of: dict[Images, int] = {}
    orbits: list[list[Images]] = []
    for x in elements:
        if x in class_of:
            continue
        idx = len(orbits)
        class_of[x] = idx
        members = [x]
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for s, t in zip(gens, partners):
                z = compose(compose(s, y), t)
                if z not in class_of:
                    class_of[z] = idx
                    members.append(z)
                    queue.append(z)
        orbits.append(members)
    return class_of, orbits


@lru_cache(maxsize=None)
def _group_data(tag: TypeTag, twisted: bool) -> _GroupData:
    _check_cap(tag)
    r = coordinate_count(tag)
    refl = simple_reflections(tag)
    parabolic: set[Images] = set()
    for theta_set in theta_stable_subsets(tag):
        parabolic |= _closure([refl[k] for k in theta_set], r)
    class_of, orbits = _orbits(tag, twisted)
    classes = []
    for members in orbits:
        rep = min(members)
        elliptic = not any(x in parabolic for x in members)
        classes.append(ConjClass(SignedPermutation(rep, tag), len(members), elliptic, twisted, frozenset(members)))
    return _GroupData(_elements(tag), class_of, classes, frozenset(parabolic))


def twisted_conjugacy_classes(tag: TypeTag) -> list[ConjClass]:
    """theta-conjugacy classes x ~ h x theta(h)^-1 (ordinary classes when untwisted)."""
    return list(_group_data(tag, tag.twisted).classes)


def conjugacy_classes(tag: TypeTag) -> list[ConjClass]:
    return list(_group_data(tag, False).classes)


@dataclass(frozen=True)
class EllipticityReport:
    parabolic: bool
    fixed_space: bool

    @property
    def agree(self) -> bool:
        return self.parabolic == self.fixed_space


def ellipticity(w: SignedPermutation, twisted: bool | None = None) -> EllipticityReport:
    tag = w.tag
    if twisted is None:
        twisted = tag.twisted
    data = _group_data(tag, twisted)
    cls = data.classes[data.class_of[w.images]]
    return EllipticityReport(cls.elliptic, fixed_space_trivial(tag, w.images) if twisted == tag.twisted else False)


def is_elliptic(w: SignedPermutation, twisted: bool | None = None) -> bool:
    """The (theta-)class of w meets no W_theta for a theta-stable proper theta."""
    return ellipticity(w, twisted).parabolic


def elliptic_classes(tag: TypeTag) -> list[ConjClass]:
    return [c for c in twisted_conjugacy_classes(tag) if c.elliptic]


def class_of_element(tag: TypeTag, w: Images) -> ConjClass:
    data = _group_data(tag, tag.twisted)
    return data.classes[data.class_of[w]]


def class_of_lift(tag: TypeTag, p: Partition) -> ConjClass:
    _check_cap(tag)
    w = weyl_image(tag, lift(tag, p).matrix)
    cls = class_of_element(tag, w.images)
    if not cls.elliptic:
        raise NotElliptic(f"image {w} of the lift for {p} in {tag} is not elliptic")
    return cls


@dataclass
class LiftCorrespondence:
    tag: TypeTag
    classes: dict[Partition, ConjClass]
    elliptic_count: int

    @property
    def injective(self) -> bool:
        return len({c.representative for c in self.classes.values()}) == len(self.classes)

    @property
    def bijective(self) -> bool:
        return self.injective and len(self.classes) == self.elliptic_count


def lift_correspondence(tag: TypeTag) -> LiftCorrespondence:
    mapping = {p: class_of_lift(tag, p) for p in admissible_partitions(tag)}
    return LiftCorrespondence(tag, mapping, len(elliptic_classes(tag)))


# ---------------------------------------------------------------------------
# regular elliptic elements
# ---------------------------------------------------------------------------


def acts_freely(tag: TypeTag, w: Images) -> bool:
    """Every non-trivial power of the operator of w moves every root."""
    op = reflection_operator(tag, w)
    k = order(op)
    for v in roots(tag):
        cur = v
        for _ in range(1, k):
            cur = apply(op, cur)
            if cur == v:
                return False
    return True


def is_regular_brute(tag: TypeTag, w: Images) -> bool:
    return fixed_space_trivial(tag, w) and acts_freely(tag, w)


def _all_equal(parts: tuple[int, ...]) -> bool:
    return len(set(parts)) == 1


def _equal_then_one(parts: tuple[int, ...]) -> bool:
    return len(parts) >= 2 and parts[-1] == 1 and _all_equal(parts[:-1])


def is_regular_elliptic_partition(tag: TypeTag, p: Partition) -> bool:
    """Closed-form test for the classes whose elements are regular elliptic."""
    reason = tag.admissibility_violation(p)
    if reason is not None:
        raise InadmissiblePartition(f"{p} for {tag}: {reason}")
    fam, ell, parts = tag.family, tag.rank, p.parts
    if fam is Family.A:
        return True  # the Coxeter class
    if fam in (Family.B, Family.C):
        return _all_equal(parts)
    if fam is Family.D:
        if _all_equal(parts) and (ell // parts[0]) % 2 == 0:
            return True
        return _equal_then_one(parts) and ((ell - 1) // parts[0]) % 2 == 1
    if fam is Family.TWO_A:
        if _all_equal(parts):
            return True  # parts are odd by admissibility
        return _equal_then_one(parts)
    total = ell + 1
    if _all_equal(parts) and (total // parts[0]) % 2 == 1:
        return True
    return _equal_then_one(parts) and (ell // parts[0]) % 2 == 0


# ---------------------------------------------------------------------------
# rationality
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RationalityResult:
    ok: bool
    checked: int
    counterexample: tuple[Images, int] | None = None


def check_rationality(tag: TypeTag) -> RationalityResult:
    """w^j is conjugate to w for every w and every j coprime to the order of w."""
    data = _group_data(tag, False)
    checked = 0
    for w in data.elements:
        k = order(w)
        home = data.class_of[w]
        for j in range(2, k):
            if math.gcd(j, k) != 1:
                continue
            checked += 1
            if data.class_of[power(w, j)] != home:
                return RationalityResult(False, checked, (w, j))
    return RationalityResult(True, checked)
