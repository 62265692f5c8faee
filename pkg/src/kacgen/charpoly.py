"""Characteristic polynomials of elliptic lifts: closed forms and exact oracles."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Literal

from kacgen.core_types import (
    FactoredPoly,
    Family,
    IntPoly,
    Partition,
    RootMultiset,
    TypeTag,
    expand,
    intpoly_roots_mod,
    lcm_parts,
    roots_mod,
)
from kacgen.cyclo import CycloInt
from kacgen.errors import InadmissiblePartition, MismatchDetected, RecoveryStuck
from kacgen.lifts import LiftMatrix, TwistedElement, generator, matrix_size
from kacgen.linalg import charpoly_gauss, charpoly_int, charpoly_ring

Rep = Literal["standard", "standard_times_J", "adjoint"]


@dataclass(frozen=True)
class CharPolyResult:
    factored: FactoredPoly | None
    expanded: IntPoly
    m: int
    rep: Rep


def cyclic_block_charpoly(m: int, total_sign_parity: str) -> IntPoly:
    """t^m - 1 for an even number of sign flips around the cycle, t^m + 1 for odd."""
    if m < 1:
        raise ValueError("block size must be positive")
    if total_sign_parity not in ("even", "odd"):
        raise ValueError("parity must be 'even' or 'odd'")
    return IntPoly.binomial(m, 1 if total_sign_parity == "even" else -1)


def canonical_m(tag: TypeTag, p: Partition) -> int:
    fam = tag.family
    if fam is Family.A:
        return 2 * tag.rank if tag.rank % 2 == 0 else tag.rank
    if fam is Family.C:
        return 4 * lcm_parts(p)
    return 2 * lcm_parts(p)


def _rep_for(tag: TypeTag) -> Rep:
    if tag.family is Family.TWO_A:
        return "adjoint"
    if tag.family is Family.TWO_D:
        return "standard_times_J"
    return "standard"


def formula_factors(tag: TypeTag, p: Partition) -> FactoredPoly:
    """Closed-form characteristic polynomial as a product of t^k -/+ 1 factors."""
    tag.check_partition(p)
    fam = tag.family
    parts = p.parts
    if fam is Family.A:
        # t^l + (-1)^l = t^l - sign with sign = -(-1)^l
        return FactoredPoly.of((tag.rank, -((-1) ** tag.rank), 1))
    if fam is Family.B:
        return FactoredPoly(((1, (-1) ** p.mu, 1),) + tuple((2 * x, 1, 1) for x in parts))
    if fam is Family.C:
        return FactoredPoly(tuple((2 * x, -1, 1) for x in parts))
    if fam in (Family.D, Family.TWO_D):
        return FactoredPoly(tuple((2 * x, 1, 1) for x in parts))
    factors: list[tuple[int, int, int]] = [(1, -1, -1)]
    factors += [(x, -1, 1) for x in parts]
    factors += [(2 * x, 1, (x - 1) // 2) for x in parts]
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            a, b = parts[i], parts[j]
            factors.append((2 * math.lcm(a, b), 1, math.gcd(a, b)))
    return FactoredPoly(tuple(factors))


def formula_charpoly(tag: TypeTag, p: Partition) -> CharPolyResult:
    f = formula_factors(tag, p)
    return CharPolyResult(f, expand(f), canonical_m(tag, p), _rep_for(tag))


# ---------------------------------------------------------------------------
# Matrix oracle
# ---------------------------------------------------------------------------


def _gl_basis_index(ell: int) -> dict[tuple[int, int], int]:
    return {(i, j): i * ell + j for i in range(ell) for j in range(ell)}


def adjoint_operator_gl(g: LiftMatrix) -> list[list]:
    """Matrix of X -> -g X^T g^{-1} on gl_l in the basis E(i, j), row-major order."""
    ell = g.size
    data = g.monomial_data()
    if data is None:
        raise ValueError("adjoint operator needs a monomial matrix")
    rows_of_col, units = data
    ginv = g.inverse()
    inv_rows, inv_units = ginv.monomial_data()
    idx = _gl_basis_index(ell)
    zero = units[0] * 0
    dim = ell * ell
    out = [[zero] * dim for _ in range(dim)]
    # -g E(j, i) g^{-1}: g e_j = u_j e_{r(j)}, and e_i^T g^{-1} = v e_{c}^T for the
    # unique column c with g^{-1}[i][c] != 0.
    inv_row_entry = {}
    for c, r in enumerate(inv_rows):
        inv_row_entry[r] = (c, inv_units[c])
    for (i, j), src in idx.items():
        r = rows_of_col[j]
        c, v = inv_row_entry[i]
        out[idx[(r, c)]][src] = -(units[j] * v)
    return out


def _sl_change(ell: int):
    """Basis of sl_l: off-diagonal E(i,j) then H_k = E(k,k) - E(k+1,k+1)."""
    off = [(i, j) for i in range(ell) for j in range(ell) if i != j]
    return off


def adjoint_operator_sl(g: LiftMatrix) -> list[list]:
    """Matrix of X -> -g X^T g^{-1} on trace-zero matrices."""
    ell = g.size
    full = adjoint_operator_gl(g)
    idx = _gl_basis_index(ell)
    off = _sl_change(ell)
    dim = ell * ell - 1
    zero = full[0][0] * 0

    def to_gl(k: int) -> dict[int, object]:
        if k < len(off):
            return {idx[off[k]]: 1}
        h = k - len(off)
        return {idx[(h, h)]: 1, idx[(h + 1, h + 1)]: -1}

    def from_gl(vec: list) -> list:
        coords = [vec[idx[ij]] for ij in off]
        # diagonal part d_1..d_l with trace zero: coefficient of H_k is d_1 + ... + d_k
        acc = zero
        for h in range(ell - 1):
            acc = acc + vec[idx[(h, h)]]
            coords.append(acc)
        return coords

    columns = []
    for k in range(dim):
        vec = [zero] * (ell * ell)
        for src, coef in to_gl(k).items():
            for r in range(ell * ell):
                x = full[r][src]
                if x:
                    vec[r] = vec[r] + x * coef
        columns.append(from_gl(vec))
    return [[columns[c][r] for c in range(dim)] for r in range(dim)]


def matrix_oracle_charpoly(e: TwistedElement) -> CharPolyResult:
    """Characteristic polynomial straight from the lift matrix."""
    tag = e.tag
    g = e.matrix
    m = canonical_m(tag, g.partition) if g.partition is not None else 0
    fam = tag.family
    if fam is Family.TWO_D:
        gj = g @ generator(tag, "J")
        return CharPolyResult(None, charpoly_gauss(gj.entries), m, "standard_times_J")
    if fam is Family.TWO_A:
        # T(X) = Ad(n) theta(X) = -(nJ) X^T (nJ)^{-1}
        nj = g @ generator(tag, "J")
        sl = charpoly_gauss(adjoint_operator_sl(nj))
        gl = charpoly_gauss(adjoint_operator_gl(nj))
        if IntPoly((1, 1)) * sl != gl:
            raise MismatchDetected("gl and sl adjoint characteristic polynomials differ by more than (t+1)")
        return CharPolyResult(None, sl, m, "adjoint")
    return CharPolyResult(None, charpoly_gauss(g.entries), m, "standard")


# ---------------------------------------------------------------------------
# Recovering the partition from the 2A adjoint polynomial
# ---------------------------------------------------------------------------


def _full_set(counts: Counter, m: int, h2: int) -> bool:
    step = m // h2
    return all(counts[j * step] > 0 for j in range(h2))


def _strip_full_sets(counts: Counter, m: int) -> int:
    """Remove full sets of 2h-th roots, largest odd h first, until stuck."""
    removed = 0
    candidates = sorted((h for h in range(1, m // 2 + 1, 2) if m % (2 * h) == 0), reverse=True)
    while True:
        for h in candidates:
            if _full_set(counts, m, 2 * h):
                step = m // (2 * h)
                for j in range(2 * h):
                    counts[j * step] -= 1
                removed += 1
                break
        else:
            return removed


def _read_odd_parts(counts: Counter, m: int) -> list[int]:
    """Split roots of prod (t^l + 1) into parts, largest first."""
    counts = Counter(counts)
    parts = []
    while sum(counts.values()):
        for h in range(m // 2, 0, -1):
            if h % 2 == 0 or m % (2 * h):
                continue
            roots = [(2 * j + 1) * (m // (2 * h)) for j in range(h)]
            if all(counts[e] > 0 for e in roots):
                for e in roots:
                    counts[e] -= 1
                parts.append(h)
                break
        else:
            raise RecoveryStuck("remaining roots are not a product of t^h + 1 with h odd")
    return parts


def recover_p(q: CharPolyResult, ell: int | None = None) -> tuple[FactoredPoly, Partition]:
    """Root-removal on the adjoint polynomial; returns p and the partition."""
    if q.rep != "adjoint":
        raise ValueError("recover_p expects a 2A adjoint characteristic polynomial")
    m = q.m
    deg = q.expanded.degree
    if ell is None:
        ell = math.isqrt(deg + 1)
    if ell * ell - 1 != deg:
        raise RecoveryStuck(f"degree {deg} is not l^2 - 1")
    counts = Counter(intpoly_roots_mod(q.expanded, m).as_dict())
    _strip_full_sets(counts, m)
    remaining = sum(counts.values())
    if remaining != ell - 1:
        raise RecoveryStuck(f"{remaining} roots left, expected {ell - 1}")
    counts[m // 2] += 1  # multiply back by t + 1
    parts = _read_odd_parts(counts, m)
    part = Partition.of(parts)
    return p_polynomial(part), part


def p_polynomial(p: Partition) -> FactoredPoly:
    return FactoredPoly(((1, -1, -1),) + tuple((x, -1, 1) for x in p.parts))


# ---------------------------------------------------------------------------
# 2A: Ad(d) o theta for the torus element read off the sigma list
# ---------------------------------------------------------------------------


@dataclass
class BlockReport:
    name: str
    dimension: int
    computed: RootMultiset
    expected: RootMultiset

    @property
    def ok(self) -> bool:
        return self.computed == self.expected


@dataclass
class SigmaCheckReport:
    partition: Partition
    modulus: int
    formula: IntPoly
    block_total: IntPoly
    dense: IntPoly
    blocks: list[BlockReport] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.block_total == self.formula and self.dense == self.formula and all(b.ok for b in self.blocks)


def _theta_sign(ell: int, i: int, j: int) -> int:
    """Sign c with theta(E(i,j)) = c * E(l-j+1, l-i+1), 1-indexed."""
    if ell % 2:
        return -1
    n = ell // 2
    return 1 if (i <= n < j) or (j <= n < i) else -1


def _ad_theta_action(exps: list[int], ell: int):
    """(target, sign, exponent) for each basis E(i,j) under Ad(d) o theta.

    ``exps`` are the exponents of d in units of a fixed root of unity; the weight
    of E(a, b) under Ad(d) is exps[a] - exps[b].
    """
    action = {}
    for i in range(1, ell + 1):
        for j in range(1, ell + 1):
            a, b = ell - j + 1, ell - i + 1
            action[(i, j)] = ((a, b), _theta_sign(ell, i, j), exps[a - 1] - exps[b - 1])
    return action


def _roots_of_cycle(mod: int, length: int, sign: int, exponent: int) -> list[int]:
    """Exponents (mod length*2*mod) of the roots of t^L - sign*xi^exponent."""
    big = 2 * mod * length
    target = (exponent % mod) * 2 * length + (0 if sign == 1 else mod * length)
    # x^L = zeta^target where zeta has order big; x = zeta^y with L*y = target (mod big)
    if target % length:
        raise ValueError("cycle root not representable")
    y0 = target // length
    return [(y0 + k * (big // length)) % big for k in range(length)]


def _cycle_decomposition(action, ell: int, mod: int, basis) -> list[tuple[list, int, int]]:
    """Cycles of a monomial operator with entries +/- xi^e on the given basis."""
    seen = set()
    cycles = []
    for start in basis:
        if start in seen:
            continue
        cycle = []
        sign, expo = 1, 0
        cur = start
        while cur not in seen:
            seen.add(cur)
            cycle.append(cur)
            nxt, s, e = action[cur]
            sign *= s
            expo += e
            cur = nxt
        if cur != start:
            raise ValueError("operator is not a permutation on the basis")
        cycles.append((cycle, sign, expo % mod))
    return cycles


def _multiset(mod: int, roots: list[int]) -> RootMultiset:
    return RootMultiset(mod, tuple(Counter(roots).items()))


def _expected_binomial_roots(big: int, factors: list[tuple[int, int, int]]) -> RootMultiset:
    return roots_mod(FactoredPoly(tuple(factors)), big)


def _dense_sl_charpoly(action, ell: int, mod: int) -> IntPoly:
    """Dense division-free characteristic polynomial over Z[x]/(x^mod - 1)."""
    idx = {}
    off = [(i, j) for i in range(1, ell + 1) for j in range(1, ell + 1) if i != j]
    for k, ij in enumerate(off):
        idx[ij] = k
    dim = ell * ell - 1
    zero = CycloInt(mod)
    one = CycloInt.unit(mod, 0)
    rows = [[zero] * dim for _ in range(dim)]

    def image(ij) -> dict:
        (a, b), s, e = action[ij]
        return {(a, b): CycloInt.unit(mod, e, s)}

    def add_gl_vector(col: int, vec: dict) -> None:
        diag = [zero] * (ell + 1)
        for (a, b), v in vec.items():
            if a != b:
                rows[idx[(a, b)]][col] = rows[idx[(a, b)]][col] + v
            else:
                diag[a] = diag[a] + v
        acc = zero
        for h in range(1, ell):
            acc = acc + diag[h]
            rows[len(off) + h - 1][col] = rows[len(off) + h - 1][col] + acc

    for k, ij in enumerate(off):
        add_gl_vector(k, image(ij))
    for h in range(1, ell):
        vec: dict = {}
        for key, v in image((h, h)).items():
            vec[key] = vec.get(key, zero) + v
        for key, v in image((h + 1, h + 1)).items():
            vec[key] = vec.get(key, zero) - v
        add_gl_vector(len(off) + h - 1, vec)
    coeffs = charpoly_ring(rows, zero, one)
    ints = []
    for k, c in enumerate(coeffs):
        v = c.as_integer()
        if v is None:
            raise MismatchDetected(f"dense coefficient of t^{k} is not an integer: {c.reduce()}")
        ints.append(v)
    return IntPoly(tuple(ints))


def _sigma_exponents(tag: TypeTag, p: Partition) -> tuple[list[int], int]:
    """Diagonal exponents of d and the modulus they live in."""
    from kacgen.kac import sigma_list, torus_exponents

    te = torus_exponents(tag, sigma_list(tag, p))
    return list(te.exponents), te.modulus


def _primed_layout(p: Partition, ell: int, m: int):
    """The reordered torus element d' and the row/column index sets per part.

    Exponents are returned in units of xi^(1/2) for even l and xi for odd l.
    """
    mu = p.mu
    asc = p.ascending
    n = ell // 2
    first: list[int] = []
    owners: dict[int, int] = {}  # 1-indexed position -> part index nu (1-based, ascending)
    half_blocks: dict[int, list[int]] = {}
    pos = 1
    for nu in range(mu, 0, -1):
        part = asc[nu - 1]
        tilde = (part - 1) // 2
        block = []
        for j in range(1, tilde + 1):
            if ell % 2 == 0:
                first.append((part - 2 * j) * (m // part) // 2)  # (l - 2j) m / 4l in units of xi^(1/2)
            else:
                first.append((tilde + 1 - j) * m // (2 * part))
            block.append(pos)
            pos += 1
        half_blocks[nu] = block
    if ell % 2 == 0:
        middle = [m // 2] * (mu // 2) + [-(m // 2)] * (mu // 2)  # +-m/4 in units of xi^(1/2)
        offset0 = n - mu // 2
    else:
        middle = [0] * mu
        offset0 = n - (mu - 1) // 2
    exps = first + middle + [-x for x in reversed(first)]
    assert len(exps) == ell
    rows: dict[int, list[int]] = {}
    cols: dict[int, list[int]] = {}
    for nu in range(1, mu + 1):
        block = half_blocks[nu]
        mirrored = [ell + 1 - i for i in block]
        if ell % 2 == 0:
            r_mid = n + mu // 2 - nu + 1
            c_mid = n - mu // 2 + nu
        else:
            r_mid = n + (mu - 1) // 2 - nu + 2
            c_mid = n - (mu - 1) // 2 + nu
        rows[nu] = block + [r_mid] + mirrored
        cols[nu] = block + [c_mid] + mirrored
    return exps, rows, cols, offset0


def twoA_sigma_charpoly_check(p: Partition, variant: str | None = None) -> SigmaCheckReport:
    """Check the 2A adjoint formula through the torus element built from sigma.

    Two routes are compared against the closed form: the decomposition of
    gl_l into antidiagonal lines, diagonal pairs and the blocks U_tau, U_{rho,phi}
    (computed with the reordered element d'), and a dense division-free
    characteristic polynomial of Ad(d) o theta on sl_l built from d itself.
    """
    ell = p.total
    tag = TypeTag(Family.TWO_A, ell)
    tag.check_partition(p)
    expected_variant = "even_ell" if ell % 2 == 0 else "odd_ell"
    if variant is not None and variant != expected_variant:
        raise InadmissiblePartition(f"{p} has l = {ell}, which is the {expected_variant} case")
    formula = formula_charpoly(tag, p)
    m = formula.m

    # dense route with d from the sigma list
    exps, mod = _sigma_exponents(tag, p)
    dense = _dense_sl_charpoly(_ad_theta_action(exps, ell), ell, mod)

    # block route with d'
    pexps, rows, cols, _ = _primed_layout(p, ell, m)
    action = _ad_theta_action(pexps, ell)
    big = 2 * mod * 2 * ell  # common modulus for all roots of the 2x2 and 1x1 blocks
    blocks: dict[str, Counter] = {}
    row_owner = {i: nu for nu, idxs in rows.items() for i in idxs}
    col_owner = {j: nu for nu, idxs in cols.items() for j in idxs}
    n = ell // 2
    mid_lo = n - (p.mu // 2 if ell % 2 == 0 else (p.mu - 1) // 2)
    basis = [(i, j) for i in range(1, ell + 1) for j in range(1, ell + 1)]
    for cycle, sign, expo in _cycle_decomposition(action, ell, mod, basis):
        i, j = cycle[0]
        if len(cycle) == 1:
            name = "U_a"
        elif all(a == b for a, b in cycle) and not any(mid_lo < a <= ell - mid_lo for a, _ in cycle):
            name = "U_d"
        else:
            ka, kb = row_owner[i], col_owner[j]
            name = f"U_{min(ka, kb)}" if ka == kb else f"U_{min(ka, kb)},{max(ka, kb)}"
        roots = _roots_of_cycle(mod, len(cycle), sign, expo)
        scale = big // (2 * mod * len(cycle))
        bucket = blocks.setdefault(name, Counter())
        for r in roots:
            bucket[r * scale] += 1

    asc = p.ascending
    expected: dict[str, list[tuple[int, int, int]]] = {}
    expected["U_a"] = [(x, -1, 1) for x in asc]
    n_d = n - (p.mu // 2) if ell % 2 == 0 else n - (p.mu - 1) // 2
    if n_d:
        expected["U_d"] = [(2, 1, n_d)]
    for nu, part in enumerate(asc, start=1):
        if part > 1:
            expected[f"U_{nu}"] = [(2 * part, 1, (part - 1) // 2), (2, 1, -((part - 1) // 2))]
    for a in range(1, p.mu + 1):
        for b in range(a + 1, p.mu + 1):
            la, lb = asc[a - 1], asc[b - 1]
            expected[f"U_{a},{b}"] = [(2 * math.lcm(la, lb), 1, math.gcd(la, lb))]

    reports = []
    total = Counter()
    for name in sorted(set(blocks) | set(expected)):
        comp = RootMultiset(big, tuple(blocks.get(name, Counter()).items()))
        exp = _expected_binomial_roots(big, expected.get(name, []))
        reports.append(BlockReport(name, comp.degree, comp, exp))
        total.update(blocks.get(name, Counter()))
    total[big // 2] -= 1  # quotient by t + 1: gl_l -> sl_l
    block_total = RootMultiset(big, tuple(total.items())).to_intpoly()

    report = SigmaCheckReport(p, mod, formula.expanded, block_total, dense, reports)
    if not report.ok:
        raise MismatchDetected(_first_difference(report))
    return report


def _first_difference(report: SigmaCheckReport) -> str:
    for label, got in (("block decomposition", report.block_total), ("dense oracle", report.dense)):
        if got != report.formula:
            a, b = got.coeffs, report.formula.coeffs
            for k in range(max(len(a), len(b))):
                x = a[k] if k < len(a) else 0
                y = b[k] if k < len(b) else 0
                if x != y:
                    return f"{report.partition}: {label} coefficient of t^{k} is {x}, formula gives {y}"
    for blk in report.blocks:
        if not blk.ok:
            return f"{report.partition}: block {blk.name} roots {blk.computed.as_dict()} != {blk.expected.as_dict()}"
    return f"{report.partition}: mismatch"
