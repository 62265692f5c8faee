"""Sigma lists, Kac labels, normalization and (de)serialization of Kac diagrams."""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

from kacgen.charpoly import canonical_m
from kacgen.core_types import Family, Partition, TypeTag
from kacgen.errors import AllZeroLabels, NegativeLabel, NonIntegerEntry
from kacgen.rootdata import BONDS, AffineDiagram, coweight_table, diagram_for, kac_point

Format = Literal["ascii", "json"]


@dataclass(frozen=True)
class SigmaList:
    values: tuple[int, ...]
    m: int

    def __post_init__(self) -> None:
        if any(a < b for a, b in zip(self.values, self.values[1:])):
            raise ValueError(f"sigma list must be weakly decreasing: {self.values}")


@dataclass(frozen=True)
class TorusExponents:
    """Exponents a_i of d = Diag(zeta^{a_1}, ...) with zeta a primitive ``modulus``-th root.

    ``denominator`` is 2 when the exponents count half-steps of xi (the 2A,
    even-rank case), and 1 otherwise.
    """

    exponents: tuple[int, ...]
    modulus: int
    denominator: int = 1


@dataclass(frozen=True)
class KacDiagram:
    tag: TypeTag
    partition: Partition
    m: int
    labels: tuple[int, ...]
    normalized: bool = False
    removed_gcd: int = 1

    @property
    def diagram(self) -> AffineDiagram:
        return diagram_for(self.tag)

    def normalize(self) -> "KacDiagram":
        if self.normalized:
            return self
        g = math.gcd(*self.labels)
        if g == 0:
            raise AllZeroLabels("cannot normalize an all-zero labelling")
        return KacDiagram(self.tag, self.partition, self.m, tuple(s // g for s in self.labels), True, g)


# ---------------------------------------------------------------------------
# sigma lists
# ---------------------------------------------------------------------------


def _exact(num: int, den: int, what: str) -> int:
    q, r = divmod(num, den)
    if r:
        raise NonIntegerEntry(f"{what}: {num}/{den} is not an integer")
    return q


def sigma_list(tag: TypeTag, p: Partition, m: int | None = None) -> SigmaList:
    tag.check_partition(p)
    if m is None:
        m = canonical_m(tag, p)
    fam, ell, mu = tag.family, tag.rank, p.mu
    vals: list[int] = []
    if fam is Family.A:
        if ell % 2 == 0:
            vals = list(range(ell - 1, -ell, -2))
        else:
            vals = list(range((ell - 1) // 2, -(ell + 1) // 2, -1))
        return SigmaList(tuple(vals), m)
    half = _exact(m, 2, "m/2")
    for part in p.parts:
        what = f"entry for part {part}"
        if fam in (Family.B, Family.D, Family.TWO_D):
            vals += [_exact(m * a, 2 * part, what) for a in range(1, part)]
        elif fam is Family.C:
            vals += [_exact((2 * a - 1) * m, 4 * part, what) for a in range(1, part + 1)]
        elif fam is Family.TWO_A and ell % 2 == 0:
            vals += [_exact((2 * a - 1) * m, 2 * part, what) for a in range(1, (part - 1) // 2 + 1)]
        else:
            vals += [_exact(a * m, 2 * part, what) for a in range(1, (part - 1) // 2 + 1)]
    if fam is Family.B:
        vals += [half] * ((mu + 1) // 2) + [0] * (mu // 2)
    elif fam is Family.D:
        vals += [half] * (mu // 2) + [0] * (mu // 2)
    elif fam is Family.TWO_A and ell % 2 == 0:
        vals += [half] * (mu // 2)
    elif fam is Family.TWO_A:
        vals += [0] * ((mu - 1) // 2)
    elif fam is Family.TWO_D:
        vals += [half] * ((mu - 1) // 2) + [0] * ((mu - 1) // 2)
    return SigmaList(tuple(sorted(vals, reverse=True)), m)


def torus_exponents(tag: TypeTag, s: SigmaList) -> TorusExponents:
    fam = tag.family
    sig = s.values
    mirror = tuple(-x for x in reversed(sig))
    if fam is Family.A:
        return TorusExponents(sig, s.m)
    if fam is Family.TWO_A and tag.rank % 2 == 0:
        return TorusExponents(sig + mirror, 2 * s.m, 2)
    if fam in (Family.B, Family.TWO_A):
        return TorusExponents(sig + (0,) + mirror, s.m)
    if fam is Family.TWO_D:
        return TorusExponents(sig + (0, 0) + mirror, s.m)
    return TorusExponents(sig + mirror, s.m)


# ---------------------------------------------------------------------------
# labels
# ---------------------------------------------------------------------------


def raw_labels(tag: TypeTag, s: SigmaList) -> tuple[int, ...]:
    """Labels s_g0..s_gn before gcd normalization."""
    fam, sig, m = tag.family, s.values, s.m
    r = len(sig)
    diffs = [sig[k] - sig[k + 1] for k in range(r - 1)]
    if fam is Family.A:
        labels = [m - (sig[0] - sig[-1])] + diffs
    elif fam is Family.B:
        labels = [m - (sig[0] + sig[1])] + diffs + [sig[-1]]
    elif fam is Family.C:
        labels = [m - 2 * sig[0]] + diffs + [2 * sig[-1]]
    elif fam is Family.D:
        labels = [m - (sig[0] + sig[1])] + diffs + [sig[-2] + sig[-1]]
    elif fam is Family.TWO_A and tag.rank % 2 == 0:
        halves = [m - (sig[0] + sig[1])] + diffs
        if any(x % 2 for x in halves):
            raise NonIntegerEntry(f"odd difference in {sig}; expected every sigma entry odd")
        labels = [x // 2 for x in halves] + [sig[-1]]
    elif fam is Family.TWO_A:
        labels = [_exact(m, 2, "m/2") - 2 * sig[0]] + diffs + [sig[-1]]
    else:
        labels = [_exact(m, 2, "m/2") - sig[0]] + diffs + [sig[-1]]
    bad = [(k, x) for k, x in enumerate(labels) if x < 0]
    if bad:
        k, x = bad[0]
        raise NegativeLabel(f"label of g{k} is {x} for sigma {sig}")
    return tuple(labels)


def kac_labels(tag: TypeTag, s: SigmaList, p: Partition, *, normalize: bool = True) -> KacDiagram:
    d = KacDiagram(tag, p, s.m, raw_labels(tag, s))
    return d.normalize() if normalize else d


def kac_diagram(tag: TypeTag, p: Partition, *, normalize: bool = True) -> KacDiagram:
    return kac_labels(tag, sigma_list(tag, p), p, normalize=normalize)


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


@dataclass
class DiagramReport:
    diagram: KacDiagram
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(passed for _, passed, _ in self.checks)

    @property
    def failures(self) -> list[str]:
        return [f"{name}: {detail}" for name, passed, detail in self.checks if not passed]


def _lambda_from_labels(d: KacDiagram, raw: tuple[int, ...]) -> tuple[Fraction, ...]:
    table = coweight_table(d.tag)
    orbit = d.diagram.orbit_size
    acc = [Fraction(0)] * table.dimension
    for k, cw in enumerate(table.coweights, start=1):
        weight = raw[k] * orbit[k]
        for i, x in enumerate(cw):
            acc[i] += weight * x
    return tuple(acc)


def verify_diagram(d: KacDiagram) -> DiagramReport:
    """Recompute every identity a labelling must satisfy and report each one."""
    report = DiagramReport(d)
    add = report.checks.append
    diagram = d.diagram
    if len(d.labels) != diagram.size:
        add(("node count", False, f"{len(d.labels)} labels for {diagram.size} nodes"))
        return report
    add(("non-negative", all(s >= 0 for s in d.labels), f"labels {d.labels}"))
    if d.normalized:
        g = math.gcd(*d.labels)
        add(("gcd", g == 1, f"gcd of normalized labels is {g}"))
    raw = tuple(s * d.removed_gcd for s in d.labels)
    f = diagram.twist_order
    total = f * sum(s * b for s, b in zip(raw, diagram.marks_b))
    add(("order from labels", total == d.m, f"f * sum s_g b_g = {total}, m = {d.m}"))
    try:
        point, m_point = kac_point(d.labels, d.tag)
        add(("barycentric", point.is_valid(), f"coordinates {tuple(map(str, point.barycentric))}"))
    except (AllZeroLabels, NegativeLabel) as exc:
        add(("barycentric", False, str(exc)))
    pairing = coweight_table(d.tag).pairing_violations(diagram)
    add(("coweight pairing", not pairing, "; ".join(pairing[:3])))
    te = torus_exponents(d.tag, sigma_list(d.tag, d.partition, d.m))
    dim = coweight_table(d.tag).dimension
    want = tuple(Fraction(a, te.denominator) for a in te.exponents[:dim])
    got = _lambda_from_labels(d, raw)
    add(("coweight identity", got == want, f"sum s_g |g| mu_g = {tuple(map(str, got))}, torus gives {tuple(map(str, want))}"))
    return report


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def render(d: KacDiagram, fmt: Format = "ascii") -> str:
    if fmt == "json":
        return _render_json(d)
    if fmt == "ascii":
        return _render_ascii(d)
    raise ValueError(f"unknown format {fmt!r}")


def _render_ascii(d: KacDiagram) -> str:
    diagram = d.diagram
    header = (
        f"# type={d.tag.family.value} rank={d.tag.rank} partition={','.join(map(str, d.partition.parts))} "
        f"m={d.m} normalized={'true' if d.normalized else 'false'} gcd={d.removed_gcd}"
    )
    pieces = [str(d.labels[diagram.chain[0]])]
    for node, bond in zip(diagram.chain[1:], diagram.chain_bonds):
        pieces += [bond, str(d.labels[node])]
    lines = [header, " ".join(pieces)]
    for br in diagram.branches:
        lines.append(f"branch: g{br.node}={d.labels[br.node]} @ {','.join(f'g{t}' for t in br.attached_to)}")
    return "\n".join(lines) + "\n"


def _render_json(d: KacDiagram) -> str:
    diagram = d.diagram
    payload = {
        "family": d.tag.family.value,
        "rank": d.tag.rank,
        "twist": d.tag.twist_order,
        "partition": list(d.partition.parts),
        "m": d.m,
        "sigma": list(sigma_list(d.tag, d.partition, d.m).values),
        "labels": {f"g{k}": s for k, s in enumerate(d.labels)},
        "b_marks": list(diagram.marks_b),
        "c_marks": list(diagram.marks_c),
        "orbit_sizes": list(diagram.orbit_size),
        "normalized": d.normalized,
        "gcd": d.removed_gcd,
    }
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


class DiagramParseError(ValueError):
    pass


def parse(text: str, fmt: Format = "ascii") -> KacDiagram:
    if fmt == "json":
        return _parse_json(text)
    if fmt == "ascii":
        return _parse_ascii(text)
    raise ValueError(f"unknown format {fmt!r}")


def _parse_json(text: str) -> KacDiagram:
    data = json.loads(text)
    tag = TypeTag.parse(data["family"], int(data["rank"]))
    diagram = diagram_for(tag)
    names = [f"g{k}" for k in range(diagram.size)]
    if list(data["labels"]) != names:
        raise DiagramParseError(f"expected label keys {names}")
    return KacDiagram(
        tag,
        Partition(tuple(data["partition"])),
        int(data["m"]),
        tuple(int(data["labels"][k]) for k in names),
        bool(data.get("normalized", False)),
        int(data.get("gcd", 1)),
    )


_HEADER = re.compile(r"^#\s+(.*)$")
_BRANCH = re.compile(r"^branch:\s+g(\d+)=(\d+)\s+@\s+([g\d,]+)$")


def _parse_ascii(text: str) -> KacDiagram:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise DiagramParseError("empty input")
    head = _HEADER.match(lines[0])
    if head is None:
        raise DiagramParseError("first line must be the '# key=value' header")
    fields = dict(item.split("=", 1) for item in head.group(1).split())
    tag = TypeTag.parse(fields["type"], int(fields["rank"]))
    diagram = diagram_for(tag)
    labels: list[int | None] = [None] * diagram.size
    tokens = lines[1].split()
    if len(tokens) != 2 * len(diagram.chain) - 1:
        raise DiagramParseError(f"chain line has {len(tokens)} tokens, expected {2 * len(diagram.chain) - 1}")
    for pos, node in enumerate(diagram.chain):
        labels[node] = int(tokens[2 * pos])
    for pos, bond in enumerate(diagram.chain_bonds):
        got = tokens[2 * pos + 1]
        if got != bond or got not in BONDS:
            raise DiagramParseError(f"bond {pos + 1} is {got!r}, expected {bond!r}")
    for line in lines[2:]:
        mb = _BRANCH.match(line)
        if mb is None:
            raise DiagramParseError(f"cannot read line {line!r}")
        node = int(mb.group(1))
        targets = tuple(int(t.lstrip("g")) for t in mb.group(3).split(","))
        known = {br.node: br.attached_to for br in diagram.branches}
        if known.get(node) != targets:
            raise DiagramParseError(f"branch g{node} is not attached to {targets} in {tag}")
        labels[node] = int(mb.group(2))
    if any(x is None for x in labels):
        missing = [f"g{k}" for k, x in enumerate(labels) if x is None]
        raise DiagramParseError(f"no label for {', '.join(missing)}")
    return KacDiagram(
        tag,
        Partition(tuple(int(x) for x in fields["partition"].split(","))),
        int(fields["m"]),
        tuple(labels),  # type: ignore[arg-type]
        fields.get("normalized", "false") == "true",
        int(fields.get("gcd", "1")),
    )
