"""Verification campaigns shared by the CLI and the acceptance tests."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from kacgen.charpoly import formula_charpoly, matrix_oracle_charpoly
from kacgen.core_types import Family, Partition, TypeTag, admissible_partitions, min_rank
from kacgen.kac import kac_diagram, verify_diagram
from kacgen.lifts import lift
from kacgen.weyl_oracle import check_rationality

SUITES = ("injectivity", "oracle", "examples", "rationality")

DEFAULT_MAX_RANK = {"injectivity": 12, "oracle": 8, "rationality": 4, "examples": 0}
TWO_A_ADJOINT_CAP = 7
RATIONALITY_FAMILIES = (Family.A, Family.B, Family.C, Family.D)
INJECTIVITY_FAMILIES = (Family.B, Family.C, Family.D, Family.TWO_A, Family.TWO_D)


@dataclass(frozen=True)
class CaseResult:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}" + (f": {self.detail}" if self.detail else "")


@dataclass(frozen=True)
class Golden:
    family: str
    rank: int
    partition: tuple[int, ...]
    labels: tuple[int, ...]  # g0, g1, ..., gn

    @property
    def tag(self) -> TypeTag:
        return TypeTag.parse(self.family, self.rank)


# Worked diagrams, labels listed in node order g0..gn.
GOLDENS: tuple[Golden, ...] = (
    Golden("B", 14, (5, 4, 4, 1), (0, 0, 4, 1, 0, 3, 2, 0, 2, 3, 0, 1, 4, 0, 0)),
    Golden("C", 13, (6, 5, 2), (10, 1, 9, 0, 3, 7, 5, 5, 7, 3, 0, 9, 1, 10)),
    Golden("C", 3, (2, 1), (2, 1, 1, 2)),
    Golden("C", 3, (3,), (1, 1, 1, 1)),
    Golden("D", 14, (5, 4, 4, 1), (0, 0, 4, 1, 0, 3, 2, 0, 2, 3, 0, 1, 4, 0, 0)),
    Golden("2A", 20, (7, 5, 5, 3), (0, 0, 15, 6, 0, 9, 5, 7, 0, 3, 15)),
    Golden("2A", 25, (9, 5, 5, 3, 3), (5, 2, 0, 3, 0, 0, 5, 1, 0, 4, 5, 0, 0)),
    Golden("2D", 11, (5, 4, 3), (0, 12, 3, 5, 4, 6, 6, 4, 5, 3, 12, 0)),
    Golden("A", 2, (2,), (1, 1)),
    Golden("A", 3, (3,), (1, 1, 1)),
    Golden("A", 4, (4,), (1, 1, 1, 1)),
    Golden("A", 5, (5,), (1, 1, 1, 1, 1)),
)


def max_rank_for(suite: str, explicit: int | None) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get("KACGEN_MAX_RANK")
    if env:
        return int(env)
    return DEFAULT_MAX_RANK[suite]


def _tags(families: Iterable[Family], max_rank: int, *, diagrams: bool = False) -> list[TypeTag]:
    return [
        TypeTag(fam, r) for fam in families for r in range(min_rank(fam, diagrams=diagrams), max_rank + 1)
    ]


def _run(fn: Callable[[TypeTag], list[CaseResult]], tags: Sequence[TypeTag], jobs: int) -> list[CaseResult]:
    if jobs <= 1 or len(tags) <= 1:
        chunks = [fn(t) for t in tags]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(fn, tags))  # map keeps the input order
    return [case for chunk in chunks for case in chunk]


# ---------------------------------------------------------------------------
# injectivity
# ---------------------------------------------------------------------------


def _first_collision(keys: dict[Partition, object]) -> tuple[Partition, Partition] | None:
    seen: dict[object, Partition] = {}
    for p, key in keys.items():
        if key in seen:
            return seen[key], p
        seen[key] = p
    return None


def charpoly_injectivity(tag: TypeTag) -> CaseResult:
    polys = {p: formula_charpoly(tag, p).expanded for p in admissible_partitions(tag)}
    clash = _first_collision(polys)
    detail = f"{len(polys)} partitions"
    if clash:
        return CaseResult(f"charpoly-distinct {tag}", False, f"{clash[0]} and {clash[1]} share a polynomial")
    return CaseResult(f"charpoly-distinct {tag}", True, detail)


def diagram_injectivity(tag: TypeTag) -> CaseResult:
    name = f"diagram-distinct {tag}"
    if not tag.has_diagram:
        return CaseResult(name, True, "no diagram at this rank")
    labels = {p: kac_diagram(tag, p).labels for p in admissible_partitions(tag)}
    clash = _first_collision(labels)
    if clash:
        return CaseResult(name, False, f"{clash[0]} and {clash[1]} share a diagram")
    return CaseResult(name, True, f"{len(labels)} partitions")


def diagram_identities(tag: TypeTag) -> CaseResult:
    name = f"diagram-identities {tag}"
    if not tag.has_diagram:
        return CaseResult(name, True, "no diagram at this rank")
    count = 0
    for p in admissible_partitions(tag):
        for d in (kac_diagram(tag, p, normalize=False), kac_diagram(tag, p)):
            report = verify_diagram(d)
            count += 1
            if not report.ok:
                return CaseResult(name, False, f"{p}: {report.failures[0]}")
    return CaseResult(name, True, f"{count} diagrams")


def _injectivity_cases(tag: TypeTag) -> list[CaseResult]:
    return [charpoly_injectivity(tag), diagram_injectivity(tag), diagram_identities(tag)]


def injectivity_suite(families: Iterable[Family], max_rank: int, jobs: int = 1) -> list[CaseResult]:
    return _run(_injectivity_cases, _tags(families, max_rank), jobs)


# ---------------------------------------------------------------------------
# oracle agreement
# ---------------------------------------------------------------------------


def oracle_case(tag: TypeTag, p: Partition) -> CaseResult:
    want = formula_charpoly(tag, p).expanded
    got = matrix_oracle_charpoly(lift(tag, p)).expanded
    return CaseResult(f"oracle {tag} {p}", got == want, "" if got == want else f"matrix gives {got}, formula {want}")


def _oracle_cases(tag: TypeTag) -> list[CaseResult]:
    return [oracle_case(tag, p) for p in admissible_partitions(tag)]


def oracle_suite(families: Iterable[Family], max_rank: int, jobs: int = 1) -> list[CaseResult]:
    tags = [
        t
        for t in _tags(families, max_rank)
        if not (t.family is Family.TWO_A and t.rank > TWO_A_ADJOINT_CAP)
    ]
    return _run(_oracle_cases, tags, jobs)


# ---------------------------------------------------------------------------
# goldens and rationality
# ---------------------------------------------------------------------------


def golden_case(g: Golden) -> CaseResult:
    tag, p = g.tag, Partition(g.partition)
    d = kac_diagram(tag, p)
    name = f"example {tag} {p}"
    if d.labels != g.labels:
        return CaseResult(name, False, f"labels {d.labels}, expected {g.labels}")
    report = verify_diagram(d)
    return CaseResult(name, report.ok, "; ".join(report.failures))


def examples_suite() -> list[CaseResult]:
    return [golden_case(g) for g in GOLDENS]


def _rationality_cases(tag: TypeTag) -> list[CaseResult]:
    res = check_rationality(tag)
    detail = f"{res.checked} powers checked"
    if res.counterexample is not None:
        w, j = res.counterexample
        detail = f"w = {w}, w^{j} is not conjugate to w"
    return [CaseResult(f"rational {tag}", res.ok, detail)]


def rationality_suite(families: Iterable[Family], max_rank: int, jobs: int = 1) -> list[CaseResult]:
    return _run(_rationality_cases, _tags(families, max_rank), jobs)


def run_suite(suite: str, families: Sequence[Family] | None, max_rank: int | None, jobs: int = 1) -> list[CaseResult]:
    if suite == "examples":
        return examples_suite()
    cap = max_rank_for(suite, max_rank)
    if suite == "injectivity":
        return injectivity_suite(families or INJECTIVITY_FAMILIES, cap, jobs)
    if suite == "oracle":
        return oracle_suite(families or tuple(Family), cap, jobs)
    if suite == "rationality":
        return rationality_suite(families or RATIONALITY_FAMILIES, cap, jobs)
    raise ValueError(f"unknown suite {suite!r}")
