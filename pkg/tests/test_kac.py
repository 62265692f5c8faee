from __future__ import annotations

import json
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kacgen.campaigns import GOLDENS
from kacgen.charpoly import canonical_m, formula_charpoly
from kacgen.core_types import Family, Partition, TypeTag, admissible_partitions, min_rank, roots_mod
from kacgen.errors import NonIntegerEntry
from kacgen.kac import (
    DiagramParseError,
    KacDiagram,
    kac_diagram,
    parse,
    render,
    sigma_list,
    torus_exponents,
    verify_diagram,
)

SWEEP = [TypeTag(f, r) for f in Family for r in range(min_rank(f, diagrams=True), 13)]


def _recipe(tag: TypeTag, p: Partition) -> list[Fraction]:
    """The per-type list construction written out with rationals, for comparison."""
    m, mu, fam, ell = canonical_m(tag, p), p.mu, tag.family, tag.rank
    out: list[Fraction] = []
    for x in p.parts:
        if fam in (Family.B, Family.D, Family.TWO_D):
            out += [Fraction(m * a, 2 * x) for a in range(1, x)]
        elif fam is Family.C:
            out += [Fraction((2 * a - 1) * m, 4 * x) for a in range(1, x + 1)]
        elif ell % 2 == 0:
            out += [Fraction((2 * a - 1) * m, 2 * x) for a in range(1, x) if a < Fraction(x, 2)]
        else:
            out += [Fraction(a * m, 2 * x) for a in range(1, x) if a < Fraction(x, 2)]
    half = Fraction(m, 2)
    extra = {
        Family.B: [half] * -(-mu // 2) + [Fraction(0)] * (mu // 2),
        Family.C: [],
        Family.D: [half] * (mu // 2) + [Fraction(0)] * (mu // 2),
        Family.TWO_D: [half] * ((mu - 1) // 2) + [Fraction(0)] * ((mu - 1) // 2),
    }
    if fam is Family.TWO_A:
        out += [half] * (mu // 2) if ell % 2 == 0 else [Fraction(0)] * ((mu - 1) // 2)
    else:
        out += extra[fam]
    return sorted(out, reverse=True)


class TestSigma:
    def test_b_5441(self):
        s = sigma_list(TypeTag.parse("B", 14), Partition((5, 4, 4, 1)))
        assert s.m == 40
        assert s.values == (20, 20, 16, 15, 15, 12, 10, 10, 8, 5, 5, 4, 0, 0)

    def test_c_21(self):
        assert sigma_list(TypeTag.parse("C", 3), Partition((2, 1))).values == (3, 2, 1)

    def test_2d_543(self):
        s = sigma_list(TypeTag.parse("2D", 11), Partition((5, 4, 3)))
        assert s.m == 120
        assert s.values == (60, 48, 45, 40, 36, 30, 24, 20, 15, 12, 0)

    def test_wrong_modulus(self):
        with pytest.raises(NonIntegerEntry):
            sigma_list(TypeTag.parse("C", 3), Partition((2, 1)), m=6)

    @pytest.mark.parametrize("tag", [t for t in SWEEP if t.family is not Family.A], ids=str)
    def test_matches_rational_recipe(self, tag):
        for p in admissible_partitions(tag):
            s = sigma_list(tag, p)
            assert [Fraction(v) for v in s.values] == _recipe(tag, p)
            assert 2 * s.values[0] <= s.m
            assert len(s.values) == (tag.rank // 2 if tag.family is Family.TWO_A else tag.rank)


class TestTorus:
    def test_examples(self):
        c = torus_exponents(TypeTag.parse("C", 3), sigma_list(TypeTag.parse("C", 3), Partition((2, 1))))
        assert c.exponents == (3, 2, 1, -1, -2, -3)
        b = TypeTag.parse("B", 2)
        assert torus_exponents(b, sigma_list(b, Partition((1, 1)))).exponents == (1, 0, 0, 0, -1)
        d = TypeTag.parse("2D", 2)
        assert torus_exponents(d, sigma_list(d, Partition((1, 1, 1)))).exponents == (1, 0, 0, 0, 0, -1)

    @pytest.mark.parametrize("family", [Family.A, Family.B, Family.C, Family.D])
    def test_eigenvalues_match_lift(self, family):
        # d is conjugate to the lift, so its diagonal exponents are the roots of q
        for r in range(min_rank(family), 10):
            tag = TypeTag(family, r)
            for p in admissible_partitions(tag):
                te = torus_exponents(tag, sigma_list(tag, p))
                got = Counter(a % te.modulus for a in te.exponents)
                want = roots_mod(formula_charpoly(tag, p).factored, te.modulus).as_dict()
                assert dict(got) == want, (tag, p)

    @pytest.mark.parametrize("tag", SWEEP, ids=str)
    def test_mirror_symmetry(self, tag):
        for p in admissible_partitions(tag):
            a = torus_exponents(tag, sigma_list(tag, p)).exponents
            if tag.family is not Family.A:
                assert a == tuple(-x for x in reversed(a))


class TestLabels:
    @pytest.mark.parametrize("g", GOLDENS, ids=lambda g: f"{g.family}{g.rank}-{g.partition}")
    def test_goldens(self, g):
        d = kac_diagram(g.tag, Partition(g.partition))
        assert d.labels == g.labels
        assert verify_diagram(d).ok

    @pytest.mark.parametrize("rank", range(2, 13))
    def test_type_a_all_ones(self, rank):
        d = kac_diagram(TypeTag.parse("A", rank), Partition((rank,)))
        assert set(d.labels) == {1}

    @pytest.mark.parametrize("tag", SWEEP, ids=str)
    def test_identities_over_sweep(self, tag):
        for p in admissible_partitions(tag):
            raw = kac_diagram(tag, p, normalize=False)
            assert verify_diagram(raw).ok, verify_diagram(raw).failures
            norm = raw.normalize()
            assert verify_diagram(norm).ok, verify_diagram(norm).failures

    def test_corrupted_label_is_flagged(self):
        d = kac_diagram(TypeTag.parse("B", 14), Partition((5, 4, 4, 1)))
        bad = KacDiagram(d.tag, d.partition, d.m, (1,) + d.labels[1:], d.normalized, d.removed_gcd)
        report = verify_diagram(bad)
        assert not report.ok
        assert any(f.startswith("order from labels") for f in report.failures)

    def test_twoA_even_halved_coweights(self):
        d = kac_diagram(TypeTag.parse("2A", 4), Partition((3, 1)), normalize=False)
        names = dict((n, ok) for n, ok, _ in verify_diagram(d).checks)
        assert names["coweight identity"] and names["order from labels"]


class TestRender:
    def test_c21_ascii(self):
        text = render(kac_diagram(TypeTag.parse("C", 3), Partition((2, 1))))
        assert text.splitlines()[1] == "2 => 1 - 1 <= 2"

    def test_a3_triangle(self):
        text = render(kac_diagram(TypeTag.parse("A", 3), Partition((3,))))
        assert text.splitlines()[1:] == ["1 - 1", "branch: g0=1 @ g1,g2"]

    def test_b_branch_and_json(self):
        d = kac_diagram(TypeTag.parse("B", 14), Partition((5, 4, 4, 1)))
        lines = render(d).splitlines()
        assert lines[1].startswith("0 - 4 - 1") and lines[1].endswith("0 => 0")
        assert lines[2] == "branch: g0=0 @ g2"
        data = json.loads(render(d, "json"))
        assert data["family"] == "B" and data["twist"] == 1 and data["m"] == 40
        assert list(data["labels"]) == [f"g{k}" for k in range(15)]
        assert data["sigma"][:3] == [20, 20, 16]

    def test_quadruple_bond(self):
        text = render(kac_diagram(TypeTag.parse("2A", 3), Partition((3,))))
        assert "≡>" in text.splitlines()[1]

    def test_parse_errors(self):
        good = render(kac_diagram(TypeTag.parse("C", 3), Partition((2, 1))))
        with pytest.raises(DiagramParseError):
            parse(good.replace("=>", "->"))
        with pytest.raises(DiagramParseError):
            parse("2 => 1")
        with pytest.raises(DiagramParseError):
            parse("")


_cases = st.sampled_from(SWEEP).flatmap(lambda t: st.tuples(st.just(t), st.sampled_from(list(admissible_partitions(t)))))


@given(_cases, st.booleans(), st.sampled_from(["ascii", "json"]))
@settings(max_examples=100, deadline=None)
def test_round_trip(case, normalize, fmt):
    tag, p = case
    d = kac_diagram(tag, p, normalize=normalize)
    assert parse(render(d, fmt), fmt) == d


@given(st.sampled_from(SWEEP), st.data())
@settings(max_examples=100, deadline=None)
def test_round_trip_arbitrary_labels(tag, data):
    # serialization must not depend on the labels being consistent with m
    p = next(iter(admissible_partitions(tag)))
    size = kac_diagram(tag, p).diagram.size
    labels = tuple(data.draw(st.lists(st.integers(0, 99), min_size=size, max_size=size)))
    d = KacDiagram(tag, p, canonical_m(tag, p), labels)
    assert parse(render(d, "ascii"), "ascii") == d
    assert parse(render(d, "json"), "json") == d
