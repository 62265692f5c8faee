from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kacgen.core_types import Family, TypeTag, min_rank
from kacgen.errors import AllZeroLabels, UnsupportedType
from kacgen.rootdata import coweight_table, diagram_for, kac_point, semisimple_rank

ALL_TAGS = [TypeTag(f, r) for f in Family for r in range(min_rank(f, diagrams=True), 13)]


def test_c3_marks_and_bonds():
    d = diagram_for(TypeTag.parse("C", 3))
    assert d.marks_b == (1, 2, 2, 1)
    assert d.chain == (0, 1, 2, 3)
    assert d.chain_bonds == ("=>", "-", "<=")
    ends = [e for e in d.edges if e.multiplicity == 2]
    assert [(e.a, e.b, e.arrow) for e in ends] == [(0, 1, "right"), (2, 3, "left")]


def test_a2_double_arrow():
    d = diagram_for(TypeTag.parse("A", 2))
    assert d.size == 2 and d.marks_b == (1, 1)
    assert d.chain_bonds == ("<=>",)


def test_twisted_odd_small_ranks():
    three = diagram_for(TypeTag.parse("2A", 3))
    assert three.size == 2 and three.marks_b == (1, 2)
    assert three.edges[0].multiplicity == 4
    five = diagram_for(TypeTag.parse("2A", 5))
    assert five.size == 3 and five.marks_b == (1, 2, 2)
    assert five.chain_bonds == ("=>", "=>")


def test_twisted_even_small_rank():
    d = diagram_for(TypeTag.parse("2A", 4))
    assert d.marks_b == (1, 1, 1) and d.marks_c == (1, 1, 2)
    assert d.chain == (0, 2, 1)


def test_listed_b_marks():
    assert diagram_for(TypeTag.parse("B", 5)).marks_b == (1, 1, 2, 2, 2, 2)
    assert diagram_for(TypeTag.parse("D", 6)).marks_b == (1, 1, 2, 2, 2, 1, 1)
    assert diagram_for(TypeTag.parse("2A", 8)).marks_b == (1, 1, 2, 2, 1)
    assert diagram_for(TypeTag.parse("2A", 9)).marks_b == (1, 2, 2, 2, 2)
    assert diagram_for(TypeTag.parse("2D", 4)).marks_b == (1, 1, 1, 1, 1)


def test_no_diagram_below_bound():
    with pytest.raises(UnsupportedType):
        diagram_for(TypeTag.parse("B", 2))
    with pytest.raises(UnsupportedType):
        diagram_for(TypeTag.parse("D", 3))


@pytest.mark.parametrize("tag", ALL_TAGS, ids=str)
def test_structure(tag):
    d = diagram_for(tag)
    assert d.size == semisimple_rank(tag) + 1
    assert d.marks_b[0] == d.marks_c[0] == 1
    if not tag.twisted:
        assert d.marks_b == d.marks_c
        assert set(d.orbit_size) == {1}
    # every node appears exactly once in the layout
    placed = list(d.chain) + [b.node for b in d.branches]
    assert sorted(placed) == list(range(d.size))
    assert coweight_table(tag).pairing_violations(d) == []


@pytest.mark.parametrize(
    "family,rank,labels,m,point",
    [
        ("A", 2, (1, 1), 2, (Fraction(1, 2), Fraction(1, 2))),
        ("C", 2, (1, 0, 1), 2, (Fraction(1, 2), Fraction(0), Fraction(1, 2))),
        ("2A", 4, (0, 1, 0), 2, (Fraction(0), Fraction(1), Fraction(0))),
    ],
)
def test_kac_point_examples(family, rank, labels, m, point):
    x, got_m = kac_point(labels, TypeTag.parse(family, rank))
    assert got_m == m
    assert x.barycentric == point


def test_all_zero_labels():
    with pytest.raises(AllZeroLabels):
        kac_point((0, 0, 0, 0), TypeTag.parse("C", 3))


@given(st.sampled_from(ALL_TAGS), st.data())
def test_barycentric_sums_to_one(tag, data):
    size = diagram_for(tag).size
    labels = data.draw(st.lists(st.integers(0, 20), min_size=size, max_size=size).filter(any))
    x, m = kac_point(labels, tag)
    assert x.is_valid()
    assert m == tag.twist_order * sum(s * b for s, b in zip(labels, diagram_for(tag).marks_b))
