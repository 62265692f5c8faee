from __future__ import annotations

import random

import pytest

from kacgen.charpoly import canonical_m, matrix_oracle_charpoly
from kacgen.core_types import GI, Family, GaussInt, Partition, TypeTag, admissible_partitions, min_rank
from kacgen.errors import IndexOutOfRange, UnsupportedType
from kacgen.lifts import (
    LiftMatrix,
    TwistedElement,
    apply_theta,
    element_order,
    generator,
    lift,
    lift_tilde,
    matrix_size,
    membership_violation,
    product,
)


def _rows(g: LiftMatrix) -> list[list[int]]:
    return g.int_rows()


def random_group_element(tag: TypeTag, rng: random.Random, length: int = 12) -> LiftMatrix:
    """A random word in the simple generators (all of which lie in the group)."""
    ell = tag.rank
    gens = []
    if tag.family in (Family.A, Family.TWO_A):
        gens = [generator(tag, "s_k", k) for k in range(1, ell)]
    elif tag.family is Family.TWO_D:
        gens = [generator(tag, "s_k", k) for k in range(1, ell + 1)]
    else:
        gens = [generator(tag, "s_k", k) for k in range(1, ell)] + [generator(tag, "t_ell")]
    n = matrix_size(tag)
    return product([rng.choice(gens) for _ in range(length)], n, tag)


class TestGenerators:
    def test_a2_s1(self):
        assert _rows(generator(TypeTag.parse("A", 2), "s_k", 1)) == [[0, 1], [-1, 0]]

    def test_b2_t2(self):
        want = [[1, 0, 0, 0, 0], [0, 0, 0, 1, 0], [0, 0, -1, 0, 0], [0, 1, 0, 0, 0], [0, 0, 0, 0, 1]]
        assert _rows(generator(TypeTag.parse("B", 2), "t_ell")) == want
        assert _rows(generator(TypeTag.parse("B", 2), "t_k", 2)) == want

    def test_2a4_j(self):
        tag = TypeTag.parse("2A", 4)
        J = generator(tag, "J")
        assert J.entries[3][0] == GI and J.entries[0][3] == -GI
        assert J.det() == 1
        assert not J.is_identity() and (J @ J).is_identity()

    def test_j_determinant_rule(self):
        for ell in range(3, 10):
            J = generator(TypeTag.parse("2A", ell), "J")
            assert J.det() == (-1) ** (ell // 2)

    @pytest.mark.parametrize("family,order", [("A", 4), ("C", 2), ("B", 2), ("D", 2), ("2D", 2), ("2A", 4)])
    def test_simple_generator_orders(self, family, order):
        tag = TypeTag.parse(family, 4)
        s = generator(tag, "s_k", 1)
        powers = [s]
        for _ in range(order - 1):
            powers.append(powers[-1] @ s)
        assert powers[-1].is_identity()
        assert not any(p.is_identity() for p in powers[:-1])

    def test_t_k_is_conjugated_t_ell(self):
        tag = TypeTag.parse("C", 4)
        s = {k: generator(tag, "s_k", k) for k in range(1, 4)}
        want = s[2] @ s[3] @ generator(tag, "t_ell") @ s[3] @ s[2]
        assert generator(tag, "t_k", 2) == want

    def test_index_checks(self):
        with pytest.raises(IndexOutOfRange):
            generator(TypeTag.parse("B", 3), "s_k", 3)
        with pytest.raises(IndexOutOfRange):
            generator(TypeTag.parse("2D", 3), "t_k", 5)
        with pytest.raises(UnsupportedType):
            generator(TypeTag.parse("C", 3), "J")


class TestLifts:
    def test_type_a_is_signed_cycle(self):
        tag = TypeTag.parse("A", 5)
        g = lift(tag, Partition((5,))).matrix
        rows_of_col, _ = g.monomial_data()
        seen, j = set(), 0
        for _ in range(5):
            seen.add(j)
            j = rows_of_col[j]
        assert seen == set(range(5)) and j == 0

    def test_d_two_two(self):
        g = lift(TypeTag.parse("D", 4), Partition((2, 2))).matrix
        assert g.det() == 1

    def test_2a5_single_part(self):
        tag = TypeTag.parse("2A", 5)
        tilde = lift_tilde(tag, Partition((5,)))
        assert tilde == product([generator(tag, "s_k", k) for k in range(1, 5)], 5, tag)
        e = lift(tag, Partition((5,)))
        assert e.twisted and e.matrix == tilde @ generator(tag, "J")

    def test_2a_diagonal_first_block(self):
        # l = 6 is 2 mod 4 and the smallest part is 1: the first block is Diag(-1, 1, ..., 1)
        tag = TypeTag.parse("2A", 6)
        tilde = lift_tilde(tag, Partition((1, 1, 1, 1, 1, 1)))
        assert _rows(tilde)[0][0] == -1 and _rows(tilde)[1][1] == 1

    def test_twisted_flag_checked(self):
        tag = TypeTag.parse("B", 3)
        with pytest.raises(ValueError):
            TwistedElement(lift(tag, Partition((3,))).matrix, True, tag)

    @pytest.mark.parametrize("family", list(Family))
    def test_membership_up_to_rank_ten(self, family):
        for r in range(min_rank(family), 11):
            tag = TypeTag(family, r)
            for p in admissible_partitions(tag):
                g = lift(tag, p).matrix
                assert membership_violation(tag, g) is None, (tag, p)


class TestOrders:
    @pytest.mark.parametrize("rank,order", [(4, 8), (5, 5), (2, 4), (3, 3)])
    def test_type_a(self, rank, order):
        tag = TypeTag.parse("A", rank)
        assert element_order(lift(tag, Partition((rank,)))) == order

    def test_c21(self):
        tag = TypeTag.parse("C", 3)
        assert element_order(lift(tag, Partition((2, 1)))) == 8

    @pytest.mark.parametrize("family", [Family.B, Family.C, Family.D, Family.TWO_D, Family.TWO_A])
    def test_orders_match_canonical_m(self, family):
        for r in range(min_rank(family), 7):
            tag = TypeTag(family, r)
            for p in admissible_partitions(tag):
                e = lift(tag, p)
                m = canonical_m(tag, p)
                if family is Family.TWO_A and r % 2 == 0:
                    # the lift squares to a nontrivial central element after m steps
                    assert element_order(e) == 2 * m
                    assert element_order(e, modulo_centre=True) == m
                else:
                    assert element_order(e) == m


class TestTheta:
    @pytest.mark.parametrize("family", ["2A", "2D"])
    def test_involution(self, family):
        rng = random.Random(7)
        for r in range(3, 8):
            tag = TypeTag.parse(family, r)
            for _ in range(5):
                g = random_group_element(tag, rng)
                assert apply_theta(tag, apply_theta(tag, g)) == g

    def test_theta_of_j(self):
        for ell in range(3, 10):
            tag = TypeTag.parse("2A", ell)
            J = generator(tag, "J")
            if ell % 2:
                assert apply_theta(tag, J) == J
            else:
                assert apply_theta(tag, J) == J.scaled(-1)
        tag = TypeTag.parse("2D", 4)
        J = generator(tag, "J")
        assert apply_theta(tag, J) == J

    def test_theta_on_torus_reverses_and_negates(self):
        units = [GaussInt(1), GI, GaussInt(-1), -GI]  # xi = i, exponent e -> i^e
        rng = random.Random(3)
        for ell in (4, 5):
            tag = TypeTag.parse("2A", ell)
            exps = [rng.randrange(4) for _ in range(ell)]
            d = LiftMatrix.from_entries(ell, {(k + 1, k + 1): units[e] for k, e in enumerate(exps)}, base_identity=False)
            image = apply_theta(tag, d)
            want = [(-exps[ell - 1 - k]) % 4 for k in range(ell)]
            assert [image.entries[k][k] for k in range(ell)] == [units[e] for e in want]

    def test_untwisted_rejected(self):
        tag = TypeTag.parse("C", 3)
        with pytest.raises(UnsupportedType):
            apply_theta(tag, generator(tag, "s_k", 1))

    @pytest.mark.parametrize("family,rank", [("2A", 4), ("2A", 5), ("2D", 3), ("2D", 4)])
    def test_charpoly_is_theta_conjugation_invariant(self, family, rank):
        rng = random.Random(11)
        tag = TypeTag.parse(family, rank)
        for p in admissible_partitions(tag):
            e = lift(tag, p)
            want = matrix_oracle_charpoly(e).expanded
            for _ in range(50 if p == next(iter(admissible_partitions(tag))) else 5):
                g = random_group_element(tag, rng)
                moved = TwistedElement(g @ e.matrix @ apply_theta(tag, g.inverse()), True, tag)
                assert matrix_oracle_charpoly(moved).expanded == want
