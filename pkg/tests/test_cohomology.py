import itertools
import math

import pytest

from realbott import (
    BadPartition,
    BottMatrix,
    DimensionMismatch,
    IndexOutOfRange,
    RingElement,
    graded_dimension,
    monomial_str,
    multiply,
    parse_matrix,
    reduce_power_product,
    reduce_square,
    sw_number,
    sw_partitions,
    total_sw_class,
    w1_formula,
    wk_recursive,
)
from realbott.enumeration import enumerate_all
from realbott.fixtures import (
    DIM4_SPIN_LIST,
    load_fixture,
    orientable_not_spin_family,
)

from conftest import random_bott

KLEIN = parse_matrix("0 1\n0 0")


def masks(element):
    return set(element.terms)


class TestRingElement:
    def test_serialization(self):
        assert str(RingElement.zero()) == "0"
        assert str(RingElement.one()) == "1"
        e = RingElement.variable(1) + RingElement.variable(3)
        assert str(e) == "y1+y3"
        assert monomial_str(0b100101) == "y1*y3*y6"
        assert str(RingElement(frozenset({0b11, 0b1}))) == "y1+y1*y2"

    def test_addition_is_symmetric_difference(self):
        a = RingElement(frozenset({0b01, 0b10}))
        b = RingElement(frozenset({0b10, 0b100}))
        assert masks(a + b) == {0b01, 0b100}
        assert (a + a).is_zero()

    def test_degree_part(self):
        e = RingElement(frozenset({0b0, 0b11, 0b101, 0b1}))
        assert masks(e.degree_part(2)) == {0b11, 0b101}
        assert e.is_homogeneous(2) is False
        assert e.degree_part(2).is_homogeneous(2)


class TestReduceSquare:
    def test_zero_matrix(self):
        z = BottMatrix.zero(4)
        for i in range(1, 5):
            assert reduce_square(z, i).is_zero()

    def test_first_variable_always_zero(self, rng):
        for _ in range(20):
            m = random_bott(rng, rng.randint(1, 7))
            assert reduce_square(m, 1).is_zero()

    def test_digraph_example(self):
        # third column has ones in rows 1 and 2
        m = load_fixture("digraph_c")
        assert masks(reduce_square(m, 3)) == {0b101, 0b110}

    def test_top_variable_uses_last_column(self):
        m = parse_matrix("0 0 1\n0 0 1\n0 0 0")
        assert masks(reduce_square(m, 3)) == {0b101, 0b110}

    def test_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            reduce_square(BottMatrix.zero(3), 4)

    def test_homogeneous_degree_two(self, rng):
        for _ in range(30):
            m = random_bott(rng, rng.randint(2, 7))
            i = rng.randint(1, m.n)
            assert reduce_square(m, i).is_homogeneous(2)


class TestMultiply:
    def test_one_is_identity(self, rng):
        one = RingElement.one()
        for _ in range(20):
            m = random_bott(rng, 5)
            e = RingElement(frozenset(rng.sample(range(32), rng.randint(0, 6))))
            assert multiply(m, one, e) == e
            assert multiply(m, e, one) == e

    def test_square_dies_over_zero_matrix(self):
        z = BottMatrix.zero(3)
        y1 = RingElement.variable(1)
        assert multiply(z, y1, y1).is_zero()

    def test_single_substitution(self):
        m = load_fixture("digraph_b")  # columns 3 has ones in rows 1,2
        y3 = RingElement.variable(3)
        assert masks(multiply(m, y3, y3)) == {0b101, 0b110}

    def test_dimension_mismatch(self):
        z = BottMatrix.zero(2)
        with pytest.raises(DimensionMismatch):
            multiply(z, RingElement.variable(5), RingElement.one())

    def test_matches_plain_reduction(self, rng):
        for _ in range(200):
            n = rng.randint(2, 7)
            m = random_bott(rng, n)
            a = rng.sample(range(1, n + 1), rng.randint(1, n))
            b = rng.sample(range(1, n + 1), rng.randint(1, n))
            ea = RingElement(frozenset((_mask(a),)))
            eb = RingElement(frozenset((_mask(b),)))
            assert multiply(m, ea, eb) == reduce_power_product(m, sorted(a + b))

    def test_commutative_associative(self, rng):
        for _ in range(60):
            n = rng.randint(2, 6)
            m = random_bott(rng, n)
            a, b, c = (_random_element(rng, n) for _ in range(3))
            assert multiply(m, a, b) == multiply(m, b, a)
            assert multiply(m, multiply(m, a, b), c) == multiply(
                m, a, multiply(m, b, c)
            )

    def test_homogeneous_products(self, rng):
        for _ in range(50):
            n = rng.randint(2, 7)
            m = random_bott(rng, n)
            p = rng.randint(1, n)
            q = rng.randint(1, n)
            a = _random_homogeneous(rng, n, p)
            b = _random_homogeneous(rng, n, q)
            prod = multiply(m, a, b)
            assert prod.is_homogeneous(p + q)


def _mask(indices):
    out = 0
    for i in indices:
        out |= 1 << (i - 1)
    return out


def _random_element(rng, n):
    return RingElement(
        frozenset(rng.sample(range(1 << n), rng.randint(0, min(6, 1 << n))))
    )


def _random_homogeneous(rng, n, k):
    combos = list(itertools.combinations(range(n), k))
    picked = rng.sample(combos, min(len(combos), rng.randint(1, 3)))
    return RingElement(frozenset(sum(1 << b for b in combo) for combo in picked))


class TestReductionOrders:
    def test_orders_agree(self, rng):
        for _ in range(300):
            n = rng.randint(2, 7)
            m = random_bott(rng, n)
            mono = sorted(rng.choices(range(1, n + 1), k=rng.randint(2, 2 * n)))
            hi = reduce_power_product(m, mono, order="highest")
            lo = reduce_power_product(m, mono, order="lowest")
            assert hi == lo

    def test_bad_order_rejected(self):
        with pytest.raises(ValueError):
            reduce_power_product(BottMatrix.zero(2), [1], order="middle")

    def test_square_free_input_is_fixed(self, rng):
        for _ in range(40):
            n = rng.randint(1, 7)
            m = random_bott(rng, n)
            combo = rng.sample(range(1, n + 1), rng.randint(0, n))
            nf = reduce_power_product(m, combo)
            assert masks(nf) == {_mask(combo)}


class TestGradedDimension:
    def test_degree_zero(self):
        assert graded_dimension(BottMatrix.zero(5), 0) == 1

    def test_binomials(self):
        m = load_fixture("digraph_c")
        assert graded_dimension(m, 2) == 10

    def test_top_class(self, rng):
        m = random_bott(rng, 6)
        assert graded_dimension(m, 6) == 1

    def test_full_table(self, rng):
        for n in range(1, 7):
            m = random_bott(rng, n)
            for k in range(n + 1):
                assert graded_dimension(m, k) == math.comb(n, k)
        assert graded_dimension(m, 99) == 0


class TestTotalClass:
    def test_zero_matrix(self):
        profile = total_sw_class(BottMatrix.zero(5))
        assert all(w.is_zero() for w in profile.classes[1:])
        assert profile.orientable and profile.spin

    def test_klein_bottle(self):
        profile = total_sw_class(KLEIN)
        assert str(profile.classes[1]) == "y1"
        assert not profile.orientable
        assert profile.spin is None

    def test_circle(self):
        profile = total_sw_class(BottMatrix.zero(1))
        assert len(profile.classes) == 2
        assert profile.orientable and profile.spin

    def test_digraph_example_not_spin(self):
        profile = total_sw_class(load_fixture("digraph_c"))
        assert profile.classes[1].is_zero()
        assert not profile.classes[2].is_zero()
        assert profile.spin is False

    def test_family_orientable_not_spin(self):
        profile = total_sw_class(orientable_not_spin_family(5))
        assert profile.classes[1].is_zero()
        assert not profile.classes[2].is_zero()

    def test_json_shape(self):
        d = total_sw_class(KLEIN).to_json_dict()
        assert set(d) == {"w", "orientable", "spin", "sw_numbers_all_zero"}
        assert d["w"][0] == "1"
        assert d["spin"] is None
        assert d["sw_numbers_all_zero"] is True

    def test_classes_homogeneous(self, rng):
        for _ in range(30):
            m = random_bott(rng, rng.randint(1, 7))
            profile = total_sw_class(m)
            assert len(profile.classes) == m.n + 1
            assert str(profile.classes[0]) == "1"
            for k, w in enumerate(profile.classes):
                assert w.is_homogeneous(k)


class TestFirstClassFormula:
    def test_zero(self):
        assert w1_formula(BottMatrix.zero(4)).is_zero()

    def test_klein(self):
        assert str(w1_formula(KLEIN)) == "y1"

    def test_spin_list_all_zero(self):
        for name in DIM4_SPIN_LIST:
            assert w1_formula(load_fixture(name)).is_zero()

    def test_matches_expansion(self, rng):
        for n in range(1, 6):
            for m in enumerate_all(n):
                assert w1_formula(m) == total_sw_class(m).classes[1]
        for _ in range(100):
            m = random_bott(rng, 8)
            assert w1_formula(m) == total_sw_class(m).classes[1]


class TestRecursion:
    def test_degree_one_base(self, rng):
        for _ in range(30):
            m = random_bott(rng, rng.randint(1, 7))
            assert wk_recursive(m, 1) == w1_formula(m)

    def test_spin_digraph_example_degree_two(self):
        assert wk_recursive(load_fixture("digraph_a"), 2).is_zero()

    def test_matches_expansion_all_degrees(self, rng):
        for _ in range(100):
            n = rng.randint(1, 6)
            m = random_bott(rng, n)
            profile = total_sw_class(m)
            for k in range(1, n + 1):
                assert wk_recursive(m, k) == profile.classes[k]

    def test_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            wk_recursive(BottMatrix.zero(3), 0)
        with pytest.raises(IndexOutOfRange):
            wk_recursive(BottMatrix.zero(3), 4)


class TestSWNumbers:
    def test_partition_generation(self):
        # partition counts of 1..8
        for n, expected in zip(range(1, 9), [1, 2, 3, 5, 7, 11, 15, 22]):
            parts = list(sw_partitions(n))
            assert len(parts) == expected
            assert len(set(parts)) == expected
            for r in parts:
                assert len(r) == n
                assert sum(i * ri for i, ri in enumerate(r, 1)) == n

    def test_zero_matrix_all_zero(self):
        profile = total_sw_class(BottMatrix.zero(4))
        for r in sw_partitions(4):
            assert sw_number(profile, r) == 0

    def test_top_class_exponent(self, rng):
        # the class of degree n alone: its top coefficient always vanishes
        for _ in range(20):
            n = rng.randint(2, 7)
            profile = total_sw_class(random_bott(rng, n))
            r = tuple(0 if i < n else 1 for i in range(1, n + 1))
            assert sw_number(profile, r) == 0

    def test_bad_partition(self):
        profile = total_sw_class(BottMatrix.zero(3))
        with pytest.raises(BadPartition):
            sw_number(profile, (1, 1, 1))
        with pytest.raises(BadPartition):
            sw_number(profile, (3,))

    def test_all_numbers_vanish_random(self, rng):
        for _ in range(100):
            m = random_bott(rng, rng.randint(1, 7))
            assert total_sw_class(m).sw_numbers_all_zero


class TestStructuralFacts:
    def test_top_degree_class_always_zero(self, rng):
        # classes only involve the first n-1 variables, so w_n = 0
        for _ in range(50):
            n = rng.randint(2, 7)
            m = random_bott(rng, n)
            assert total_sw_class(m).classes[n].is_zero()

    def test_wu_consequence_small(self):
        for n in range(3, 6):
            for m in enumerate_all(n):
                profile = total_sw_class(m)
                if profile.classes[1].is_zero() and profile.classes[2].is_zero():
                    assert profile.classes[3].is_zero()
