"""Torus points, divisors, and degree-zero line bundle classes."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ellfib.errors import NonZeroDegree
from ellfib.torus import (
    ORIGIN,
    TorusPoint,
    divisor_class,
    make_divisor,
    point_class,
    point_divisor,
)

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=12)
points = st.builds(TorusPoint, rationals, rationals)


def test_coordinates_reduce_mod_one():
    p = TorusPoint(Fraction(7, 3), Fraction(-1, 4))
    assert p.u == Fraction(1, 3)
    assert p.v == Fraction(3, 4)


def test_int_and_string_coordinates_accepted():
    assert TorusPoint(1, "1/2") == TorusPoint(Fraction(0), Fraction(1, 2))


def test_float_coordinates_rejected():
    with pytest.raises(TypeError):
        TorusPoint(0.5, Fraction(0))


@given(points, points, points)
def test_addition_is_an_abelian_group(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a + ORIGIN == a
    assert (a + (-a)).is_zero()


@given(points, st.integers(min_value=-6, max_value=6))
def test_scale_matches_repeated_addition(p, n):
    total = ORIGIN
    for _ in range(abs(n)):
        total = total + p
    if n < 0:
        total = -total
    assert p.scale(n) == total


def test_order_is_lcm_of_denominators():
    assert TorusPoint(Fraction(1, 3), Fraction(1, 4)).order() == 12
    assert ORIGIN.order() == 1
    assert TorusPoint(Fraction(5, 6), Fraction(0)).order() == 6


@given(points)
def test_order_annihilates(p):
    assert p.scale(p.order()).is_zero()


def test_points_are_ordered_and_hashable():
    a = TorusPoint(Fraction(1, 3), Fraction(0))
    b = TorusPoint(Fraction(1, 2), Fraction(0))
    assert a < b
    assert len({a, b, TorusPoint(Fraction(1, 3), Fraction(0))}) == 2


def test_make_divisor_merges_and_drops_zeros():
    p = TorusPoint(Fraction(1, 2), Fraction(0))
    q = TorusPoint(Fraction(1, 3), Fraction(0))
    d = make_divisor([(p, 2), (q, 1), (p, -2)])
    assert d.terms == ((q, 1),)
    assert d.degree() == 1


def test_make_divisor_rejects_non_integer_multiplicity():
    with pytest.raises(TypeError):
        make_divisor([(ORIGIN, Fraction(1, 2))])


def test_divisor_terms_sorted_canonically():
    p = TorusPoint(Fraction(2, 3), Fraction(0))
    q = TorusPoint(Fraction(1, 3), Fraction(0))
    d = make_divisor([(p, 1), (q, 1)])
    assert d.terms == ((q, 1), (p, 1))


@given(st.lists(st.tuples(points, st.integers(-3, 3)), max_size=6))
def test_divisor_sum_and_negation(pairs):
    d = make_divisor(pairs)
    assert (d - d).terms == ()
    assert d.degree() == sum(m for _, m in pairs)


def test_points_sum_weights_by_multiplicity():
    p = TorusPoint(Fraction(1, 4), Fraction(0))
    d = make_divisor([(p, 3)])
    assert d.points_sum() == TorusPoint(Fraction(3, 4), Fraction(0))


def test_divisor_class_requires_degree_zero():
    with pytest.raises(NonZeroDegree):
        divisor_class(point_divisor(ORIGIN, 1))


def test_divisor_class_of_point_minus_origin():
    x = TorusPoint(Fraction(1, 5), Fraction(2, 5))
    d = point_divisor(x, 1) + point_divisor(ORIGIN, -1)
    assert divisor_class(d) == point_class(x)


@given(points, points)
def test_class_sum_matches_tensor(x, y):
    # [x] + [y] - 2[0] and the tensor of the two single-point classes agree
    d = (
        point_divisor(x, 1)
        + point_divisor(y, 1)
        + point_divisor(ORIGIN, -2)
    )
    assert divisor_class(d) == point_class(x).tensor(point_class(y))


@given(points)
def test_dual_inverts_tensor(x):
    c = point_class(x)
    assert c.tensor(c.dual()).is_trivial()


def test_trivial_class_detection():
    assert point_class(ORIGIN).is_trivial()
    assert not point_class(TorusPoint(Fraction(1, 2), Fraction(0))).is_trivial()
