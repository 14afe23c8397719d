"""Canonical block form of semistable bundles and their graded classes."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ellfib.bundles import (
    direct_sum,
    determinant,
    dual_bundle,
    dual_graded,
    graded,
    make_bundle,
    make_graded,
    s_equivalent,
    split_bundle,
    tensor_line,
    tensor_line_graded,
)
from ellfib.errors import EmptyBundle, NonPositiveRank
from ellfib.torus import ORIGIN, TorusPoint, point_class

rationals = st.fractions(min_value=0, max_value=1, max_denominator=8)
points = st.builds(TorusPoint, rationals, rationals)
blocks = st.lists(
    st.tuples(st.integers(min_value=1, max_value=3), points), min_size=1, max_size=5
)


def half() -> TorusPoint:
    return TorusPoint(Fraction(1, 2), Fraction(0))


def test_blocks_sorted_by_point_then_rank():
    b = make_bundle([(2, half()), (1, ORIGIN), (1, half())])
    assert b.blocks == ((1, ORIGIN), (1, half()), (2, half()))


def test_make_bundle_rejects_empty_and_bad_ranks():
    with pytest.raises(EmptyBundle):
        make_bundle([])
    with pytest.raises(NonPositiveRank):
        make_bundle([(0, ORIGIN)])
    with pytest.raises(NonPositiveRank):
        make_bundle([(-1, ORIGIN)])


def test_rank_and_degree():
    b = make_bundle([(2, ORIGIN), (3, half())])
    assert b.rank() == 5
    assert b.degree() == 0


def test_graded_collapses_towers():
    b = make_bundle([(3, ORIGIN), (2, half()), (1, half())])
    g = graded(b)
    assert g.parts == ((ORIGIN, 3), (half(), 3))
    assert g.rank() == b.rank()


def test_make_graded_merges_and_validates():
    g = make_graded([(ORIGIN, 1), (ORIGIN, 2)])
    assert g.parts == ((ORIGIN, 3),)
    with pytest.raises(EmptyBundle):
        make_graded([])
    with pytest.raises(NonPositiveRank):
        make_graded([(ORIGIN, 0)])


def test_s_equivalence_ignores_tower_structure():
    tower = make_bundle([(3, half())])
    split = make_bundle([(1, half()), (1, half()), (1, half())])
    mixed = make_bundle([(2, half()), (1, half())])
    assert s_equivalent(tower, split)
    assert s_equivalent(tower, mixed)
    assert not s_equivalent(tower, make_bundle([(3, ORIGIN)]))


@given(blocks, points)
def test_tensor_line_shifts_every_block(raw, t):
    b = make_bundle(raw)
    shifted = tensor_line(b, t)
    assert shifted.rank() == b.rank()
    assert graded(shifted) == tensor_line_graded(graded(b), t)
    assert tensor_line(shifted, -t) == b


def test_tensor_line_accepts_class_or_point():
    b = make_bundle([(1, ORIGIN)])
    assert tensor_line(b, half()) == tensor_line(b, point_class(half()))


@given(blocks)
def test_dual_is_an_involution(raw):
    b = make_bundle(raw)
    assert dual_bundle(dual_bundle(b)) == b
    assert dual_graded(graded(b)) == graded(dual_bundle(b))


@given(blocks, blocks)
def test_direct_sum_adds_ranks_and_commutes(x, y):
    a, b = make_bundle(x), make_bundle(y)
    s = direct_sum(a, b)
    assert s.rank() == a.rank() + b.rank()
    assert s == direct_sum(b, a)


def test_split_bundle_is_polystable_representative():
    g = make_graded([(ORIGIN, 2), (half(), 1)])
    s = split_bundle(g)
    assert s.blocks == ((1, ORIGIN), (1, ORIGIN), (1, half()))
    assert graded(s) == g


@given(blocks)
def test_split_graded_roundtrip(raw):
    b = make_bundle(raw)
    assert graded(split_bundle(graded(b))) == graded(b)


def test_determinant_weights_twists_by_rank():
    x = TorusPoint(Fraction(1, 3), Fraction(0))
    b = make_bundle([(2, x), (1, half())])
    expected = x.scale(2) + half()
    assert determinant(b).point == expected


@given(blocks, blocks)
def test_determinant_is_additive_over_sums(x, y):
    a, b = make_bundle(x), make_bundle(y)
    assert determinant(direct_sum(a, b)) == determinant(a).tensor(determinant(b))
