"""Spectral cycles, bundle families, and the two-way correspondence."""

from fractions import Fraction

import pytest

from ellfib.bundles import graded, make_bundle, make_graded, split_bundle, tensor_line
from ellfib.errors import (
    EmptyBundle,
    MissingSample,
    NonConstantLength,
    NonPositiveRank,
    OverlapMismatch,
    SchemaError,
    WrongTotal,
)
from ellfib.fibration import Nerve, TranslationCocycle
from ellfib.spectral import (
    BundleFamily,
    beta_map,
    constant_family,
    cycle_of_graded,
    enumerate_bundles,
    enumerate_cycles,
    gamma_map,
    make_cycle,
    round_trip_verify,
    spectral_cover,
    torsion_points,
    translate_cycle,
)
from ellfib.torus import ORIGIN, TorusPoint


def pt(u, v=0) -> TorusPoint:
    return TorusPoint(Fraction(u), Fraction(v))


def two_chart_nerve() -> Nerve:
    return Nerve(
        ["a", "b"],
        [("a", "b")],
        chart_samples={"a": ["s"], "b": ["s"]},
        overlap_samples={("a", "b"): ["s"]},
    )


def test_make_cycle_merges_and_validates():
    c = make_cycle([(pt("1/2"), 1), (pt("1/2"), 2), (ORIGIN, 1)])
    assert c.parts == ((ORIGIN, 1), (pt("1/2"), 3))
    assert c.total() == 4
    with pytest.raises(EmptyBundle):
        make_cycle([])
    with pytest.raises(NonPositiveRank):
        make_cycle([(ORIGIN, 0)])
    with pytest.raises(TypeError):
        make_cycle([(ORIGIN, True)])


def test_translate_cycle_round_trip():
    c = make_cycle([(pt("1/3"), 2), (ORIGIN, 1)])
    z = pt("1/7", "2/7")
    assert translate_cycle(translate_cycle(c, z), -z) == c


def test_spectral_cover_negates_points_and_counts_rank():
    b = make_bundle([(2, pt("1/3")), (1, ORIGIN)])
    c = spectral_cover(b)
    assert c.parts == ((ORIGIN, 1), (pt("2/3"), 2))
    assert c.total() == b.rank()


def test_cycle_of_graded_matches_polystable_cover():
    g = make_graded([(pt("1/4"), 2), (ORIGIN, 1)])
    assert cycle_of_graded(g) == spectral_cover(split_bundle(g))


def test_family_requires_complete_equal_rank_data():
    nerve = Nerve.single_chart("c", ("s", "t"))
    b1 = make_bundle([(1, ORIGIN)])
    b2 = make_bundle([(2, ORIGIN)])
    with pytest.raises(MissingSample):
        BundleFamily(nerve, TranslationCocycle({}), {("c", "s"): b1})
    with pytest.raises(SchemaError):
        BundleFamily(
            nerve,
            TranslationCocycle({}),
            {("c", "s"): b1, ("c", "t"): b1, ("c", "zz"): b1},
        )
    with pytest.raises(NonConstantLength):
        BundleFamily(
            nerve, TranslationCocycle({}), {("c", "s"): b1, ("c", "t"): b2}
        )
    with pytest.raises(NonConstantLength):
        BundleFamily(
            nerve, TranslationCocycle({}), {("c", "s"): b1, ("c", "t"): b1}, rank=2
        )


def test_constant_family_covers_every_sample():
    nerve = two_chart_nerve()
    b = make_bundle([(1, pt("1/2"))])
    fam = constant_family(nerve, b)
    assert fam.rank == 1
    assert fam.fiber("a", "s") == b
    assert fam.fiber("b", "s") == b


def test_gamma_on_constant_family():
    nerve = Nerve.single_chart("c", ("s", "t"))
    b = make_bundle([(2, pt("1/3")), (1, ORIGIN)])
    cycles = gamma_map(constant_family(nerve, b))
    assert cycles[("c", "s")] == spectral_cover(b)
    assert cycles[("c", "t")] == spectral_cover(b)


def test_gamma_accepts_cocycle_compatible_families():
    nerve = two_chart_nerve()
    lam = pt("1/5")
    cocycle = TranslationCocycle({("a", "b"): {"s": lam}})
    b = make_bundle([(1, pt("1/3")), (2, ORIGIN)])
    # chart-b data is the chart-a data twisted by the transition class
    family = BundleFamily(
        nerve, cocycle, {("a", "s"): b, ("b", "s"): tensor_line(b, lam)}
    )
    cycles = gamma_map(family)
    assert cycles[("b", "s")] == translate_cycle(cycles[("a", "s")], -lam)


def test_gamma_rejects_incompatible_overlap_data():
    nerve = two_chart_nerve()
    cocycle = TranslationCocycle({("a", "b"): {"s": pt("1/5")}})
    b = make_bundle([(1, ORIGIN)])
    family = BundleFamily(nerve, cocycle, {("a", "s"): b, ("b", "s"): b})
    with pytest.raises(OverlapMismatch):
        gamma_map(family)


def test_beta_restores_polystable_fibers():
    nerve = Nerve.single_chart("c", ("s",))
    cycle = make_cycle([(pt("1/3"), 2), (ORIGIN, 1)])
    fam = beta_map(nerve, {"s": cycle}, 3)
    bundle = fam.fiber("c", "s")
    assert bundle.blocks == ((1, ORIGIN), (1, pt("2/3")), (1, pt("2/3")))
    assert gamma_map(fam)[("c", "s")] == cycle


def test_beta_validates_section_shape():
    nerve = Nerve.single_chart("c", ("s", "t"))
    cycle = make_cycle([(ORIGIN, 2)])
    with pytest.raises(MissingSample):
        beta_map(nerve, {"s": cycle}, 2)
    with pytest.raises(SchemaError):
        beta_map(nerve, {"s": cycle, "t": cycle, "zz": cycle}, 2)
    with pytest.raises(WrongTotal):
        beta_map(nerve, {"s": cycle, "t": cycle}, 3)


def test_beta_requires_a_single_chart():
    nerve = two_chart_nerve()
    with pytest.raises(SchemaError):
        beta_map(nerve, {"s": make_cycle([(ORIGIN, 1)])}, 1)


def test_torsion_points_enumeration():
    pts = torsion_points(2)
    assert len(pts) == 4
    assert ORIGIN in pts
    assert pt("1/2", "1/2") in pts
    with pytest.raises(SchemaError):
        torsion_points(0)


def test_enumerate_cycles_counts_multisets():
    # multisets of size n from torsion^2 points
    assert len(enumerate_cycles(1, 2)) == 4
    assert len(enumerate_cycles(2, 2)) == 10
    assert len(enumerate_cycles(2, 3)) == 45
    assert all(c.total() == 2 for c in enumerate_cycles(2, 2))


def test_enumerate_bundles_counts_block_shapes():
    # rank 2 over 4 points: 4 single towers + 10 unordered pairs
    assert len(enumerate_bundles(2, 2)) == 14
    # rank 3 over 4 points: 4 + 4*4 + C(6,3)
    assert len(enumerate_bundles(3, 2)) == 40
    ranks = {b.rank() for b in enumerate_bundles(3, 2)}
    assert ranks == {3}


def test_enumerated_bundles_are_distinct():
    bundles = enumerate_bundles(2, 2)
    assert len(set(bundles)) == len(bundles)


def test_graded_classes_biject_with_cycles():
    bundles = enumerate_bundles(2, 3)
    classes = {graded(b) for b in bundles}
    cycles = set(enumerate_cycles(2, 3))
    assert len(classes) == len(cycles) == 45
    assert {cycle_of_graded(g) for g in classes} == cycles


def test_round_trip_small_instance():
    base = Nerve.single_chart("c", ("s",))
    report = round_trip_verify(base, 2, 3)
    assert report.ok
    assert report.sections_checked == 45
    assert report.bundles_checked == 54
    assert report.bijective
    assert report.failures == ()


def test_round_trip_multi_sample():
    base = Nerve.single_chart("c", ("s1", "s2"))
    report = round_trip_verify(base, 1, 2)
    assert report.ok
    assert report.sections_checked == 4
    assert report.bundles_checked == 4


def test_round_trip_requires_single_chart():
    with pytest.raises(SchemaError):
        round_trip_verify(two_chart_nerve(), 1, 1)
