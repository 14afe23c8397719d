"""Spectral cycles and the correspondence between bundle families and sections.

A spectral cycle is the support-with-multiplicity shadow of the
transform of a semistable bundle.  Families of bundles over a nerve map
chartwise to cycle-valued sections; on a single trivializing chart the
correspondence has an explicit inverse, and both directions are checked
exhaustively over torsion points by the round-trip verifier.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Mapping

from .bundles import AtiyahBundle, GradedClass, graded, make_bundle, split_bundle
from .errors import (
    EmptyBundle,
    MissingSample,
    NonConstantLength,
    NonPositiveRank,
    OverlapMismatch,
    SchemaError,
    WrongTotal,
)
from .fibration import Nerve, TranslationCocycle
from .torus import TorusPoint
from .transform import fm_transform, make_skyscraper, psi_transform


@dataclass(frozen=True)
class SpectralCycle:
    """Multiset of torus points with positive multiplicities, sorted."""

    parts: tuple[tuple[TorusPoint, int], ...]

    def total(self) -> int:
        return sum(m for _, m in self.parts)


def make_cycle(pairs: Iterable[tuple[TorusPoint, int]]) -> SpectralCycle:
    merged: dict[TorusPoint, int] = {}
    for point, m in pairs:
        if not isinstance(m, int) or isinstance(m, bool):
            raise TypeError(f"multiplicity must be an integer, got {m!r}")
        if m <= 0:
            raise NonPositiveRank(f"multiplicity must be positive, got {m}")
        merged[point] = merged.get(point, 0) + m
    if not merged:
        raise EmptyBundle("a spectral cycle needs at least one point")
    return SpectralCycle(tuple(sorted(merged.items())))


def translate_cycle(cycle: SpectralCycle, z: TorusPoint) -> SpectralCycle:
    return make_cycle((point + z, m) for point, m in cycle.parts)


def spectral_cover(bundle: AtiyahBundle) -> SpectralCycle:
    """Support cycle of the transform; total equals the rank."""
    return make_cycle(fm_transform(bundle).parts)


def cycle_of_graded(g: GradedClass) -> SpectralCycle:
    return spectral_cover(split_bundle(g))


class BundleFamily:
    """Equal-rank bundle data on every (chart, sample) of a nerve.

    The overlap compatibility of the data with the transition cocycle is
    a caller precondition; the glued-section map checks its consequence
    at cycle level, which is all that survives S-equivalence.
    """

    __slots__ = ("base", "cocycle", "data", "rank")

    def __init__(
        self,
        base: Nerve,
        cocycle: TranslationCocycle,
        data: Mapping[tuple[str, str], AtiyahBundle],
        rank: int | None = None,
    ):
        self.base = base
        self.cocycle = cocycle
        table: dict[tuple[str, str], AtiyahBundle] = {}
        expected = {
            (chart, s) for chart in base.charts for s in base.chart_samples(chart)
        }
        for key, bundle in data.items():
            if key not in expected:
                raise SchemaError(f"family data at unknown chart/sample {key!r}")
            table[key] = bundle
        missing = expected - set(table)
        if missing:
            raise MissingSample(f"family data missing at {sorted(missing)!r}")
        ranks = {bundle.rank() for bundle in table.values()}
        if rank is None:
            rank = min(ranks)
        if ranks != {rank}:
            raise NonConstantLength(
                f"family fibers must all have rank {rank}, got ranks {sorted(ranks)}"
            )
        self.data = table
        self.rank = rank

    def fiber(self, chart: str, sample: str) -> AtiyahBundle:
        return self.data[(chart, sample)]


def constant_family(base: Nerve, bundle: AtiyahBundle) -> BundleFamily:
    data = {
        (chart, s): bundle for chart in base.charts for s in base.chart_samples(chart)
    }
    return BundleFamily(base, TranslationCocycle({}), data, bundle.rank())


def gamma_map(family: BundleFamily) -> dict[tuple[str, str], SpectralCycle]:
    """Per-sample spectral cycles, checked for flatness and overlap gluing.

    Chart-i cycles are written in chart-i coordinates; on an overlap the
    chart-j cycle must equal the chart-i cycle translated by the negated
    transition value at that sample.
    """
    cycles = {key: spectral_cover(bundle) for key, bundle in family.data.items()}
    totals = {cycle.total() for cycle in cycles.values()}
    if len(totals) > 1:
        raise NonConstantLength(f"cycle totals vary across samples: {sorted(totals)}")
    base = family.base
    for i, j in base.overlaps:
        for s in base.overlap_samples(i, j):
            lam = family.cocycle.value(i, j, s)
            moved = translate_cycle(cycles[(i, s)], -lam)
            if moved != cycles[(j, s)]:
                raise OverlapMismatch(
                    f"overlap {(i, j)!r} sample {s!r}: translated chart-{i} cycle "
                    f"does not match chart-{j} cycle"
                )
    return cycles


def _require_single_chart(base: Nerve) -> str:
    if len(base.charts) != 1 or base.overlaps:
        raise SchemaError("this operation is defined chartwise: one chart, no overlaps")
    return base.charts[0]


def beta_map(base: Nerve, section: Mapping[str, SpectralCycle], n: int) -> BundleFamily:
    """Inverse direction on one chart: cycles back to polystable bundles."""
    chart = _require_single_chart(base)
    samples = base.chart_samples(chart)
    for s in samples:
        if s not in section:
            raise MissingSample(f"section undefined at sample {s!r}")
    extra = set(section) - set(samples)
    if extra:
        raise SchemaError(f"section given at unknown samples {sorted(extra)!r}")
    data = {}
    for s in samples:
        cycle = section[s]
        if cycle.total() != n:
            raise WrongTotal(
                f"sample {s!r}: cycle total {cycle.total()} differs from rank {n}"
            )
        sky = make_skyscraper(cycle.parts, 0)
        data[(chart, s)] = psi_transform(sky)
    return BundleFamily(base, TranslationCocycle({}), data, n)


def torsion_points(torsion: int) -> list[TorusPoint]:
    if torsion < 1:
        raise SchemaError("torsion bound must be at least 1")
    return [
        TorusPoint(Fraction(p, torsion), Fraction(q, torsion))
        for p in range(torsion)
        for q in range(torsion)
    ]


def enumerate_cycles(n: int, torsion: int) -> list[SpectralCycle]:
    points = sorted(torsion_points(torsion))
    out = []
    for combo in combinations_with_replacement(points, n):
        merged: dict[TorusPoint, int] = {}
        for point in combo:
            merged[point] = merged.get(point, 0) + 1
        out.append(SpectralCycle(tuple(sorted(merged.items()))))
    return out


def enumerate_bundles(n: int, torsion: int) -> list[AtiyahBundle]:
    """Every rank-n bundle whose block points are torsion, each class once."""
    points = sorted(torsion_points(torsion))

    def partitions(total: int, cap: int) -> list[tuple[int, ...]]:
        if total == 0:
            return [()]
        out = []
        for first in range(min(total, cap), 0, -1):
            for rest in partitions(total - first, first):
                out.append((first,) + rest)
        return out

    bundles = []
    for shape in partitions(n, n):
        groups: dict[int, int] = {}
        for part in shape:
            groups[part] = groups.get(part, 0) + 1
        choices = [[()]]
        for part, count in sorted(groups.items()):
            per_part = [
                tuple((part, point) for point in combo)
                for combo in combinations_with_replacement(points, count)
            ]
            choices.append(per_part)
        stack = [()]
        for per_part in choices:
            stack = [acc + blocks for acc in stack for blocks in per_part]
        for blocks in stack:
            bundles.append(make_bundle(blocks))
    return bundles


@dataclass(frozen=True)
class RoundTripReport:
    ok: bool
    sections_checked: int
    bundles_checked: int
    bijective: bool
    failures: tuple[str, ...]


def round_trip_verify(base: Nerve, n: int, torsion: int) -> RoundTripReport:
    """Exhaustive two-way check over torsion data on a single chart."""
    chart = _require_single_chart(base)
    samples = base.chart_samples(chart)
    failures: list[str] = []

    cycles = enumerate_cycles(n, torsion)
    for cycle in cycles:
        family = beta_map(base, {s: cycle for s in samples}, n)
        back = gamma_map(family)
        for s in samples:
            if back[(chart, s)] != cycle:
                failures.append(f"section round trip failed at {cycle!r}")
                break

    bundles = enumerate_bundles(n, torsion)
    for bundle in bundles:
        section = gamma_map(constant_family(base, bundle))
        rebuilt = beta_map(
            base, {s: section[(chart, s)] for s in samples}, bundle.rank()
        )
        expected = split_bundle(graded(bundle))
        for s in samples:
            if rebuilt.fiber(chart, s) != expected:
                failures.append(f"family round trip failed at {bundle!r}")
                break

    classes = {graded(bundle) for bundle in bundles}
    image = {cycle_of_graded(g) for g in classes}
    bijective = len(image) == len(classes) and image == set(cycles)
    if not bijective:
        failures.append("graded classes and cycles are not in bijection")

    return RoundTripReport(
        ok=not failures,
        sections_checked=len(cycles),
        bundles_checked=len(bundles),
        bijective=bijective,
        failures=tuple(failures),
    )
