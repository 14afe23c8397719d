"""Degree-zero semistable bundles on the curve in their canonical block form.

Every such bundle is a direct sum of blocks: the unique indecomposable
self-extension tower of a given rank, twisted by a degree-zero line bundle.
A block is stored as (rank, twist point).  The associated graded object
forgets the tower structure and keeps each twist point with its total
multiplicity; two bundles are S-equivalent exactly when their graded
objects agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import EmptyBundle, NonPositiveRank
from .torus import LineBundleClass, TorusPoint


def _block_key(block: tuple[int, TorusPoint]):
    n, x = block
    return (x, n)


@dataclass(frozen=True)
class AtiyahBundle:
    """Multiset of blocks (rank, twist point), sorted by point then rank."""

    blocks: tuple[tuple[int, TorusPoint], ...]

    def rank(self) -> int:
        return sum(n for n, _ in self.blocks)

    def degree(self) -> int:
        return 0


@dataclass(frozen=True)
class GradedClass:
    """Associated graded of a bundle: twist points with multiplicities."""

    parts: tuple[tuple[TorusPoint, int], ...]

    def rank(self) -> int:
        return sum(m for _, m in self.parts)


def make_bundle(blocks: Iterable[tuple[int, TorusPoint]]) -> AtiyahBundle:
    blocks = tuple(sorted(blocks, key=_block_key))
    if not blocks:
        raise EmptyBundle("a bundle needs at least one block")
    for n, _ in blocks:
        if not isinstance(n, int) or n < 1:
            raise NonPositiveRank(f"block rank must be a positive int, got {n!r}")
    return AtiyahBundle(blocks)


def make_graded(parts: Iterable[tuple[TorusPoint, int]]) -> GradedClass:
    acc: dict[TorusPoint, int] = {}
    for p, m in parts:
        if not isinstance(m, int) or m < 1:
            raise NonPositiveRank(f"multiplicity must be a positive int, got {m!r}")
        acc[p] = acc.get(p, 0) + m
    if not acc:
        raise EmptyBundle("a graded class needs at least one part")
    return GradedClass(tuple(sorted(acc.items())))


def graded(bundle: AtiyahBundle) -> GradedClass:
    """Collapse each block of rank n at x to n copies of the twist line at x."""
    return make_graded((x, n) for n, x in bundle.blocks)


def s_equivalent(a: AtiyahBundle, b: AtiyahBundle) -> bool:
    return graded(a) == graded(b)


def _twist_point(twist: TorusPoint | LineBundleClass) -> TorusPoint:
    if isinstance(twist, LineBundleClass):
        return twist.point
    return twist


def tensor_line(bundle: AtiyahBundle, twist: TorusPoint | LineBundleClass) -> AtiyahBundle:
    """Tensor every block by the degree-zero line bundle of the given class."""
    t = _twist_point(twist)
    return make_bundle((n, x + t) for n, x in bundle.blocks)


def tensor_line_graded(g: GradedClass, twist: TorusPoint | LineBundleClass) -> GradedClass:
    t = _twist_point(twist)
    return make_graded((p + t, m) for p, m in g.parts)


def dual_bundle(bundle: AtiyahBundle) -> AtiyahBundle:
    # each block tower is self-dual; only the twist point negates
    return make_bundle((n, -x) for n, x in bundle.blocks)


def dual_graded(g: GradedClass) -> GradedClass:
    return make_graded((-p, m) for p, m in g.parts)


def direct_sum(a: AtiyahBundle, b: AtiyahBundle) -> AtiyahBundle:
    return make_bundle(a.blocks + b.blocks)


def split_bundle(g: GradedClass) -> AtiyahBundle:
    """Polystable representative: every part becomes rank-one blocks."""
    return make_bundle((1, p) for p, m in g.parts for _ in range(m))


def determinant(bundle: AtiyahBundle) -> LineBundleClass:
    """Degree-zero class whose point is the rank-weighted sum of twists."""
    total = TorusPoint(0, 0)
    for n, x in bundle.blocks:
        total = total + x.scale(n)
    return LineBundleClass(total)
