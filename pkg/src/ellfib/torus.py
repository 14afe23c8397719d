"""Exact arithmetic on an elliptic curve presented as R^2 / Z^2.

Points carry two Fraction coordinates reduced mod 1, so the group law is
coordinatewise addition.  Divisors are finite formal sums of points with
integer multiplicities.  A degree-zero divisor determines a line-bundle
class by the group sum of its points; that sum is a complete isomorphism
invariant, with the origin fixed as the base point of the normalization
x |-> class of [x] - [origin].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import NonZeroDegree


def _frac(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("float coordinates are not exact; pass Fraction, int, or str")
    return Fraction(x)


@dataclass(frozen=True, order=True)
class TorusPoint:
    """A point of the curve, coordinates in [0, 1)."""

    u: Fraction
    v: Fraction

    def __post_init__(self):
        object.__setattr__(self, "u", _frac(self.u) % 1)
        object.__setattr__(self, "v", _frac(self.v) % 1)

    def __add__(self, other: "TorusPoint") -> "TorusPoint":
        return TorusPoint(self.u + other.u, self.v + other.v)

    def __neg__(self) -> "TorusPoint":
        return TorusPoint(-self.u, -self.v)

    def __sub__(self, other: "TorusPoint") -> "TorusPoint":
        return self + (-other)

    def scale(self, n: int) -> "TorusPoint":
        return TorusPoint(n * self.u, n * self.v)

    def order(self) -> int:
        """Least n >= 1 with n * self == 0 (finite: coordinates are rational)."""
        return math.lcm(self.u.denominator, self.v.denominator)

    def is_zero(self) -> bool:
        return self.u == 0 and self.v == 0


ORIGIN = TorusPoint(Fraction(0), Fraction(0))


@dataclass(frozen=True)
class Divisor:
    """Formal Z-combination of points, stored sorted with zero terms dropped."""

    terms: tuple[tuple[TorusPoint, int], ...]

    def degree(self) -> int:
        return sum(m for _, m in self.terms)

    def points_sum(self) -> TorusPoint:
        total = ORIGIN
        for p, m in self.terms:
            total = total + p.scale(m)
        return total

    def __add__(self, other: "Divisor") -> "Divisor":
        return make_divisor(list(self.terms) + list(other.terms))

    def __neg__(self) -> "Divisor":
        return Divisor(tuple((p, -m) for p, m in self.terms))

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-other)


def make_divisor(pairs: Iterable[tuple[TorusPoint, int]]) -> Divisor:
    """Merge duplicate points, drop zero multiplicities, sort canonically."""
    acc: dict[TorusPoint, int] = {}
    for p, m in pairs:
        if not isinstance(m, int):
            raise TypeError("multiplicities must be int")
        acc[p] = acc.get(p, 0) + m
    terms = tuple(sorted((p, m) for p, m in acc.items() if m != 0))
    return Divisor(terms)


def point_divisor(p: TorusPoint, m: int = 1) -> Divisor:
    return make_divisor([(p, m)])


@dataclass(frozen=True, order=True)
class LineBundleClass:
    """Isomorphism class of a degree-zero line bundle.

    Classes of degree zero are classified by the group sum of any divisor
    representing them, so a single point is a complete invariant.  Tensor
    adds the points and dual negates; nonzero degrees are outside this
    type on purpose.
    """

    point: TorusPoint

    def tensor(self, other: "LineBundleClass") -> "LineBundleClass":
        return LineBundleClass(self.point + other.point)

    def dual(self) -> "LineBundleClass":
        return LineBundleClass(-self.point)

    def is_trivial(self) -> bool:
        return self.point.is_zero()


def divisor_class(d: Divisor) -> LineBundleClass:
    """Class of a degree-zero divisor; its point is the weighted group sum."""
    if d.degree() != 0:
        raise NonZeroDegree(f"divisor has degree {d.degree()}, need 0")
    return LineBundleClass(d.points_sum())


def point_class(x: TorusPoint) -> LineBundleClass:
    """Class of the degree-zero bundle attached to x, i.e. of [x] - [origin]."""
    return LineBundleClass(x)
