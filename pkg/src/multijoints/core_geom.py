"""Exact points, directions and lines in R^3.

Every coordinate is a :class:`fractions.Fraction`; no predicate in this
module touches floating point.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Union

from .errors import ValidationError, ZeroDirection

Rational = Fraction
RationalLike = Union[int, str, Fraction]


def rat(value: RationalLike) -> Fraction:
    """Parse an int, Fraction or ``"num/den"`` string into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValidationError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"not a rational: {value!r}") from exc
    raise ValidationError(f"not a rational: {value!r} (floats are not accepted)")


def rat_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True, order=True)
class Point3:
    x: Fraction
    y: Fraction
    z: Fraction

    def __post_init__(self):
        for name in ("x", "y", "z"):
            object.__setattr__(self, name, rat(getattr(self, name)))

    def __iter__(self):
        return iter((self.x, self.y, self.z))

    def __getitem__(self, i: int) -> Fraction:
        return (self.x, self.y, self.z)[i]

    def __repr__(self):
        return "Point3({}, {}, {})".format(*(str(c) for c in self))

    def to_json(self) -> list:
        return [rat_str(c) for c in self]

    @classmethod
    def from_json(cls, data) -> "Point3":
        if len(data) != 3:
            raise ValidationError(f"point needs 3 coordinates, got {data!r}")
        return cls(*(rat(c) for c in data))


ORIGIN = Point3(0, 0, 0)


@dataclass(frozen=True, order=True)
class Dir3:
    """Primitive integer direction, first nonzero component positive."""

    dx: int
    dy: int
    dz: int

    def __post_init__(self):
        comps = (self.dx, self.dy, self.dz)
        if not all(isinstance(c, int) for c in comps):
            raise ValidationError("Dir3 components must be ints; use Dir3.of()")
        if comps == (0, 0, 0):
            raise ZeroDirection("direction vector is zero")
        g = gcd(*comps)
        first = next(c for c in comps if c)
        if g != 1 or first < 0:
            raise ValidationError(f"non-canonical direction {comps}; use Dir3.of()")

    @classmethod
    def of(cls, a: RationalLike, b: RationalLike, c: RationalLike) -> "Dir3":
        comps = [rat(a), rat(b), rat(c)]
        if not any(comps):
            raise ZeroDirection("direction vector is zero")
        den = 1
        for q in comps:
            den = den * q.denominator // gcd(den, q.denominator)
        ints = [int(q * den) for q in comps]
        g = gcd(*ints)
        ints = [v // g for v in ints]
        if next(v for v in ints if v) < 0:
            ints = [-v for v in ints]
        return cls(*ints)

    def __iter__(self):
        return iter((self.dx, self.dy, self.dz))

    def __getitem__(self, i: int) -> int:
        return (self.dx, self.dy, self.dz)[i]

    def __repr__(self):
        return f"Dir3({self.dx}, {self.dy}, {self.dz})"


@dataclass(frozen=True, order=True)
class Line3:
    base: Point3
    dir: Dir3

    def __post_init__(self):
        pivot = _pivot(self.dir)
        if self.base[pivot] != 0:
            raise ValidationError("non-canonical line; build it with canonicalize_line()")

    def at(self, t: RationalLike) -> Point3:
        t = rat(t)
        return Point3(*(b + t * d for b, d in zip(self.base, self.dir)))

    def to_json(self) -> dict:
        return {"base": self.base.to_json(), "dir": [rat_str(Fraction(c)) for c in self.dir]}

    @classmethod
    def from_json(cls, data) -> "Line3":
        try:
            base, d = data["base"], data["dir"]
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"line needs 'base' and 'dir': {data!r}") from exc
        return canonicalize_line(Point3.from_json(base), Dir3.of(*(rat(c) for c in d)))

    def __repr__(self):
        return f"Line3(base={tuple(str(c) for c in self.base)}, dir={tuple(self.dir)})"


def _pivot(d: Iterable) -> int:
    return next(i for i, c in enumerate(d) if c)


def canonicalize_line(p: Point3, d) -> Line3:
    """Canonical record of the line through ``p`` with direction ``d``.

    The base point is moved along the line until its coordinate at the first
    nonzero component of the direction vanishes.
    """
    if not isinstance(d, Dir3):
        d = Dir3.of(*d)
    k = _pivot(d)
    t = -p[k] / d[k]
    base = Point3(*(pc + t * dc for pc, dc in zip(p, d)))
    return Line3(base, d)


def line_through(p, q) -> Line3:
    p, q = Point3(*p), Point3(*q)
    return canonicalize_line(p, Dir3.of(*(b - a for a, b in zip(p, q))))


def det3(u, v, w):
    return (u[0] * (v[1] * w[2] - v[2] * w[1])
            - u[1] * (v[0] * w[2] - v[2] * w[0])
            + u[2] * (v[0] * w[1] - v[1] * w[0]))


def cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def dot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def span3(d1, d2, d3) -> bool:
    """True iff the three directions span R^3."""
    return det3(d1, d2, d3) != 0


class Relation(enum.Enum):
    EMPTY = "empty"
    IDENTICAL = "identical"


EMPTY = Relation.EMPTY
IDENTICAL = Relation.IDENTICAL


def line_intersect(l1: Line3, l2: Line3) -> Union[Point3, Relation]:
    """Return the common point of two lines, ``EMPTY`` or ``IDENTICAL``."""
    if l1.dir == l2.dir:
        return IDENTICAL if l1.base == l2.base else EMPTY
    n = cross(l1.dir, l2.dir)
    w = tuple(b - a for a, b in zip(l1.base, l2.base))
    if dot(w, n) != 0:
        return EMPTY
    t = Fraction(dot(cross(w, l2.dir), n), dot(n, n))
    return l1.at(t)


def point_on_line(x: Point3, l: Line3) -> bool:
    w = tuple(a - b for a, b in zip(x, l.base))
    return cross(w, l.dir) == (0, 0, 0)
