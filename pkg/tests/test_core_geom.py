from fractions import Fraction

import pytest

from multijoints import (Dir3, Line3, Point3, Relation, ValidationError, ZeroDirection,
                         canonicalize_line, line_intersect, line_through, point_on_line, span3)
from multijoints.core_geom import rat, rat_str

from oracles import intersect

X_AXIS = canonicalize_line(Point3(0, 0, 0), Dir3(1, 0, 0))
Y_AXIS = canonicalize_line(Point3(0, 0, 0), Dir3(0, 1, 0))


def test_rat_parsing():
    assert rat("3/6") == Fraction(1, 2)
    assert rat(" -4 ") == -4
    assert rat_str(Fraction(-2, 4)) == "-1/2"
    assert rat_str(Fraction(0)) == "0/1"
    for bad in (0.5, "1/0", "abc", True, None):
        with pytest.raises(ValidationError):
            rat(bad)


def test_dir_canonical_form():
    assert Dir3.of(0, 0, -3) == Dir3(0, 0, 1)
    assert Dir3.of("1/2", "-1/3", 0) == Dir3(3, -2, 0)
    assert Dir3.of(-2, 4, 6) == Dir3(1, -2, -3)
    with pytest.raises(ZeroDirection):
        Dir3.of(0, 0, 0)
    with pytest.raises(ValidationError):
        Dir3(2, 0, 0)
    with pytest.raises(ValidationError):
        Dir3(-1, 0, 0)


def test_canonicalize_examples():
    l = canonicalize_line(Point3(5, 0, 0), Dir3.of(2, 0, 0))
    assert l.base == Point3(0, 0, 0) and l.dir == Dir3(1, 0, 0)
    l = canonicalize_line(Point3(0, 0, 0), Dir3.of(0, 0, -3))
    assert l.base == Point3(0, 0, 0) and l.dir == Dir3(0, 0, 1)
    l = canonicalize_line(Point3(1, 1, 0), Dir3.of(1, 1, 0))
    assert l.base == Point3(0, 0, 0) and l.dir == Dir3(1, 1, 0)


def test_noncanonical_line_rejected():
    with pytest.raises(ValidationError):
        Line3(Point3(1, 0, 0), Dir3(1, 0, 0))


def test_same_line_same_record():
    a = line_through((1, 2, 3), (2, 4, 7))
    b = line_through((5, 10, 19), ("3/2", 3, 5))
    assert a == b and hash(a) == hash(b)


def test_span3_examples():
    assert span3((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert not span3((1, 0, 0), (0, 1, 0), (1, 1, 0))
    assert span3((1, 1, 0), (0, 1, 1), (1, 0, 1))


def test_line_intersect_examples():
    assert line_intersect(X_AXIS, Y_AXIS) == Point3(0, 0, 0)
    shifted = canonicalize_line(Point3(0, 0, 1), Dir3(1, 0, 0))
    assert line_intersect(X_AXIS, shifted) is Relation.EMPTY
    assert line_intersect(X_AXIS, X_AXIS) is Relation.IDENTICAL


def test_line_intersect_skew_and_rational():
    skew = canonicalize_line(Point3(0, 0, 1), Dir3(0, 1, 0))
    assert line_intersect(X_AXIS, skew) is Relation.EMPTY
    a = line_through((0, 0, 0), (3, 1, 2))
    b = line_through((1, 0, 0), (2, 1, 2))
    x = line_intersect(a, b)
    want = intersect(((Fraction(0),) * 3, (3, 1, 2)), ((Fraction(1), 0, 0), (1, 1, 2)))
    assert x == Point3(*want) == Point3(Fraction(3, 2), Fraction(1, 2), 1)


def test_point_on_line_examples():
    assert point_on_line(Point3(3, 0, 0), X_AXIS)
    assert not point_on_line(Point3(0, 1, 0), X_AXIS)
    diag = canonicalize_line(Point3(0, 0, 0), Dir3(1, 1, 0))
    assert point_on_line(Point3("1/2", "1/2", 0), diag)


def test_line_json_roundtrip():
    l = line_through((1, "2/3", 0), (0, 1, 5))
    data = l.to_json()
    assert all(isinstance(c, str) and "/" in c for c in data["base"])
    assert Line3.from_json(data) == l
    with pytest.raises(ValidationError):
        Line3.from_json({"base": [0, 0]})
    with pytest.raises(ValidationError):
        Point3.from_json([1, 2])
