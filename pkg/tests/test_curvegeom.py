from fractions import Fraction

import pytest

from multijoints import (AlgebraicPoint, CurveFamilies, Dir3, LineFamilies, NotZeroDimensional,
                         ParamCurve, Point3, Relation, ThresholdQuery, ValidationError,
                         canonicalize_line, curve_curve_intersections, curve_j_threshold,
                         curve_multijoints, j_threshold, multijoints, self_crossings,
                         tangent_dirs_at)
from multijoints.curvegeom import LazyTangent, curve_params_at, tangents_span
from multijoints.polyalg import RealAlgebraic, UniPoly
from multijoints.lab import bush_config

t = UniPoly.t()
ZERO = UniPoly()
ONE = UniPoly.const(1)
O = Point3(0, 0, 0)


def C(*comps):
    return ParamCurve(*comps)


TWISTED = C(t, t ** 2, t ** 3)
NODAL = C(t ** 2 - 1, t * (t ** 2 - 1), ZERO)
CUSP = C(t ** 2, t ** 3, ZERO)


def test_curve_validation():
    with pytest.raises(ValidationError):
        C(ONE, ZERO, UniPoly.const(3))
    with pytest.raises(ValidationError):
        ParamCurve(t ** 3, t, t, b=2)
    assert TWISTED.degree == 3
    assert ParamCurve.from_json(TWISTED.to_json()) == TWISTED


def test_reparametrised_curves_are_equal():
    flipped = C(-t + 2, (-t + 2) ** 2, (-t + 2) ** 3)
    assert flipped == TWISTED and hash(flipped) == hash(TWISTED)


def test_tangent_examples():
    assert tangent_dirs_at(TWISTED, O) == [Dir3(1, 0, 0)]
    # gamma'(t) = (2t, 3t^2 - 1, 0) is (+-2, 2, 0) at t = +-1
    assert set(tangent_dirs_at(NODAL, O)) == {Dir3(1, 1, 0), Dir3(1, -1, 0)}
    assert tangent_dirs_at(CUSP, O) == []
    assert tangent_dirs_at(TWISTED, Point3(1, 2, 3)) == []


def test_tangents_against_sympy_derivative():
    import sympy as sp
    s = sp.Symbol("s")
    comps = (s ** 2 - 1, s * (s ** 2 - 1), sp.Integer(0))
    want = set()
    for root in sp.solve(comps[0], s):
        v = [sp.diff(c, s).subs(s, root) for c in comps]
        want.add(Dir3.of(*(int(c) for c in v)))
    assert set(tangent_dirs_at(NODAL, O)) == want


def test_tangent_at_irrational_parameter():
    g = C(t ** 2, t, ZERO)
    # x = (2, sqrt2, 0) is reached at tau = sqrt2 only
    taus = [r for r in RealAlgebraic.roots_of(t ** 2 - 2)]
    x = AlgebraicPoint([RealAlgebraic.rational(2), taus[1], RealAlgebraic.rational(0)])
    params = curve_params_at(g, x)
    assert len(params) == 1 and params[0] == taus[1]
    (v,) = tangent_dirs_at(g, x)
    assert isinstance(v, LazyTangent)
    assert tangents_span(v, Dir3(0, 1, 0), Dir3(0, 0, 1))
    assert not tangents_span(v, Dir3(1, 0, 0), Dir3(0, 1, 0))


def test_intersection_examples():
    got = curve_curve_intersections(C(t, t ** 2, ZERO), C(t, t, ZERO))
    assert list(got) == [Point3(0, 0, 0), Point3(1, 1, 0)]
    assert curve_curve_intersections(TWISTED, C(t, t ** 2, t ** 3)) is Relation.IDENTICAL
    assert list(curve_curve_intersections(C(t, ZERO, ZERO), C(ZERO, t, ONE))) == []


def test_irrational_intersections():
    # parabola y = x^2 against the line y = 2 in z = 0
    got = list(curve_curve_intersections(C(t, t ** 2, ZERO), C(t, UniPoly.const(2), ZERO)))
    assert len(got) == 2
    for p in got:
        assert isinstance(p, AlgebraicPoint)
        assert p.coords[0].sign_at(t ** 2 - 2) == 0
        assert p.coords[1] == 2 and p.coords[2] == 0
    assert got[0].approx()[0] < 0 < got[1].approx()[0]


def test_distinct_parametrisation_not_zero_dimensional():
    with pytest.raises(NotZeroDimensional):
        curve_curve_intersections(C(t, ZERO, ZERO), C(t ** 3, ZERO, ZERO))


def test_self_crossings_examples():
    assert self_crossings(NODAL) == [O]
    assert self_crossings(TWISTED) == []
    assert self_crossings(C(t, ZERO, ZERO)) == []


def test_self_crossing_irrational():
    # (t^2, t^3 - 3t): crossing at t = +-sqrt3 -> (3, 0)
    g = C(t ** 2, t ** 3 - 3 * t, ZERO)
    assert self_crossings(g) == [Point3(3, 0, 0)]


def test_curve_multijoint_examples():
    axes = CurveFamilies((C(t, ZERO, ZERO),), (C(ZERO, t, ZERO),), (C(ZERO, ZERO, t),))
    assert curve_multijoints(axes) == [O]
    bad = CurveFamilies((C(t, t ** 2, ZERO),), (C(ZERO, t, t),), (C(t, ZERO, t ** 2),))
    assert O not in curve_multijoints(bad)
    good = CurveFamilies((C(t, ZERO, ZERO),), (C(ZERO, t, ZERO),), (C(t ** 2, t ** 2, t),))
    assert curve_multijoints(good) == [O]


def test_curve_threshold_examples():
    f = CurveFamilies.from_lines(bush_config(2, 2, 2, seed=3))
    assert curve_j_threshold(f, ThresholdQuery(1, 1, 1)) == curve_multijoints(f)
    assert curve_j_threshold(f, (2, 2, 2)) == [O]
    assert curve_j_threshold(f, (3, 1, 1)) == []


def test_lines_as_curves_agree():
    lf = bush_config(2, 3, 2, m=2, seed=5)
    cf = CurveFamilies.from_lines(lf)
    assert curve_multijoints(cf) == multijoints(lf)
    assert curve_j_threshold(cf, (2, 2, 2)) == j_threshold(lf, ThresholdQuery(2, 2, 2))


def test_shared_curve_across_families():
    g = C(t, ZERO, ZERO)
    with pytest.raises(NotZeroDimensional):
        curve_multijoints(CurveFamilies((g,), (g,), (C(ZERO, ZERO, t),)))


def test_families_json_roundtrip():
    f = CurveFamilies((TWISTED,), (NODAL,), (C(ZERO, ZERO, t),), b=3)
    assert CurveFamilies.from_json(f.to_json()) == f
    with pytest.raises(ValidationError):
        CurveFamilies((TWISTED,), (NODAL,), (C(ZERO, ZERO, t),), b=2)
    with pytest.raises(ValidationError):
        CurveFamilies.from_json({"fam1": []})


def test_rational_direction_at_irrational_parameter():
    # gamma' = (0, 0, 1 - 6t^2) points along e3 at every regular parameter
    g = C(ZERO, ZERO, t - 2 * t ** 3)
    assert tangent_dirs_at(g, O) == [Dir3(0, 0, 1)]


def test_irrational_tangents_compare_exactly():
    g = C(t ** 2, t, ZERO)
    h = ParamCurve(*(p.compose(UniPoly((1, -3))) for p in g.comps))  # t -> 1 - 3t
    root2 = RealAlgebraic.roots_of(t ** 2 - 2)[1]
    x = AlgebraicPoint([RealAlgebraic.rational(2), root2, RealAlgebraic.rational(0)])
    (v,) = tangent_dirs_at(g, x)
    (w,) = tangent_dirs_at(h, x)
    assert isinstance(v, LazyTangent) and v == w
    assert v.ratios[1] == RealAlgebraic.roots_of(8 * t ** 2 - 1)[1]
    other = AlgebraicPoint([RealAlgebraic.rational(2), RealAlgebraic.roots_of(t ** 2 - 2)[0],
                            RealAlgebraic.rational(0)])
    (u,) = tangent_dirs_at(g, other)
    assert u != v
