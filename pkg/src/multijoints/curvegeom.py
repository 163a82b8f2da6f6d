"""Polynomially parametrised curves: tangents, intersections, self-crossings
and multijoints of three curve families."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Sequence, Tuple, Union

from .core_geom import Dir3, IDENTICAL, Line3, Point3, Relation, det3, rat, rat_str
from .errors import NotZeroDimensional, UndecidedPredicate, ValidationError
from .polyalg.algebraic import RealAlgebraic
from .polyalg.unipoly import UniPoly, bivariate_resultant, poly_gcd
from .search import DEFAULT_EXACT_LIMIT, has_transversal

log = logging.getLogger(__name__)


# -- curves ----------------------------------------------------------------------

def _canonical(comps: Tuple[UniPoly, UniPoly, UniPoly]) -> Tuple[UniPoly, UniPoly, UniPoly]:
    """Normal form under reparametrisations t -> +-t + c (and t -> a t + c when some
    component is linear)."""
    degs = [p.degree for p in comps]
    k = min(d for d in degs if d > 0)
    piv = comps[degs.index(k)]
    a_k = piv.coeffs[k]
    if k == 1:
        # pivot a t + b becomes exactly t
        inner = UniPoly((-piv.coeffs[0] / a_k, 1 / a_k))
        return tuple(p.compose(inner) for p in comps)
    shift = -piv.coeffs[k - 1] / (k * a_k)
    out = tuple(p.compose(UniPoly((shift, 1))) for p in comps)
    flip = UniPoly((0, -1))
    for p in sorted(out, key=lambda p: -p.degree):
        for n in range(p.degree, 0, -1):
            if n % 2 and p.coeffs[n]:
                if p.coeffs[n] < 0:
                    out = tuple(q.compose(flip) for q in out)
                return out
    return out


class ParamCurve:
    """t -> (px(t), py(t), pz(t)) with rational polynomial components."""

    __slots__ = ("px", "py", "pz", "b", "_canon")

    def __init__(self, px, py, pz, b: Optional[int] = None):
        comps = [p if isinstance(p, UniPoly) else UniPoly(p) for p in (px, py, pz)]
        if all(p.degree <= 0 for p in comps):
            raise ValidationError("curve components are all constant")
        deg = max(p.degree for p in comps)
        if b is None:
            b = deg
        if not isinstance(b, int) or b < deg:
            raise ValidationError(f"curve degree {deg} exceeds bound {b!r}")
        object.__setattr__(self, "px", comps[0])
        object.__setattr__(self, "py", comps[1])
        object.__setattr__(self, "pz", comps[2])
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "_canon", None)

    def __setattr__(self, name, value):
        raise AttributeError("ParamCurve is immutable")

    @classmethod
    def from_line(cls, line: Line3, b: Optional[int] = None) -> "ParamCurve":
        return cls(*(UniPoly((c, d)) for c, d in zip(line.base, line.dir)), b=b)

    @property
    def comps(self) -> Tuple[UniPoly, UniPoly, UniPoly]:
        return (self.px, self.py, self.pz)

    @property
    def degree(self) -> int:
        return max(p.degree for p in self.comps)

    @property
    def canonical(self) -> Tuple[UniPoly, UniPoly, UniPoly]:
        if self._canon is None:
            object.__setattr__(self, "_canon", _canonical(self.comps))
        return self._canon

    def derivative(self) -> Tuple[UniPoly, UniPoly, UniPoly]:
        return tuple(p.derivative() for p in self.comps)

    def at(self, t) -> Point3:
        t = rat(t)
        return Point3(*(p(t) for p in self.comps))

    def __eq__(self, other):
        return isinstance(other, ParamCurve) and self.canonical == other.canonical

    def __hash__(self):
        return hash(self.canonical)

    def __repr__(self):
        return f"ParamCurve({self.px!r}, {self.py!r}, {self.pz!r}, b={self.b})"

    def to_json(self) -> dict:
        return {"px": self.px.to_json(), "py": self.py.to_json(), "pz": self.pz.to_json(), "b": self.b}

    @classmethod
    def from_json(cls, data) -> "ParamCurve":
        try:
            return cls(*(UniPoly.from_json(data[k]) for k in ("px", "py", "pz")), b=data.get("b"))
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"curve needs px, py, pz: {data!r}") from exc


def _dedup(curves, name):
    seen = {}
    for c in curves:
        if not isinstance(c, ParamCurve):
            raise ValidationError(f"{name}: expected ParamCurve, got {type(c).__name__}")
        seen.setdefault(c, None)
    if len(seen) < len(curves):
        log.warning("%s: dropped %d duplicate curve(s)", name, len(curves) - len(seen))
    return tuple(seen)


@dataclass(frozen=True)
class CurveFamilies:
    fam1: Tuple[ParamCurve, ...]
    fam2: Tuple[ParamCurve, ...]
    fam3: Tuple[ParamCurve, ...]
    b: Optional[int] = None

    def __post_init__(self):
        fams = [_dedup(tuple(getattr(self, k)), k) for k in ("fam1", "fam2", "fam3")]
        if any(not f for f in fams):
            raise ValidationError("every family needs at least one curve")
        b = self.b if self.b is not None else max(c.degree for f in fams for c in f)
        for f in fams:
            for c in f:
                if c.degree > b:
                    raise ValidationError(f"curve of degree {c.degree} exceeds the bound {b}")
        for k, f in zip(("fam1", "fam2", "fam3"), fams):
            object.__setattr__(self, k, f)
        object.__setattr__(self, "b", b)

    @classmethod
    def from_lines(cls, lines) -> "CurveFamilies":
        return cls(*(tuple(ParamCurve.from_line(l) for l in fam) for fam in lines.families))

    @property
    def families(self):
        return (self.fam1, self.fam2, self.fam3)

    @property
    def sizes(self):
        return tuple(len(f) for f in self.families)

    def to_json(self) -> dict:
        out = {f"fam{i + 1}": [c.to_json() for c in f] for i, f in enumerate(self.families)}
        out["b"] = self.b
        return out

    @classmethod
    def from_json(cls, data) -> "CurveFamilies":
        try:
            fams = [tuple(ParamCurve.from_json(c) for c in data[f"fam{i}"]) for i in (1, 2, 3)]
        except (KeyError, TypeError) as exc:
            raise ValidationError("curve families need keys fam1, fam2, fam3") from exc
        return cls(*fams, b=data.get("b"))


# -- algebraic points ------------------------------------------------------------

class AlgebraicPoint:
    """A point of R^3 with real algebraic coordinates."""

    __slots__ = ("coords",)

    def __init__(self, coords: Sequence[RealAlgebraic]):
        self.coords = tuple(coords)

    @classmethod
    def of(cls, x) -> "AlgebraicPoint":
        if isinstance(x, AlgebraicPoint):
            return x
        return cls(RealAlgebraic.rational(c) for c in x)

    @property
    def is_rational(self) -> bool:
        return all(c.try_rational() is not None for c in self.coords)

    def to_point3(self) -> Point3:
        return Point3(*(c.value() for c in self.coords))

    def simplify(self) -> Union[Point3, "AlgebraicPoint"]:
        return self.to_point3() if self.is_rational else self

    def approx(self) -> Tuple[float, float, float]:
        return tuple(c.approx() for c in self.coords)

    def __eq__(self, other):
        if isinstance(other, Point3):
            other = AlgebraicPoint.of(other)
        if not isinstance(other, AlgebraicPoint):
            return NotImplemented
        return all(a == b for a, b in zip(self.coords, other.coords))

    def __hash__(self):
        return 0

    def __repr__(self):
        return "AlgebraicPoint(" + ", ".join(repr(c) for c in self.coords) + ")"

    def to_json(self):
        return [c.to_json() for c in self.coords]


AnyPoint = Union[Point3, AlgebraicPoint]


def _sort_key(x: AnyPoint):
    return tuple(float(c) for c in x) if isinstance(x, Point3) else x.approx()


def _as_point(coords: Sequence[RealAlgebraic]) -> AnyPoint:
    return AlgebraicPoint(coords).simplify()


def _points_equal(a: AnyPoint, b: AnyPoint) -> bool:
    if isinstance(a, Point3) and isinstance(b, Point3):
        return a == b
    return AlgebraicPoint.of(a) == AlgebraicPoint.of(b)


def _add_unique(bucket: list, x: AnyPoint) -> None:
    if not any(_points_equal(x, y) for y in bucket):
        bucket.append(x)


def _real_roots(u: UniPoly) -> List[RealAlgebraic]:
    roots = RealAlgebraic.roots_of(u)
    for r in roots:
        r.try_rational()
    return roots


def _curve_at(curve: ParamCurve, tau: RealAlgebraic) -> AnyPoint:
    if tau.is_rational:
        return curve.at(tau.value())
    return _as_point([tau.eval(p) for p in curve.comps])


# -- elimination -----------------------------------------------------------------

def _trim(E: List[UniPoly]) -> List[UniPoly]:
    E = list(E)
    while E and not E[-1]:
        E.pop()
    return E


def _eliminant(system: Sequence[List[UniPoly]]) -> Optional[UniPoly]:
    """gcd over Q[t] of the pure-t equations and pairwise resultants in s.

    Each equation is a list, ascending in s, of coefficients in Q[t].
    Returns None when every candidate eliminant vanishes identically and
    a constant when the system has no solution at all.
    """
    eqs = [E for E in (_trim(E) for E in system) if E]
    pieces = [E[0] for E in eqs if len(E) == 1]
    mixed = [E for E in eqs if len(E) > 1]
    for A, B in combinations(mixed, 2):
        r = bivariate_resultant(A, B)
        if r:
            pieces.append(r)
    if not pieces:
        return None
    g = pieces[0]
    for p in pieces[1:]:
        g = poly_gcd(g, p)
        if g.degree == 0:
            break
    return g


def _difference_system(c1: ParamCurve, c2: ParamCurve) -> List[List[UniPoly]]:
    """c1(t) - c2(s) = 0 as equations in s over Q[t]."""
    out = []
    for p, q in zip(c1.comps, c2.comps):
        E = [p - q.coeffs[0] if q else p] + [UniPoly.const(-c) for c in q.coeffs[1:]]
        out.append(E)
    return out


def _params_from(u: Optional[UniPoly], what: str) -> List[RealAlgebraic]:
    if u is None:
        raise NotZeroDimensional(f"{what}: the elimination polynomials vanish identically")
    if u.degree <= 0:
        return []
    return _real_roots(u)


@dataclass(frozen=True)
class Points:
    points: Tuple[AnyPoint, ...]

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


def curve_curve_intersections(g1: ParamCurve, g2: ParamCurve) -> Union[Relation, Points]:
    """Common points of two curves, or IDENTICAL for equal parametrisations."""
    if g1 == g2:
        return IDENTICAL
    ts = _params_from(_eliminant(_difference_system(g1, g2)), "curve intersection")
    if not ts:
        return Points(())
    ss = _params_from(_eliminant(_difference_system(g2, g1)), "curve intersection")
    img1, img2 = [], []
    for t in ts:
        _add_unique(img1, _curve_at(g1, t))
    for s in ss:
        _add_unique(img2, _curve_at(g2, s))
    found = [x for x in img1 if any(_points_equal(x, y) for y in img2)]
    found.sort(key=_sort_key)
    bound = g1.degree * g2.degree
    if len(found) > bound:
        raise AssertionError(f"{len(found)} intersections exceed the degree bound {bound}")
    return Points(tuple(found))


def _divided_difference(p: UniPoly) -> List[UniPoly]:
    """(p(s) - p(t)) / (s - t) as a list ascending in s over Q[t]."""
    a = p.coeffs
    n = len(a) - 1
    return [UniPoly([a[j + i + 1] for j in range(n - i)]) for i in range(max(n, 0))]


def self_crossings(g: ParamCurve) -> List[AnyPoint]:
    """Points reached from two different real parameters."""
    system = [_divided_difference(p) for p in g.comps]
    if any(len(_trim(E)) == 1 and _trim(E)[0].degree == 0 for E in system):
        return []  # some component is injective-linear
    taus = _params_from(_eliminant(system), "self-crossing")
    images = [(t, _curve_at(g, t)) for t in taus]
    out: List[AnyPoint] = []
    for (t1, x1), (t2, x2) in combinations(images, 2):
        if _points_equal(x1, x2):
            _add_unique(out, x1)
    for x in out:
        branches = sum(1 for _, y in images if _points_equal(x, y))
        if branches > g.degree:
            raise AssertionError(f"{branches} branches through one point exceed degree {g.degree}")
    out.sort(key=_sort_key)
    return out


# -- tangents --------------------------------------------------------------------

class LazyTangent:
    """The direction gamma'(tau) at an irrational parameter tau.

    ``ratios`` holds the components divided by the first nonzero one, as exact
    real algebraic numbers; two tangents are equal when their ratios are.
    """

    __slots__ = ("vec", "tau", "pivot", "ratios")

    def __init__(self, vec: Tuple[UniPoly, UniPoly, UniPoly], tau: RealAlgebraic,
                 pivot: int, ratios: Tuple[RealAlgebraic, ...]):
        self.vec = vec
        self.tau = tau
        self.pivot = pivot
        self.ratios = ratios

    def __eq__(self, other):
        if not isinstance(other, LazyTangent):
            return False
        return self.pivot == other.pivot and all(a == b for a, b in zip(self.ratios, other.ratios))

    def __hash__(self):
        return hash(self.pivot)

    def __repr__(self):
        return f"LazyTangent(at {self.tau!r})"

    def enclosure(self):
        return [self.tau.interval_eval(p.coeffs) for p in self.vec]


Tangent = Union[Dir3, LazyTangent]


def curve_params_at(g: ParamCurve, x) -> List[RealAlgebraic]:
    """All real parameters tau with g(tau) = x."""
    if isinstance(x, AlgebraicPoint) and x.is_rational:
        x = x.to_point3()
    if not isinstance(x, AlgebraicPoint):
        x = x if isinstance(x, Point3) else Point3(*x)
        eqs = [p - c for p, c in zip(g.comps, x)]
        nonzero = [e for e in eqs if e]
        u = nonzero[0]
        for e in nonzero[1:]:
            u = poly_gcd(u, e)
        return [] if u.degree <= 0 else _real_roots(u)
    eqs = []
    for p, c in zip(g.comps, x.coords):
        m = UniPoly(c.poly)
        e = m.compose(p)
        if e:
            eqs.append(e)
    u = eqs[0]
    for e in eqs[1:]:
        u = poly_gcd(u, e)
    if u.degree <= 0:
        return []
    return [t for t in _real_roots(u) if _points_equal(_curve_at(g, t), x)]


def _tangent_at(g: ParamCurve, tau: RealAlgebraic) -> Optional[Tangent]:
    dv = g.derivative()
    if tau.is_rational:
        v = [p(tau.value()) if p else Fraction(0) for p in dv]
        return Dir3.of(*v) if any(v) else None
    signs = [tau.sign_at(p) for p in dv]
    if not any(signs):
        return None
    k = next(i for i, sg in enumerate(signs) if sg)
    ratios = tuple(tau.eval(p, dv[k]) if signs[i] else RealAlgebraic.rational(0)
                   for i, p in enumerate(dv))
    exact = [r.try_rational() for r in ratios]
    if all(v is not None for v in exact):
        return Dir3.of(*exact)
    return LazyTangent(dv, tau, k, ratios)


def tangent_dirs_at(g: ParamCurve, x) -> List[Tangent]:
    """Tangent directions of g at x over all regular parameters reaching x."""
    out: List[Tangent] = []
    for tau in curve_params_at(g, x):
        v = _tangent_at(g, tau)
        if v is None or v in out:
            continue
        out.append(v)
    return out


# exact and interval span tests for tangent triples

def _imul(a, b):
    ps = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(ps), max(ps)


def _iadd(a, b):
    return a[0] + b[0], a[1] + b[1]


def _ineg(a):
    return -a[1], -a[0]


def _idet(u, v, w):
    def minor(a, b, c, d):
        return _iadd(_imul(a, d), _ineg(_imul(b, c)))
    t0 = _imul(u[0], minor(v[1], v[2], w[1], w[2]))
    t1 = _imul(u[1], minor(v[0], v[2], w[0], w[2]))
    t2 = _imul(u[2], minor(v[0], v[1], w[0], w[1]))
    return _iadd(_iadd(t0, _ineg(t1)), t2)


def tangents_span(v1: Tangent, v2: Tangent, v3: Tangent, budget: int = 200) -> bool:
    vs = (v1, v2, v3)
    lazy = [v for v in vs if isinstance(v, LazyTangent)]
    if not lazy:
        return det3(v1, v2, v3) != 0
    tau = lazy[0].tau
    if all(v.tau == tau for v in lazy[1:]):
        polys = [v.vec if isinstance(v, LazyTangent) else tuple(UniPoly.const(c) for c in v) for v in vs]
        return tau.sign_at(det3(*polys)) != 0
    for _ in range(budget):
        boxes = [v.enclosure() if isinstance(v, LazyTangent) else [(Fraction(c), Fraction(c)) for c in v]
                 for v in vs]
        lo, hi = _idet(*boxes)
        if lo > 0 or hi < 0:
            return True
        for v in lazy:
            v.tau._bisect()
    raise UndecidedPredicate("span of tangents at distinct irrational parameters is undecided")


# -- multijoints -----------------------------------------------------------------

def _candidates(f: CurveFamilies) -> List[AnyPoint]:
    rational = {}
    other: List[AnyPoint] = []
    fams = f.families
    for a, b in ((0, 1), (0, 2), (1, 2)):
        for g1 in fams[a]:
            for g2 in fams[b]:
                res = curve_curve_intersections(g1, g2)
                if res is IDENTICAL:
                    raise NotZeroDimensional(f"{g1!r} belongs to two families; their intersection is a curve")
                for x in res:
                    if isinstance(x, Point3):
                        rational[x] = None
                    else:
                        _add_unique(other, x)
    return sorted(rational) + sorted(other, key=_sort_key)


def _tangent_sets(f: CurveFamilies, x) -> List[List[List[Tangent]]]:
    """Per family, the tangent list of every curve through x (curves with no
    regular parameter at x contribute an empty list)."""
    out = []
    for fam in f.families:
        per = []
        for g in fam:
            taus = curve_params_at(g, x)
            if taus:
                tangents = []
                for tau in taus:
                    v = _tangent_at(g, tau)
                    if v is not None and v not in tangents:
                        tangents.append(v)
                per.append(tangents)
        out.append(per)
    return out


def _pair_ok(T1, T2, T3) -> bool:
    return any(tangents_span(a, b, c) for a in T1 for b in T2 for c in T3)


def curve_multijoints(f: CurveFamilies) -> List[AnyPoint]:
    out = []
    for x in _candidates(f):
        t1, t2, t3 = ([v for tl in fam for v in tl] for fam in _tangent_sets(f, x))
        if _pair_ok(t1, t2, t3):
            out.append(x)
    return out


def curve_j_threshold(f: CurveFamilies, q, limit: int = DEFAULT_EXACT_LIMIT,
                      exact: bool = True) -> List[AnyPoint]:
    q = tuple(q)
    out = []
    for x in _candidates(f):
        T = _tangent_sets(f, x)
        sizes = tuple(len(fam) for fam in T)
        if has_transversal(sizes, lambda i, j, k: _pair_ok(T[0][i], T[1][j], T[2][k]), q, limit, exact):
            out.append(x)
    return out


def point_to_json(x: AnyPoint):
    return x.to_json()
