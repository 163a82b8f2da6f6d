"""Polynomial partitioning by iterated approximate ham-sandwich bisection.

Round j lifts the surviving points with all monomials of degree <= d_j and
looks for one hyperplane in the lifted space that halves every current
sign class at once. The search runs in floating point; the result is
snapped to rationals and every side count is re-checked exactly.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from math import comb, floor, gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.linalg import qr

from .core_geom import Line3, Point3, rat, rat_str
from .errors import BisectionFailed, ValidationError
from .polyalg.tripoly import TriPoly, product
from .polyalg.unipoly import UniPoly

log = logging.getLogger(__name__)

DEFAULT_EPS = Fraction(1, 10)
DEFAULT_RESTARTS = 64
_SNAP_BITS = (40, 52, 64, 80)


# -- degree schedule -----------------------------------------------------------

def lifted_dim(d: int) -> int:
    """Number of monomials of degree 1..d in three variables."""
    return comb(d + 3, 3) - 1


def round_degree(j: int) -> int:
    """Least d whose lifted dimension can bisect 2^(j-1) sets."""
    d = 1
    while lifted_dim(d) < 2 ** (j - 1):
        d += 1
    return d


@dataclass(frozen=True)
class DegreeSchedule:
    rounds: int

    def __post_init__(self):
        if not isinstance(self.rounds, int) or self.rounds < 1:
            raise ValidationError("rounds must be a positive integer")

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(round_degree(j) for j in range(1, self.rounds + 1))

    @property
    def total_degree(self) -> int:
        return sum(self.degrees)

    def degree_ratio(self) -> float:
        """total_degree / 2^(J/3)."""
        return self.total_degree / 2 ** (self.rounds / 3)

    def to_json(self) -> dict:
        return {"rounds": self.rounds, "degrees": list(self.degrees), "total_degree": self.total_degree}


C0 = max(DegreeSchedule(j).degree_ratio() for j in range(1, 16))
assert C0 <= 8, C0


# -- lifting ---------------------------------------------------------------------

def monomials(d: int) -> List[Tuple[int, int, int]]:
    """Exponents of total degree 1..d, graded, x before y before z within a degree."""
    out = []
    for t in range(1, d + 1):
        for a in range(t, -1, -1):
            for b in range(t - a, -1, -1):
                out.append((a, b, t - a - b))
    return out


def veronese_lift(x: Point3, d: int) -> Tuple[Fraction, ...]:
    if not isinstance(d, int) or d < 1:
        raise ValidationError("lift degree must be a positive integer")
    x = x if isinstance(x, Point3) else Point3(*x)
    return tuple(x.x ** a * x.y ** b * x.z ** c for a, b, c in monomials(d))


@dataclass(frozen=True)
class _Frame:
    """Affine change u = (x - center) / scale mapping the points into [-1, 1]^3."""
    center: Tuple[Fraction, Fraction, Fraction]
    scale: Fraction

    @classmethod
    def of(cls, points: Sequence[Point3]) -> "_Frame":
        if not points:
            return cls((Fraction(0),) * 3, Fraction(1))
        lo = [min(p[i] for p in points) for i in range(3)]
        hi = [max(p[i] for p in points) for i in range(3)]
        center = tuple((a + b) / 2 for a, b in zip(lo, hi))
        scale = max((b - a) / 2 for a, b in zip(lo, hi)) or Fraction(1)
        return cls(center, scale)

    def apply(self, p: Point3) -> Tuple[Fraction, Fraction, Fraction]:
        return tuple((c - o) / self.scale for c, o in zip(p, self.center))

    def pullback(self, coeffs: Sequence[Fraction], d: int) -> TriPoly:
        """TriPoly in x, y, z equal to sum c_m * u^m, constant term first."""
        u = [TriPoly.linear(*[Fraction(int(i == k)) / self.scale for i in range(3)],
                            -self.center[k] / self.scale) for k in range(3)]
        pw = [[TriPoly.const(1)] for _ in range(3)]
        for k in range(3):
            for _ in range(d):
                pw[k].append(pw[k][-1] * u[k])
        acc = TriPoly.const(coeffs[0])
        for c, (a, b, e) in zip(coeffs[1:], monomials(d)):
            if c:
                acc = acc + pw[0][a] * pw[1][b] * pw[2][e] * c
        return acc


class _Lift:
    """Float and exact-integer lifts of a point list in a common frame.

    Integer rows are the lifted vectors (constant first) multiplied by
    den^d, where den is a common denominator of the scaled coordinates;
    the positive factor leaves every sign unchanged.
    """

    def __init__(self, frame: _Frame, points: Sequence[Point3], d: int):
        self.d = d
        self.mons = monomials(d)
        scaled = [frame.apply(p) for p in points]
        den = reduce(lambda a, b: a * b // gcd(a, b), (c.denominator for s in scaled for c in s), 1)
        self.int_coords = [tuple(int(c * den) for c in s) for s in scaled]
        self.den = den
        P = np.array([[float(c) for c in s] for s in scaled]).reshape(len(points), 3)
        cols = [np.ones(len(points))] + [P[:, 0] ** a * P[:, 1] ** b * P[:, 2] ** e for a, b, e in self.mons]
        self.V = np.stack(cols, axis=1)
        self._rows: Dict[int, List[int]] = {}

    def int_row(self, i: int) -> List[int]:
        row = self._rows.get(i)
        if row is None:
            X, Y, Z = self.int_coords[i]
            dp = [self.den ** k for k in range(self.d + 1)]
            row = [dp[self.d]] + [X ** a * Y ** b * Z ** e * dp[self.d - a - b - e] for a, b, e in self.mons]
            self._rows[i] = row
        return row

    def sign(self, i: int, cints: Sequence[int]) -> int:
        v = sum(a * b for a, b in zip(self.int_row(i), cints) if b)
        return (v > 0) - (v < 0)


# -- float search ----------------------------------------------------------------

class _Padded:
    """Sets of row indices as a padded (m, smax) array with a mask."""

    def __init__(self, sets: Sequence[Sequence[int]]):
        self.sets = [list(s) for s in sets]
        m = len(sets)
        smax = max(len(s) for s in sets)
        self.idx = np.zeros((m, smax), dtype=np.int64)
        self.mask = np.zeros((m, smax), dtype=bool)
        for r, s in enumerate(sets):
            self.idx[r, :len(s)] = s
            self.mask[r, :len(s)] = True
        self.sizes = self.mask.sum(axis=1)


def _soft_medians(vals, mask, tau):
    """Root mu of sum tanh((v - mu)/tau) = 0 per row, and normalised weights d mu / d v."""
    big = np.where(mask, vals, -np.inf).max(axis=1)
    small = np.where(mask, vals, np.inf).min(axis=1)
    lo, hi = small - tau, big + tau
    for _ in range(64):
        mid = 0.5 * (lo + hi)
        g = np.where(mask, np.tanh((vals - mid[:, None]) / tau[:, None]), 0.0).sum(axis=1)
        pos = g > 0
        lo = np.where(pos, mid, lo)
        hi = np.where(pos, hi, mid)
    mu = 0.5 * (lo + hi)
    th = np.tanh((vals - mu[:, None]) / tau[:, None])
    w = np.where(mask, (1 - th ** 2) / tau[:, None], 0.0) + 1e-300 * mask
    return mu, w / w.sum(axis=1, keepdims=True)


class _Solver:
    def __init__(self, V, sets, eps: Fraction):
        self.V = V
        self.all = _Padded(sets)
        big = [s for s in sets if len(s) > 1]
        self.big = _Padded(big) if big else None
        self.allow = {len(s): floor((Fraction(1, 2) + eps) * len(s)) for s in sets}

    def _vals(self, pad, c):
        return (self.V @ c)[pad.idx]

    def _spread(self, pad, vals):
        big = np.where(pad.mask, vals, -np.inf).max(axis=1)
        small = np.where(pad.mask, vals, np.inf).min(axis=1)
        return big - small + 1e-300

    def merit(self, c, fr):
        pad = self.big
        vals = self._vals(pad, c)
        sp = self._spread(pad, vals)
        mu, _ = _soft_medians(vals, pad.mask, fr * sp)
        return float(((mu / sp) ** 2).sum())

    def float_ok(self, c) -> bool:
        if self.big is None:
            return True
        pad = self.big
        vals = self._vals(pad, c)
        tol = (np.abs(self.V[pad.idx]).sum(axis=2) * np.abs(c).max() * 1e-12)
        pos = ((vals > tol) & pad.mask).sum(axis=1)
        neg = ((vals < -tol) & pad.mask).sum(axis=1)
        allow = np.array([self.allow[n] for n in pad.sizes])
        return bool(((pos <= allow) & (neg <= allow)).all())

    def median_rows(self, c):
        rows = []
        vals = self.V @ c
        for s in self.big.sets:
            order = sorted(s, key=lambda i: vals[i])
            n = len(order)
            if n % 2:
                rows.append(self.V[order[n // 2]])
            else:
                rows.append(self.V[order[n // 2 - 1]] + self.V[order[n // 2]])
        return np.array(rows)

    def chase(self, c, iters):
        """Project onto the hyperplanes through each set's median until the float check passes."""
        for _ in range(iters):
            if self.float_ok(c):
                return c
            A = self.median_rows(c)
            c = c - np.linalg.lstsq(A, A @ c, rcond=None)[0]
            c = c / np.linalg.norm(c)
        return c if self.float_ok(c) else None

    def solve(self, rng, steps: int = 200):
        c = rng.standard_normal(self.V.shape[1])
        c /= np.linalg.norm(c)
        if self.big is None:
            return c
        pad = self.big
        fr = 0.3
        m = self.merit(c, fr)
        for st in range(steps):
            vals = self._vals(pad, c)
            sp = self._spread(pad, vals)
            mu, w = _soft_medians(vals, pad.mask, fr * sp)
            F = mu / sp
            Jac = np.einsum("ms,msd->md", w, self.V[pad.idx]) / sp[:, None]
            dc = np.linalg.lstsq(Jac, -F, rcond=None)[0]
            alpha = 1.0
            while True:
                c2 = c + alpha * dc
                c2 /= np.linalg.norm(c2)
                m2 = self.merit(c2, fr)
                if m2 < m or alpha <= 1e-4:
                    break
                alpha /= 2
            c, m = c2, m2
            if m < 1e-20 or alpha <= 1e-4:
                done = self.chase(c, 20)
                if done is not None:
                    return done
                if fr > 1e-3:
                    fr *= 0.5
                    m = self.merit(c, fr)
                elif alpha <= 1e-4:
                    return None
            elif st % 3 == 2 and fr > 1e-3:
                fr *= 0.7
                m = self.merit(c, fr)
        return self.chase(c, 30)


# -- exact snapping --------------------------------------------------------------

def _solve_exact(A: List[List[Fraction]], b: List[Fraction]) -> Optional[List[Fraction]]:
    n = len(A)
    M = [list(row) + [rhs] for row, rhs in zip(A, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        pv = M[col][col]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col] / pv
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [M[r][n] / M[r][r] for r in range(n)]


def _pin(lift: _Lift, c0: List[Fraction], pins: List[int]) -> Optional[List[Fraction]]:
    """Adjust c0 on a few coordinates so that the polynomial vanishes exactly at ``pins``."""
    if not pins:
        return c0
    Vp = lift.V[pins]
    Vp = Vp / np.linalg.norm(Vp, axis=1, keepdims=True)
    # independent rows, then well-conditioned columns for them
    _, Rr, prow = qr(Vp.T, mode="economic", pivoting=True)
    diag = np.abs(np.diag(Rr))
    rank = int((diag > diag[0] * 1e-10).sum()) if diag.size else 0
    rows = [pins[i] for i in sorted(prow[:rank])]
    _, _, pcol = qr(lift.V[rows] / np.linalg.norm(lift.V[rows], axis=1, keepdims=True),
                    mode="economic", pivoting=True)
    cols = sorted(int(k) for k in pcol[:rank])
    free = set(range(len(c0))) - set(cols)
    A, b = [], []
    for i in rows:
        row = lift.int_row(i)
        A.append([Fraction(row[k]) for k in cols])
        b.append(-sum(row[k] * c0[k] for k in free if c0[k]))
    sol = _solve_exact(A, b)
    if sol is None:
        return None
    c = list(c0)
    for k, v in zip(cols, sol):
        c[k] = v
    return c


def _int_coeffs(c: Sequence[Fraction]) -> List[int]:
    den = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in c), 1)
    return [int(x * den) for x in c]


def _exact_ok(lift: _Lift, sets, cints, eps) -> bool:
    for s in sets:
        n = len(s)
        if n <= 1:
            continue
        allow = floor((Fraction(1, 2) + eps) * n)
        pos = neg = 0
        for i in s:
            sg = lift.sign(i, cints)
            pos += sg > 0
            neg += sg < 0
            if pos > allow or neg > allow:
                return False
    return True


def _snap(lift: _Lift, sets, c, eps) -> Optional[List[Fraction]]:
    vals = lift.V @ c
    pins = []
    for s in sets:
        if len(s) == 3 and floor((Fraction(1, 2) + eps) * 3) < 2:
            pins.append(sorted(s, key=lambda i: vals[i])[1])
    for bits in _SNAP_BITS:
        scale = 2 ** bits
        c0 = [Fraction(int(round(v * scale)), scale) for v in c]
        if not any(c0):
            continue
        cq = _pin(lift, c0, pins)
        if cq is None or not any(cq[1:]):
            continue
        cints = _int_coeffs(cq)
        if _exact_ok(lift, sets, cints, eps):
            return cq
    return None


def _bisect_indexed(lift: _Lift, sets, eps: Fraction, rng, restarts: int) -> List[Fraction]:
    solver = _Solver(lift.V, sets, eps)
    for attempt in range(restarts):
        c = solver.solve(rng)
        if c is None:
            continue
        cq = _snap(lift, sets, c, eps)
        if cq is not None:
            log.debug("bisection found after %d restart(s)", attempt)
            return cq
    raise BisectionFailed(
        f"no verified bisector of degree {lift.d} for {len(sets)} set(s) after {restarts} restarts")


def _round_rng(seed: int, j: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(j,))))


def _eps(eps) -> Fraction:
    eps = rat(eps) if not isinstance(eps, Fraction) else eps
    if eps < 0:
        raise ValidationError("slack must be nonnegative")
    return eps


def bisect_sets(sets: Sequence[Iterable[Point3]], d: int, eps=DEFAULT_EPS, seed: int = 0,
                restarts: int = DEFAULT_RESTARTS) -> TriPoly:
    """Nonzero polynomial of degree <= d leaving at most (1/2 + eps)|S| points of every set
    S on each open side. Sets with at most one point impose nothing."""
    eps = _eps(eps)
    sets = [sorted(set(Point3(*p) if not isinstance(p, Point3) else p for p in s)) for s in sets]
    if len([s for s in sets if len(s) > 1]) > lifted_dim(d):
        raise ValidationError(f"{len(sets)} sets cannot be bisected in degree {d}")
    pts = sorted({p for s in sets for p in s})
    where = {p: i for i, p in enumerate(pts)}
    frame = _Frame.of(pts)
    lift = _Lift(frame, pts, d)
    idx_sets = [[where[p] for p in s] for s in sets]
    cq = _bisect_indexed(lift, idx_sets, eps, _round_rng(seed, 0), restarts)
    return frame.pullback(cq, d).normalized()


# -- partitions ------------------------------------------------------------------

@dataclass(frozen=True)
class CellLabel:
    signs: str

    def __post_init__(self):
        if set(self.signs) - {"+", "-"}:
            raise ValidationError(f"bad cell label {self.signs!r}")

    def __str__(self):
        return self.signs


class _OnZ:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "ON_Z"


ON_Z = _OnZ()


@dataclass(frozen=True)
class Partition:
    round_polys: Tuple[TriPoly, ...]
    schedule: DegreeSchedule
    slack: Fraction = DEFAULT_EPS
    seed: int = 0
    cube_planes: Tuple[TriPoly, ...] = ()

    def __post_init__(self):
        if len(self.round_polys) != self.schedule.rounds:
            raise ValidationError("one polynomial per round is required")
        for p, d in zip(self.round_polys, self.schedule.degrees):
            if not p:
                raise ValidationError("round polynomials must be nonzero")
            if p.degree > d:
                raise ValidationError(f"round polynomial of degree {p.degree} exceeds {d}")

    @property
    def factors(self) -> Tuple[TriPoly, ...]:
        return tuple(self.round_polys) + tuple(self.cube_planes)

    @cached_property
    def product(self) -> TriPoly:
        return product(self.factors)

    @property
    def degree(self) -> int:
        return sum(p.degree for p in self.factors)

    def restrict_to_line(self, line: Line3) -> UniPoly:
        """Restriction of the product, assembled factor by factor."""
        acc = UniPoly.const(1)
        for p in self.factors:
            acc = acc * p.restrict_to_line(line)
            if not acc:
                break
        return acc

    def restrict_to_curve(self, curve) -> UniPoly:
        acc = UniPoly.const(1)
        for p in self.factors:
            acc = acc * p.restrict_to_curve(curve)
            if not acc:
                break
        return acc

    def to_json(self) -> dict:
        return {
            "schedule": self.schedule.to_json(),
            "epsilon": rat_str(self.slack),
            "seed": self.seed,
            "round_polys": [p.to_json() for p in self.round_polys],
            "cube_planes": [p.to_json() for p in self.cube_planes],
        }

    @classmethod
    def from_json(cls, data) -> "Partition":
        try:
            return cls(tuple(TriPoly.from_json(p) for p in data["round_polys"]),
                       DegreeSchedule(int(data["schedule"]["rounds"])),
                       rat(data.get("epsilon", "1/10")), int(data.get("seed", 0)),
                       tuple(TriPoly.from_json(p) for p in data.get("cube_planes", [])))
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed partition: {exc}") from exc


def gk_partition(points: Iterable[Point3], J: int, eps=DEFAULT_EPS, seed: int = 0,
                 restarts: int = DEFAULT_RESTARTS) -> Partition:
    """J rounds of simultaneous bisection of all current sign classes.

    Every open sign class of the result holds at most |points| * (1/2 + eps)^J
    points, apart from classes of one point (sets that small are never split).
    """
    eps = _eps(eps)
    schedule = DegreeSchedule(J)
    pts = sorted(set(p if isinstance(p, Point3) else Point3(*p) for p in points))
    if not pts:
        raise ValidationError("gk_partition needs at least one point")
    frame = _Frame.of(pts)
    classes: Dict[str, List[int]] = {"": list(range(len(pts)))}
    polys = []
    for j, d in enumerate(schedule.degrees, start=1):
        alive = sorted(i for members in classes.values() for i in members)
        local = {i: n for n, i in enumerate(alive)}
        lift = _Lift(frame, [pts[i] for i in alive], d)
        keys = sorted(classes)
        sets = [[local[i] for i in classes[k]] for k in keys]
        cq = _bisect_indexed(lift, sets, eps, _round_rng(seed, j), restarts)
        cints = _int_coeffs(cq)
        new: Dict[str, List[int]] = {}
        for k in keys:
            for i in classes[k]:
                s = lift.sign(local[i], cints)
                if s:
                    new.setdefault(k + ("+" if s > 0 else "-"), []).append(i)
        classes = new
        polys.append(frame.pullback(cq, d).normalized())
        log.info("round %d: degree %d, %d classes", j, d, len(classes))
    return Partition(tuple(polys), schedule, eps, seed)


def cell_label(part: Partition, x: Point3) -> Union[CellLabel, _OnZ]:
    x = x if isinstance(x, Point3) else Point3(*x)
    signs = []
    for p in part.round_polys:
        s = p.sign_at(x)
        if s == 0:
            return ON_Z
        signs.append("+" if s > 0 else "-")
    return CellLabel("".join(signs))


@dataclass(frozen=True)
class CellHistogram:
    counts: Dict[CellLabel, int]
    on_z: int

    @property
    def total(self) -> int:
        return sum(self.counts.values()) + self.on_z

    @property
    def max_count(self) -> int:
        return max(self.counts.values(), default=0)

    def to_json(self) -> dict:
        return {"cells": {str(k): v for k, v in sorted(self.counts.items(), key=lambda kv: kv[0].signs)},
                "on_z": self.on_z}


def cell_histogram(part: Partition, points: Iterable[Point3]) -> CellHistogram:
    counts: Dict[CellLabel, int] = {}
    on_z = 0
    for x in points:
        lab = cell_label(part, x)
        if lab is ON_Z:
            on_z += 1
        else:
            counts[lab] = counts.get(lab, 0) + 1
    return CellHistogram(counts, on_z)


# -- bounding cube ---------------------------------------------------------------

def _members(families) -> List:
    if families is None:
        return []
    if hasattr(families, "families"):
        return [m for fam in families.families for m in fam]
    out = []
    for item in families:
        if isinstance(item, (list, tuple)):
            out.extend(item)
        else:
            out.append(item)
    return out


def _in_plane(obj, axis: int, c: Fraction) -> bool:
    """Does the line or curve lie in the plane {x_axis = c}?"""
    if isinstance(obj, Line3):
        return obj.dir[axis] == 0 and obj.base[axis] == c
    comp = (obj.px, obj.py, obj.pz)[axis]
    return comp.degree <= 0 and (comp(0) if comp else 0) == c


def augment_with_cube(part: Partition, points: Iterable[Point3], families=None) -> Partition:
    """Add the six face planes of a box strictly containing the points.

    The box starts at [min - 2, max + 2] in every axis; a face plane containing
    an input line or curve is pushed outward by whole units until none does.
    """
    pts = list(points)
    coords = [c for p in pts for c in p]
    lo = Fraction(floor(min(coords))) - 2 if coords else Fraction(-2)
    hi = -Fraction(floor(-max(coords))) + 2 if coords else Fraction(2)
    members = _members(families)
    planes = []
    for axis in range(3):
        for c, step in ((lo, -1), (hi, 1)):
            while any(_in_plane(m, axis, c) for m in members):
                c += step
            coef = [0, 0, 0]
            coef[axis] = 1
            planes.append(TriPoly.linear(*coef, -c))
    return Partition(part.round_polys, part.schedule, part.slack, part.seed, tuple(planes))
