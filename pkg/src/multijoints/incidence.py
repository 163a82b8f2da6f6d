"""Multijoints of three families of lines, multiplicities and thresholds."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .core_geom import Line3, Point3, det3, line_intersect, point_on_line
from .errors import EmptyThresholdSet, ValidationError
from .search import DEFAULT_EXACT_LIMIT, has_transversal

log = logging.getLogger(__name__)


def _dedup(lines: Sequence[Line3], name: str) -> Tuple[Line3, ...]:
    seen = {}
    for line in lines:
        if not isinstance(line, Line3):
            raise ValidationError(f"{name}: expected Line3, got {type(line).__name__}")
        seen.setdefault(line, None)
    if len(seen) < len(lines):
        log.warning("%s: dropped %d duplicate line(s)", name, len(lines) - len(seen))
    return tuple(seen)


@dataclass(frozen=True)
class LineFamilies:
    fam1: Tuple[Line3, ...]
    fam2: Tuple[Line3, ...]
    fam3: Tuple[Line3, ...]

    def __post_init__(self):
        for k in ("fam1", "fam2", "fam3"):
            fam = _dedup(tuple(getattr(self, k)), k)
            if not fam:
                raise ValidationError(f"{k} is empty")
            object.__setattr__(self, k, fam)

    @property
    def families(self) -> Tuple[Tuple[Line3, ...], ...]:
        return (self.fam1, self.fam2, self.fam3)

    @property
    def sizes(self) -> Tuple[int, int, int]:
        return (len(self.fam1), len(self.fam2), len(self.fam3))

    def to_json(self) -> dict:
        return {f"fam{i + 1}": [l.to_json() for l in fam] for i, fam in enumerate(self.families)}

    @classmethod
    def from_json(cls, data) -> "LineFamilies":
        try:
            fams = [data[f"fam{i}"] for i in (1, 2, 3)]
        except (KeyError, TypeError) as exc:
            raise ValidationError("families need keys fam1, fam2, fam3") from exc
        return cls(*(tuple(Line3.from_json(l) for l in fam) for fam in fams))


@dataclass(frozen=True)
class ThresholdQuery:
    N1: int
    N2: int
    N3: int

    def __post_init__(self):
        for v in (self.N1, self.N2, self.N3):
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise ValidationError(f"thresholds must be positive integers, got {v!r}")

    @classmethod
    def of(cls, *values) -> "ThresholdQuery":
        """Accept positive reals too: a real threshold N acts as ceil(N)."""
        out = []
        for v in values:
            v = Fraction(v)
            if v <= 0:
                raise ValidationError(f"thresholds must be positive, got {v}")
            out.append(math.ceil(v))
        return cls(*out)

    def __iter__(self):
        return iter((self.N1, self.N2, self.N3))

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.N1, self.N2, self.N3)


ONES = ThresholdQuery(1, 1, 1)


@dataclass(frozen=True)
class IncidenceStructure:
    families: LineFamilies
    points: Tuple[Point3, ...]
    through: Tuple[Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[int, ...]], ...]
    _index: Dict[Point3, int] = field(default=None, repr=False, compare=False)

    def index(self, x: Union[int, Point3]) -> int:
        if isinstance(x, int):
            if not 0 <= x < len(self.points):
                raise ValidationError(f"point index {x} out of range")
            return x
        try:
            return self._index[x]
        except KeyError:
            raise ValidationError(f"{x!r} is not a candidate point") from None

    def lines_through(self, x) -> Tuple[List[Line3], List[Line3], List[Line3]]:
        idx = self.through[self.index(x)]
        return tuple([fam[i] for i in ids] for fam, ids in zip(self.families.families, idx))


def build_incidences(f: LineFamilies) -> IncidenceStructure:
    """Candidates are the cross-family pairwise intersection points."""
    fams = f.families
    table: Dict[Point3, List[set]] = {}
    for a, b in ((0, 1), (0, 2), (1, 2)):
        for i, l1 in enumerate(fams[a]):
            for j, l2 in enumerate(fams[b]):
                x = line_intersect(l1, l2)
                if isinstance(x, Point3):
                    rec = table.setdefault(x, [set(), set(), set()])
                    rec[a].add(i)
                    rec[b].add(j)
    # a line shared by two families is recorded under both
    where: Dict[Line3, List[Tuple[int, int]]] = {}
    for fi, fam in enumerate(fams):
        for i, line in enumerate(fam):
            where.setdefault(line, []).append((fi, i))
    shared = {k: v for k, v in where.items() if len(v) > 1}
    if shared:
        for rec in table.values():
            for copies in shared.values():
                if any(i in rec[fi] for fi, i in copies):
                    for fi, i in copies:
                        rec[fi].add(i)
    points = tuple(sorted(table))
    through = tuple(tuple(tuple(sorted(s)) for s in table[x]) for x in points)
    return IncidenceStructure(f, points, through, {x: n for n, x in enumerate(points)})


def _dirs_through(inc: IncidenceStructure, n: int):
    return [[fam[i].dir for i in ids] for fam, ids in zip(inc.families.families, inc.through[n])]


def is_multijoint(x, inc: IncidenceStructure) -> bool:
    d1, d2, d3 = _dirs_through(inc, inc.index(x))
    return any(det3(a, b, c) for a in d1 for b in d2 for c in d3)


def multijoints(f: LineFamilies, inc: IncidenceStructure = None) -> List[Point3]:
    """Sorted list of multijoints."""
    inc = inc or build_incidences(f)
    return [x for n, x in enumerate(inc.points) if is_multijoint(n, inc)]


def multiplicity(x: Point3, f: LineFamilies) -> int:
    """Number of ordered spanning triples (l1, l2, l3) through x."""
    dirs = [[l.dir for l in fam if point_on_line(x, l)] for fam in f.families]
    return sum(1 for a, b, c in product(*dirs) if det3(a, b, c))


def is_transversal(A: Sequence[Line3], B: Sequence[Line3], C: Sequence[Line3]) -> bool:
    return all(det3(a.dir, b.dir, c.dir) for a in A for b in B for c in C)


def has_transversal_subcollections(x, inc: IncidenceStructure, q: ThresholdQuery,
                                   limit: int = DEFAULT_EXACT_LIMIT, exact: bool = True) -> bool:
    d1, d2, d3 = _dirs_through(inc, inc.index(x))
    return has_transversal((len(d1), len(d2), len(d3)),
                           lambda i, j, k: det3(d1[i], d2[j], d3[k]) != 0,
                           tuple(q), limit, exact)


def j_threshold(f: LineFamilies, q: ThresholdQuery, inc: IncidenceStructure = None,
                limit: int = DEFAULT_EXACT_LIMIT, exact: bool = True) -> List[Point3]:
    inc = inc or build_incidences(f)
    return [x for n, x in enumerate(inc.points)
            if has_transversal_subcollections(n, inc, q, limit, exact)]


# -- subsampling -----------------------------------------------------------------

@dataclass(frozen=True)
class SamplingReport:
    trials: int
    survival_fraction: Fraction
    sampled_sizes: Tuple[Tuple[int, int, int], ...]
    seed: int
    query: Tuple[int, int, int] = (1, 1, 1)
    family_sizes: Tuple[int, int, int] = (0, 0, 0)
    j_count: int = 0
    per_point_survivals: Tuple[int, ...] = ()

    def mean_sizes(self) -> Tuple[Fraction, Fraction, Fraction]:
        n = len(self.sampled_sizes)
        return tuple(Fraction(sum(s[i] for s in self.sampled_sizes), n) for i in range(3))

    def to_json(self) -> dict:
        from .core_geom import rat_str
        return {
            "family_sizes": list(self.family_sizes),
            "j_count": self.j_count,
            "mean_sampled_sizes": [rat_str(m) for m in self.mean_sizes()],
            "per_point_survivals": list(self.per_point_survivals),
            "query": list(self.query),
            "sampled_sizes": [list(s) for s in self.sampled_sizes],
            "seed": self.seed,
            "survival_fraction": rat_str(self.survival_fraction),
            "trials": self.trials,
        }


def family_rng(seed: int, trial: int, family: int) -> np.random.Generator:
    """Independent stream for (trial, family), derived from the root seed."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(trial, family))))


def subsample_reduction(f: LineFamilies, q: ThresholdQuery, trials: int, seed: int,
                        limit: int = DEFAULT_EXACT_LIMIT, exact: bool = True) -> SamplingReport:
    """Keep each line of family i with probability 1/N_i; track which points of J_N stay multijoints."""
    if not isinstance(trials, int) or trials < 1:
        raise ValidationError("trials must be a positive integer")
    q = q if isinstance(q, ThresholdQuery) else ThresholdQuery(*q)
    inc = build_incidences(f)
    targets = [n for n in range(len(inc.points)) if has_transversal_subcollections(n, inc, q, limit, exact)]
    if not targets:
        raise EmptyThresholdSet(f"J_N is empty for N={q.as_tuple()}")
    triples = []
    for n in targets:
        ids = inc.through[n]
        triples.append([(a, b, c) for a in ids[0] for b in ids[1] for c in ids[2]
                        if det3(f.fam1[a].dir, f.fam2[b].dir, f.fam3[c].dir)])
    probs = [1.0 / v for v in q]
    survivals = [0] * len(targets)
    sizes = []
    for t in range(trials):
        keep = []
        for fam_i, (size, p) in enumerate(zip(f.sizes, probs)):
            if p >= 1.0:
                keep.append(np.ones(size, dtype=bool))
            else:
                keep.append(family_rng(seed, t, fam_i).random(size) < p)
        sizes.append(tuple(int(k.sum()) for k in keep))
        k1, k2, k3 = keep
        for pos, tri in enumerate(triples):
            if any(k1[a] and k2[b] and k3[c] for a, b, c in tri):
                survivals[pos] += 1
    frac = Fraction(sum(survivals), len(targets) * trials)
    return SamplingReport(trials, frac, tuple(sizes), seed, q.as_tuple(), f.sizes,
                          len(targets), tuple(survivals))
