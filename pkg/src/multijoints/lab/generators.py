"""Line configurations: grids, bushes, random and degenerate families."""
from __future__ import annotations

from itertools import product
from typing import List

import numpy as np

from ..core_geom import Dir3, Line3, Point3, canonicalize_line, det3
from ..errors import GenericityFailure, ValidationError
from ..incidence import LineFamilies, ThresholdQuery, j_threshold, multijoints


def _rng(seed: int, *key: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=key)))


def _positive_int(name, v):
    if not isinstance(v, int) or isinstance(v, bool) or v < 1:
        raise ValidationError(f"{name} must be a positive integer, got {v!r}")


def grid_config(n: int) -> LineFamilies:
    """Axis-parallel lines through {0..n-1}^3; n^3 multijoints from n^2 lines per family."""
    _positive_int("n", n)
    r = range(n)
    return LineFamilies(
        tuple(canonicalize_line(Point3(0, j, k), (1, 0, 0)) for j in r for k in r),
        tuple(canonicalize_line(Point3(i, 0, k), (0, 1, 0)) for i in r for k in r),
        tuple(canonicalize_line(Point3(i, j, 0), (0, 0, 1)) for i in r for j in r),
    )


def _random_dir(rng, span: int = 3) -> Dir3:
    while True:
        v = rng.integers(-span, span + 1, size=3)
        if v.any():
            return Dir3.of(*(int(c) for c in v))


def bush_config(N1: int, N2: int, N3: int, m: int = 1, seed: int = 0, budget: int = 200) -> LineFamilies:
    """N_i lines of family i through each of m hub points, every cross-family triple spanning.

    Directions are resampled until the multijoints are exactly the hubs.
    """
    for name, v in (("N1", N1), ("N2", N2), ("N3", N3), ("m", m)):
        _positive_int(name, v)
    rng = _rng(seed, 0)
    Ns = (N1, N2, N3)
    for _ in range(budget):
        hubs: List[Point3] = []
        while len(hubs) < m:
            p = Point3(*(int(c) for c in rng.integers(-20, 21, size=3)))
            if p not in hubs:
                hubs.append(p)
        if m == 1:
            hubs = [Point3(0, 0, 0)]
        fams = [[], [], []]
        ok = True
        for hub in hubs:
            dirs = [[], [], []]
            for f in range(3):
                while len(dirs[f]) < Ns[f]:
                    d = _random_dir(rng)
                    if d not in dirs[f]:
                        dirs[f].append(d)
            if not all(det3(a, b, c) for a, b, c in product(*dirs)):
                ok = False
                break
            for f in range(3):
                fams[f].extend(canonicalize_line(hub, d) for d in dirs[f])
        if not ok or any(len(set(f)) < len(f) for f in fams):
            continue
        fam = LineFamilies(*(tuple(f) for f in fams))
        if multijoints(fam) == sorted(hubs) and j_threshold(fam, ThresholdQuery(*Ns)) == sorted(hubs):
            return fam
    raise GenericityFailure(f"no generic bush found after {budget} attempts")


def random_config(L1: int, L2: int, L3: int, seed: int = 0) -> LineFamilies:
    """Lines with bases in {0,1,2}^3 and directions in {-1,0,1}^3, so that many pairs meet."""
    sizes = (L1, L2, L3)
    for name, v in zip(("L1", "L2", "L3"), sizes):
        _positive_int(name, v)
    fams = []
    for f, L in enumerate(sizes):
        rng = _rng(seed, 1, f)
        lines: List[Line3] = []
        span = 2
        tries = 0
        while len(lines) < L:
            base = Point3(*(int(c) for c in rng.integers(0, span + 1, size=3)))
            line = canonicalize_line(base, _random_dir(rng, 1))
            if line not in lines:
                lines.append(line)
            tries += 1
            if tries > 50 * L:
                span, tries = span + 1, 0
        fams.append(tuple(lines))
    return LineFamilies(*fams)


DEGENERATE_KINDS = ("coplanar", "concurrent-coplanar", "duplicated")


def degenerate_config(kind: str) -> LineFamilies:
    if kind == "coplanar":
        return LineFamilies(
            tuple(canonicalize_line(Point3(0, j, 0), (1, 0, 0)) for j in range(3)),
            tuple(canonicalize_line(Point3(i, 0, 0), (0, 1, 0)) for i in range(3)),
            tuple(canonicalize_line(Point3(k, 0, 0), (1, 1, 0)) for k in range(3)),
        )
    if kind == "concurrent-coplanar":
        o = Point3(0, 0, 0)
        dirs = (((1, 0, 0), (1, 1, 0), (1, 2, 0)),
                ((0, 1, 0), (1, -1, 0), (2, 1, 0)),
                ((1, 3, 0), (3, 1, 0), (1, -2, 0)))
        return LineFamilies(*(tuple(canonicalize_line(o, d) for d in ds) for ds in dirs))
    if kind == "duplicated":
        g = grid_config(2)
        return LineFamilies(g.fam1 + g.fam1, g.fam2 + g.fam2[:1], g.fam3)
    raise ValidationError(f"unknown degenerate kind {kind!r}; choose from {DEGENERATE_KINDS}")

