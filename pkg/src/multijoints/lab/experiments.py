"""Experiment drivers producing exact reports."""
from __future__ import annotations

import json
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Tuple, Union

from ..core_geom import Point3, rat_str
from ..curvegeom import AnyPoint, CurveFamilies, curve_j_threshold, curve_multijoints
from ..errors import ValidationError
from ..incidence import (LineFamilies, SamplingReport, ThresholdQuery, build_incidences, j_threshold,
                         multijoints, multiplicity, subsample_reduction)
from ..partition import C0, DegreeSchedule, cell_histogram, gk_partition
from ..polyalg import CONTAINED, critical_line_census, line_zero_set_incidences
from .config import ExperimentConfig
from .generators import bush_config, degenerate_config, grid_config, random_config


def _read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc


def build_families(cfg: ExperimentConfig) -> Union[LineFamilies, CurveFamilies]:
    if cfg.kind == "grid":
        return grid_config(cfg.n)
    if cfg.kind == "bush":
        return bush_config(*cfg.N, m=cfg.m, seed=cfg.seed)
    if cfg.kind == "random":
        return random_config(*cfg.L, seed=cfg.seed)
    if cfg.kind == "degenerate":
        return degenerate_config(cfg.variant)
    if cfg.kind == "from-file":
        return LineFamilies.from_json(_read_json(cfg.path))
    return CurveFamilies.from_json(_read_json(cfg.path))


def _point_json(x: AnyPoint):
    return x.to_json()


@dataclass(frozen=True)
class BoundReport:
    L: Tuple[int, int, int]
    N: Tuple[int, int, int]
    j_count: int
    ratio_sq: Fraction
    points: Tuple[AnyPoint, ...]
    multiplicities: Tuple[Optional[int], ...]
    runtime_ms: float

    CSV_HEADER = ("L1", "L2", "L3", "N1", "N2", "N3", "J_count", "ratio_sq_num", "ratio_sq_den",
                  "runtime_ms_approx")

    def csv_rows(self):
        return [self.CSV_HEADER,
                (*self.L, *self.N, self.j_count, self.ratio_sq.numerator, self.ratio_sq.denominator,
                 f"{self.runtime_ms:.3f}")]

    def to_json(self) -> dict:
        return {
            "J_count": self.j_count,
            "L": list(self.L),
            "N": list(self.N),
            "multiplicities": list(self.multiplicities),
            "points": [_point_json(x) for x in self.points],
            "ratio_sq": rat_str(self.ratio_sq),
            "runtime_ms_approx": round(self.runtime_ms, 3),
        }


def bound_ratio_sq(j_count: int, L, N) -> Fraction:
    """(|J_N| (N1 N2 N3)^(1/2) / (L1 L2 L3)^(1/2))^2, exactly."""
    return Fraction(j_count ** 2 * N[0] * N[1] * N[2], L[0] * L[1] * L[2])


def run_bound_experiment(cfg: ExperimentConfig) -> BoundReport:
    start = time.perf_counter()
    fam = build_families(cfg)
    q = cfg.thresholds or (1, 1, 1)
    if isinstance(fam, CurveFamilies):
        pts = curve_j_threshold(fam, q, cfg.exact_search_limit) if cfg.thresholds else curve_multijoints(fam)
        mults = tuple(None for _ in pts)
    else:
        inc = build_incidences(fam)
        if cfg.thresholds:
            pts = j_threshold(fam, ThresholdQuery(*q), inc, cfg.exact_search_limit)
        else:
            pts = multijoints(fam, inc)
        mults = tuple(multiplicity(x, fam) for x in pts)
    ratio = bound_ratio_sq(len(pts), fam.sizes, q)
    if cfg.kind == "grid" and ratio != 1:
        raise AssertionError(f"grid sharpness violated: squared ratio {ratio}")
    elapsed = (time.perf_counter() - start) * 1000
    return BoundReport(tuple(fam.sizes), tuple(q), len(pts), ratio, tuple(pts), mults, elapsed)


@dataclass(frozen=True)
class PartitionReport:
    n_points: int
    rounds: int
    eps: Fraction
    seed: int
    histogram: dict
    on_z: int
    max_occupancy: int
    occupancy_bound: Fraction
    product_degree: int
    degree_bound: float
    line_incidences: Tuple
    critical_lines: Tuple
    partition: dict

    def csv_rows(self):
        header = ("points", "rounds", "eps_num", "eps_den", "classes", "on_Z", "max_occupancy",
                  "occupancy_bound_num", "occupancy_bound_den", "product_degree", "degree_bound_approx")
        return [header, (self.n_points, self.rounds, self.eps.numerator, self.eps.denominator,
                         len(self.histogram), self.on_z, self.max_occupancy,
                         self.occupancy_bound.numerator, self.occupancy_bound.denominator,
                         self.product_degree, f"{self.degree_bound:.6f}")]

    def to_json(self) -> dict:
        return {
            "critical_lines": list(self.critical_lines),
            "degree_bound_approx": self.degree_bound,
            "eps": rat_str(self.eps),
            "histogram": self.histogram,
            "line_incidences": list(self.line_incidences),
            "max_occupancy": self.max_occupancy,
            "occupancy_bound": rat_str(self.occupancy_bound),
            "on_z": self.on_z,
            "partition": self.partition,
            "points": self.n_points,
            "product_degree": self.product_degree,
            "rounds": self.rounds,
            "seed": self.seed,
        }


def run_partition_experiment(cfg: ExperimentConfig) -> PartitionReport:
    fam = build_families(cfg)
    if isinstance(fam, CurveFamilies):
        raise ValidationError("partition experiments take line families")
    pts = multijoints(fam)
    if not pts:
        raise ValidationError("the configuration has no multijoints to partition")
    seed = cfg.seed or 0
    part = gk_partition(pts, cfg.J, cfg.eps, seed, cfg.restarts)
    hist = cell_histogram(part, pts)
    lines = [l for f in fam.families for l in f]
    incidences, contained = [], []
    for line in lines:
        r = line_zero_set_incidences(part, line)
        if r is CONTAINED:
            contained.append(line)
            incidences.append({"line": line.to_json(), "contained": True})
        else:
            if r.k > part.degree:
                raise AssertionError("line meets Z more often than the degree allows")
            incidences.append({"line": line.to_json(), "count": r.k})
    critical = critical_line_census(part.product, contained) if contained else []
    return PartitionReport(
        len(pts), cfg.J, cfg.eps, seed, hist.to_json()["cells"], hist.on_z, hist.max_count,
        len(pts) * (Fraction(1, 2) + cfg.eps) ** cfg.J, part.degree, C0 * 2 ** (cfg.J / 3),
        tuple(incidences), tuple(l.to_json() for l in critical), part.to_json())


def run_sampling_experiment(cfg: ExperimentConfig) -> SamplingReport:
    if cfg.thresholds is None:
        raise ValidationError("sampling needs thresholds")
    fam = build_families(cfg)
    if isinstance(fam, CurveFamilies):
        raise ValidationError("sampling experiments take line families")
    return subsample_reduction(fam, ThresholdQuery(*cfg.thresholds), cfg.trials, cfg.seed or 0,
                               cfg.exact_search_limit)


def sampling_csv_rows(r: SamplingReport):
    means = r.mean_sizes()
    header = ("L1", "L2", "L3", "N1", "N2", "N3", "J_count", "trials", "seed", "survival_num",
              "survival_den", "mean_L1_sampled_approx", "mean_L2_sampled_approx", "mean_L3_sampled_approx")
    return [header, (*r.family_sizes, *r.query, r.j_count, r.trials, r.seed,
                     r.survival_fraction.numerator, r.survival_fraction.denominator,
                     *(f"{float(m):.6f}" for m in means))]
