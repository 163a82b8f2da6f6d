import csv
import io
import json
import logging
from fractions import Fraction

import pytest

from multijoints import (GenericityFailure, LineFamilies, Point3, ThresholdQuery, ValidationError,
                         j_threshold, multijoints, multiplicity)
from multijoints.lab import (ExperimentConfig, bound_ratio_sq, build_families, bush_config,
                             degenerate_config, emit_report, grid_config, random_config, render,
                             run_bound_experiment, run_partition_experiment,
                             run_sampling_experiment)
from multijoints.lab.cli import run
from multijoints.lab.reports import ReportIOError

from oracles import brute_multijoints, fams_of, pts_of


# -- generators -------------------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3])
def test_grid(n):
    f = grid_config(n)
    assert f.sizes == (n * n,) * 3
    assert len(multijoints(f)) == n ** 3


def test_grid_validation():
    with pytest.raises(ValidationError):
        grid_config(0)


def test_bush_examples():
    f = bush_config(2, 2, 2, seed=0)
    assert Point3(0, 0, 0) in j_threshold(f, ThresholdQuery(2, 2, 2))
    one = bush_config(1, 1, 1, seed=0)
    assert multijoints(one) == [Point3(0, 0, 0)]
    assert multiplicity(Point3(0, 0, 0), one) == 1
    five = bush_config(2, 2, 2, m=5, seed=1)
    assert len(j_threshold(five, ThresholdQuery(2, 2, 2))) == 5


def test_bush_genericity_failure():
    with pytest.raises(GenericityFailure):
        bush_config(40, 40, 40, seed=0, budget=1)


def test_random_examples():
    f = random_config(1, 1, 1, seed=3)
    assert sum(f.sizes) == 3 and len(multijoints(f)) in (0, 1)
    big = random_config(10, 10, 10, seed=7)
    assert pts_of(multijoints(big)) == brute_multijoints(fams_of(big))
    assert random_config(4, 5, 6, seed=9) == random_config(4, 5, 6, seed=9)
    assert random_config(4, 5, 6, seed=9) != random_config(4, 5, 6, seed=10)


def test_degenerate_examples(caplog):
    flat = degenerate_config("coplanar")
    assert flat.sizes == (3, 3, 3) and multijoints(flat) == []
    bundle = degenerate_config("concurrent-coplanar")
    assert multijoints(bundle) == []
    with caplog.at_level(logging.WARNING):
        dup = degenerate_config("duplicated")
    assert "duplicate" in caplog.text
    assert len(set(dup.fam1)) == len(dup.fam1)
    with pytest.raises(ValidationError):
        degenerate_config("nope")


# -- config ----------------------------------------------------------------------

def test_config_from_json(tmp_path):
    data = {"schema": 1, "kind": "bush", "parameters": {"N": [2, 2, 2], "m": 2, "seed": 4},
            "thresholds": [2, 2, 2], "partition": {"J": 4, "eps": "1/5"}, "trials": 10}
    cfg = ExperimentConfig.from_json(data)
    assert cfg.N == (2, 2, 2) and cfg.m == 2 and cfg.J == 4 and cfg.eps == Fraction(1, 5)
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps(data))
    assert ExperimentConfig.load(p) == cfg


@pytest.mark.parametrize("data", [
    {"schema": 2, "kind": "grid", "parameters": {"n": 2}},
    {"schema": 1, "kind": "grid", "parameters": {"n": 0}},
    {"schema": 1, "kind": "bush", "parameters": {"N": [2, 2, 2]}},
    {"schema": 1, "kind": "random", "parameters": {"L": [1, 2], "seed": 1}},
    {"schema": 1, "kind": "grid", "parameters": {"n": 2}, "colour": "red"},
    {"schema": 1, "kind": "grid", "parameters": {"n": 2, "bogus": 1}},
    {"schema": 1, "kind": "grid", "parameters": {"n": 2}, "partition": {"eps": "-1/2"}},
    {"schema": 1, "kind": "tetris"},
])
def test_config_validation(data):
    with pytest.raises(ValidationError):
        ExperimentConfig.from_json(data)


def test_from_file_relative_path(tmp_path):
    (tmp_path / "fams.json").write_text(json.dumps(grid_config(2).to_json()))
    (tmp_path / "cfg.json").write_text(json.dumps(
        {"schema": 1, "kind": "from-file", "parameters": {"path": "fams.json"}}))
    cfg = ExperimentConfig.load(tmp_path / "cfg.json")
    assert build_families(cfg) == grid_config(2)


# -- experiments -----------------------------------------------------------------

def test_bound_experiment_examples():
    r = run_bound_experiment(ExperimentConfig("grid", n=4))
    assert r.j_count == 64 and r.ratio_sq == 1
    r = run_bound_experiment(ExperimentConfig("degenerate", variant="coplanar"))
    assert r.j_count == 0 and r.ratio_sq == 0
    r = run_bound_experiment(ExperimentConfig("bush", N=(3, 3, 3), seed=0, thresholds=(3, 3, 3)))
    assert r.j_count == 1 and r.ratio_sq == Fraction(27, 27)
    assert bound_ratio_sq(2, (4, 4, 4), (1, 2, 1)) == Fraction(8, 64)


def test_bound_experiment_matches_oracle():
    for seed in range(5):
        cfg = ExperimentConfig("random", L=(4, 4, 4), seed=seed)
        r = run_bound_experiment(cfg)
        assert pts_of(r.points) == brute_multijoints(fams_of(build_families(cfg)))


def test_partition_experiment():
    r = run_partition_experiment(ExperimentConfig("grid", n=4, J=6, seed=0))
    assert sum(r.histogram.values()) + r.on_z == 64
    assert r.max_occupancy <= 64 * Fraction(6, 10) ** 6
    assert r.product_degree <= r.degree_bound
    for rec in r.line_incidences:
        assert rec.get("contained") or rec["count"] <= r.product_degree
    with pytest.raises(ValidationError):
        run_partition_experiment(ExperimentConfig("degenerate", variant="coplanar"))


def test_sampling_experiment():
    cfg = ExperimentConfig("bush", N=(2, 2, 2), seed=5, thresholds=(2, 2, 2), trials=300)
    a = run_sampling_experiment(cfg)
    assert a == run_sampling_experiment(cfg)
    assert render(a, "json") == render(run_sampling_experiment(cfg), "json")
    with pytest.raises(ValidationError):
        run_sampling_experiment(ExperimentConfig("grid", n=2))


# -- reports ---------------------------------------------------------------------

def test_csv_schema():
    r = run_bound_experiment(ExperimentConfig("grid", n=2))
    rows = list(csv.reader(io.StringIO(render(r, "csv"))))
    assert rows[0] == ["L1", "L2", "L3", "N1", "N2", "N3", "J_count", "ratio_sq_num",
                       "ratio_sq_den", "runtime_ms_approx"]
    assert rows[1][:9] == ["4", "4", "4", "1", "1", "1", "8", "1", "1"]


def test_json_is_canonical(tmp_path):
    r = run_bound_experiment(ExperimentConfig("grid", n=2))
    text = render(r, "json")
    data = json.loads(text)
    assert list(data) == sorted(data)
    assert data["ratio_sq"] == "1/1"
    assert data["points"][0] == ["0/1", "0/1", "0/1"]
    out = tmp_path / "r.json"
    emit_report(r, "json", out)
    assert out.read_text() == text


def test_unwritable_path(tmp_path):
    r = run_bound_experiment(ExperimentConfig("grid", n=1))
    with pytest.raises(ReportIOError):
        emit_report(r, "json", tmp_path / "missing" / "r.json")


# -- CLI -------------------------------------------------------------------------

def test_cli_count(capsys):
    assert run(["count", "grid:3"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["J_count"] == 27 and data["ratio_sq"] == "1/1"


def test_cli_gen_roundtrip(tmp_path, capsys):
    out = tmp_path / "bush.json"
    assert run(["gen", "bush", "2", "2", "2", "--seed", "3", "--out", str(out)]) == 0
    assert LineFamilies.from_json(json.loads(out.read_text())) == bush_config(2, 2, 2, seed=3)
    assert run(["threshold", str(out), "--N", "2", "2", "2"]) == 0
    assert json.loads(capsys.readouterr().out)["J_count"] == 1


def test_cli_sample_and_partition(capsys):
    assert run(["sample", "bush:2,2,2", "--N", "2", "2", "2", "--trials", "50", "--format", "csv"]) == 0
    assert capsys.readouterr().out.startswith("L1,L2,L3,N1,N2,N3,J_count,trials")
    assert run(["partition", "grid:3", "-J", "3", "--seed", "1"]) == 0
    assert json.loads(capsys.readouterr().out)["points"] == 27


def test_cli_curves(tmp_path, capsys):
    from multijoints import CurveFamilies, ParamCurve
    from multijoints.polyalg import UniPoly
    t, zero = UniPoly.t(), UniPoly()
    f = CurveFamilies((ParamCurve(t, zero, zero),), (ParamCurve(zero, t, zero),),
                      (ParamCurve(t ** 2, t ** 2, t),))
    path = tmp_path / "curves.json"
    path.write_text(json.dumps(f.to_json()))
    assert run(["curves", str(path)]) == 0
    assert json.loads(capsys.readouterr().out)["points"] == [["0/1", "0/1", "0/1"]]


@pytest.mark.parametrize("argv,code", [
    (["count", "grid:0"], 2),
    (["count", "nonsense"], 2),
    (["count", "bush:1,2"], 2),
    (["gen", "grid", "2", "--format", "csv"], 2),
    (["count", "grid:2", "--exact-search-limit", "0"], 2),
    (["sample", "grid:2", "--N", "2", "2", "2", "--trials", "5"], 3),
])
def test_cli_exit_codes(argv, code, capsys):
    assert run(argv) == code
    assert "error:" in capsys.readouterr().err


def test_cli_unwritable_out(tmp_path, capsys):
    assert run(["count", "grid:2", "--out", str(tmp_path / "no" / "x.json")]) == 2


def test_cli_seed_determinism(capsys):
    run(["gen", "random", "4", "4", "4", "--seed", "12"])
    a = capsys.readouterr().out
    run(["gen", "random", "4", "4", "4", "--seed", "12"])
    assert capsys.readouterr().out == a
