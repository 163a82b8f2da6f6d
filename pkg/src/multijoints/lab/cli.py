"""Command-line entry point: ``multijoints <verb> ...``."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import List, Optional

from ..errors import MultijointError, ValidationError
from ..search import DEFAULT_EXACT_LIMIT
from .config import ExperimentConfig
from .experiments import (build_families, run_bound_experiment, run_partition_experiment,
                          run_sampling_experiment)
from .reports import emit_report

SOURCE_HELP = ("a families JSON file, a config JSON file (with \"schema\": 1), or a generator "
               "shorthand: grid:N, bush:N1,N2,N3[:m], random:L1,L2,L3, degenerate:KIND")


def _ints(text: str) -> List[int]:
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise ValidationError(f"expected comma-separated integers, got {text!r}") from None


def config_from_source(source: str, seed: int, limit: int, curves: bool = False) -> ExperimentConfig:
    path = Path(source)
    if path.exists():
        try:
            data = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"cannot read {path}: {exc}") from exc
        if isinstance(data, dict) and "schema" in data:
            return replace(ExperimentConfig.from_json(data, path.parent), exact_search_limit=limit)
        kind = "curves-from-file" if curves else "from-file"
        return ExperimentConfig(kind, path=str(path), seed=seed, exact_search_limit=limit)
    kind, _, rest = source.partition(":")
    if kind == "grid":
        return ExperimentConfig("grid", n=_ints(rest)[0], seed=seed, exact_search_limit=limit)
    if kind == "bush":
        parts = rest.split(":")
        m = _ints(parts[1])[0] if len(parts) > 1 else 1
        return ExperimentConfig("bush", N=tuple(_ints(parts[0])), m=m, seed=seed, exact_search_limit=limit)
    if kind == "random":
        return ExperimentConfig("random", L=tuple(_ints(rest)), seed=seed, exact_search_limit=limit)
    if kind == "degenerate":
        return ExperimentConfig("degenerate", variant=rest, seed=seed, exact_search_limit=limit)
    raise ValidationError(f"no such file and not a generator shorthand: {source!r}")


def _global_flags(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--seed", type=int, default=d(0), help="root seed for randomized steps")
    p.add_argument("--out", default=d("-"), help="output path ('-' for stdout)")
    p.add_argument("--format", choices=("json", "csv"), default=d("json"))
    p.add_argument("--exact-search-limit", type=int, default=d(DEFAULT_EXACT_LIMIT),
                   help="largest per-family through-count searched exhaustively")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="multijoints", description="Exact multijoint laboratory.")
    _global_flags(parser, suppress=False)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="verb", required=True)

    def verb(name, help_text):
        p = sub.add_parser(name, help=help_text)
        _global_flags(p, suppress=True)
        return p

    g = verb("gen", "generate line families as JSON")
    g.add_argument("kind", choices=("grid", "bush", "random", "degenerate"))
    g.add_argument("params", nargs="*", help="grid: n | bush: N1 N2 N3 [m] | random: L1 L2 L3 | degenerate: KIND")

    c = verb("count", "count multijoints and report the bound ratio")
    c.add_argument("source", help=SOURCE_HELP)

    t = verb("threshold", "count thresholded multijoints J_N")
    t.add_argument("source", help=SOURCE_HELP)
    t.add_argument("--N", type=int, nargs=3, required=True, metavar=("N1", "N2", "N3"))

    p = verb("partition", "partition the multijoints of a configuration")
    p.add_argument("source", help=SOURCE_HELP)
    p.add_argument("--rounds", "-J", type=int, default=3)
    p.add_argument("--eps", default="1/10")
    p.add_argument("--restarts", type=int, default=64)

    s = verb("sample", "run the random subsampling reduction")
    s.add_argument("source", help=SOURCE_HELP)
    s.add_argument("--N", type=int, nargs=3, required=True, metavar=("N1", "N2", "N3"))
    s.add_argument("--trials", type=int, default=2000)

    cv = verb("curves", "multijoints of three families of parametrised curves")
    cv.add_argument("source", help="curve families JSON or config JSON")
    cv.add_argument("--N", type=int, nargs=3, metavar=("N1", "N2", "N3"))
    return parser


def _gen(args):
    p = args.params
    try:
        if args.kind == "grid":
            short = f"grid:{p[0]}"
        elif args.kind == "bush":
            short = f"bush:{p[0]},{p[1]},{p[2]}" + (f":{p[3]}" if len(p) > 3 else "")
        elif args.kind == "random":
            short = f"random:{p[0]},{p[1]},{p[2]}"
        else:
            short = f"degenerate:{p[0]}"
    except IndexError:
        raise ValidationError(f"not enough parameters for {args.kind}") from None
    return build_families(config_from_source(short, args.seed, args.exact_search_limit))


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        limit = args.exact_search_limit
        if limit < 1:
            raise ValidationError("--exact-search-limit must be positive")
        if args.verb == "gen":
            report = _gen(args)
        else:
            cfg = config_from_source(args.source, args.seed, limit, curves=args.verb == "curves")
            if args.verb == "count":
                report = run_bound_experiment(replace(cfg, thresholds=None))
            elif args.verb in ("threshold", "curves"):
                report = run_bound_experiment(replace(cfg, thresholds=tuple(args.N) if args.N else None))
            elif args.verb == "partition":
                report = run_partition_experiment(replace(cfg, J=args.rounds, eps=args.eps,
                                                          restarts=args.restarts, seed=args.seed))
            else:
                report = run_sampling_experiment(replace(cfg, thresholds=tuple(args.N),
                                                         trials=args.trials, seed=args.seed))
        if args.verb == "gen" and args.format == "csv":
            raise ValidationError("gen writes JSON only")
        emit_report(report, args.format, args.out)
    except MultijointError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except AssertionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0


def main() -> None:
    sys.exit(run())
