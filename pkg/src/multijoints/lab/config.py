"""Experiment configuration files."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Tuple

from ..core_geom import rat
from ..errors import ValidationError
from ..search import DEFAULT_EXACT_LIMIT

SCHEMA = 1
KINDS = ("grid", "bush", "random", "degenerate", "from-file", "curves-from-file")
RANDOMIZED = ("bush", "random")


def _triple(v, name) -> Optional[Tuple[int, int, int]]:
    if v is None:
        return None
    if not isinstance(v, (list, tuple)) or len(v) != 3 or not all(
            isinstance(x, int) and not isinstance(x, bool) and x >= 1 for x in v):
        raise ValidationError(f"{name} must be three positive integers, got {v!r}")
    return tuple(v)


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str
    n: Optional[int] = None
    N: Optional[Tuple[int, int, int]] = None
    m: int = 1
    L: Optional[Tuple[int, int, int]] = None
    seed: Optional[int] = None
    b: Optional[int] = None
    variant: Optional[str] = None
    path: Optional[str] = None
    thresholds: Optional[Tuple[int, int, int]] = None
    J: int = 3
    eps: Fraction = Fraction(1, 10)
    restarts: int = 64
    trials: int = 2000
    exact_search_limit: int = DEFAULT_EXACT_LIMIT
    outputs: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValidationError(f"unknown kind {self.kind!r}; expected one of {KINDS}")
        if self.kind in RANDOMIZED and self.seed is None:
            raise ValidationError(f"kind {self.kind!r} needs a seed")
        if self.kind == "grid" and (not isinstance(self.n, int) or self.n < 1):
            raise ValidationError("grid needs a positive integer n")
        if self.kind == "bush" and self.N is None:
            raise ValidationError("bush needs N")
        if self.kind == "random" and self.L is None:
            raise ValidationError("random needs L")
        if self.kind == "degenerate" and self.variant is None:
            raise ValidationError("degenerate needs a variant")
        if self.kind in ("from-file", "curves-from-file") and not self.path:
            raise ValidationError(f"{self.kind} needs a path")
        object.__setattr__(self, "N", _triple(self.N, "N"))
        object.__setattr__(self, "L", _triple(self.L, "L"))
        object.__setattr__(self, "thresholds", _triple(self.thresholds, "thresholds"))
        object.__setattr__(self, "eps", rat(self.eps) if not isinstance(self.eps, Fraction) else self.eps)
        for name in ("m", "J", "restarts", "trials", "exact_search_limit"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise ValidationError(f"{name} must be a positive integer")
        if self.eps < 0:
            raise ValidationError("eps must be nonnegative")

    @classmethod
    def from_json(cls, data: dict, base_dir: Optional[Path] = None) -> "ExperimentConfig":
        if not isinstance(data, dict):
            raise ValidationError("config must be a JSON object")
        if data.get("schema") != SCHEMA:
            raise ValidationError(f"unsupported config schema {data.get('schema')!r}; expected {SCHEMA}")
        params = dict(data.get("parameters", {}))
        part = dict(data.get("partition", {}))
        known = {"kind", "schema", "parameters", "thresholds", "partition", "outputs", "trials",
                 "exact_search_limit"}
        extra = set(data) - known
        if extra:
            raise ValidationError(f"unknown config keys: {sorted(extra)}")
        path = params.pop("path", None)
        if path and base_dir is not None and not Path(path).is_absolute():
            path = str(base_dir / path)
        try:
            return cls(kind=data.get("kind"), path=path, thresholds=data.get("thresholds"),
                       J=part.get("J", 3), eps=part.get("eps", "1/10"),
                       restarts=part.get("restarts", 64), trials=data.get("trials", 2000),
                       exact_search_limit=data.get("exact_search_limit", DEFAULT_EXACT_LIMIT),
                       outputs=data.get("outputs", {}), **params)
        except TypeError as exc:
            raise ValidationError(f"bad config parameters: {exc}") from exc

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        path = Path(path)
        try:
            data = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"cannot read config {path}: {exc}") from exc
        return cls.from_json(data, path.parent)
