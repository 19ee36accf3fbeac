"""Experiment configuration: dataclasses plus a strict YAML loader."""

from __future__ import annotations

import copy
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Optional

import numpy as np
import yaml

from ..exponents import exponent_from_config
from ..grid import GridSpec
from ..symbols import symbol_from_config
from ..weights import weight_from_config

EXPERIMENTS = tuple(f"e{i}" for i in range(1, 10))


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class GridConfig:
    n: int = 1
    L: float = 8.0
    N: int = 128

    def spec(self) -> GridSpec:
        return GridSpec(self.n, self.L, self.N)


@dataclass(frozen=True)
class LambdaSweep:
    min: float = 2.0
    max: float = 64.0
    count: int = 11

    def __post_init__(self):
        if not 0 < self.min < self.max or self.count < 2:
            raise ConfigError("lambda sweep must be increasing with at least two points")

    def values(self) -> np.ndarray:
        return np.geomspace(self.min, self.max, self.count)


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    grid: GridConfig = field(default_factory=GridConfig)
    seed: int = 0
    corpus_size: int = 100
    lambda_sweep: LambdaSweep = field(default_factory=LambdaSweep)
    exponents: tuple = ()
    symbols: tuple = ()
    weights: tuple = ()
    params: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)

    def tol(self, key: str) -> float:
        return float(self.tolerances[key])

    def to_dict(self) -> dict:
        d = asdict(self)
        d["exponents"] = list(self.exponents)
        d["symbols"] = list(self.symbols)
        d["weights"] = list(self.weights)
        return d


# Per-experiment defaults.  The keys of ``params`` and ``tolerances`` listed here
# are the only ones a config file may set.
_DEFAULTS = {
    "e1": dict(
        exponents=(2.0, 4.0, {"kind": "piecewise", "breakpoints": [0.0], "values": [2.0, 4.0]}),
        params={"spatial_cover": 3.0},
        tolerances={"constant_slope": 0.02, "band_slack": 0.05},
    ),
    "e2": dict(
        exponents=(4.0, 4.0, 2.0),
        symbols=({"kind": "gaussian", "rate": 1.0}, {"kind": "constant", "value": 0.0}),
        params={"shifts": [0.0, 0.25], "u_max": 8.0, "u_points": 4096},
        tolerances={"limit_rel": 0.01, "growth_slack": 0.05},
    ),
    "e3": dict(
        exponents=([4.0, 4.0, 1.5], [4.0, 4.0, 2.0]),
        symbols=({"kind": "difference", "base": {"kind": "gaussian", "rate": 1.0}},
                 {"kind": "difference", "base": {"kind": "constant", "value": 0.0}}),
        params={"spatial_cover": 3.0},
        tolerances={"slope": 0.05, "satisfying_slope": 0.05},
    ),
    "e4": dict(
        corpus_size=24,
        exponents=(4.0, 4.0, 2.0),
        symbols=({"kind": "constant", "value": 1.0, "arity": 2},),
        params={"rectangles": 24, "min_width": 0.5, "max_width": 2.0},
        tolerances={"spread": 10.0, "full_box": 1e-6},
    ),
    "e5": dict(
        symbols=({"kind": "coifman_meyer", "theta": 0.3},
                 {"kind": "gaussian", "rate": 0.5},
                 {"kind": "hilbert"}),
        params={"modulation_index": 5},
        tolerances={"identity": 1e-10},
    ),
    "e6": dict(
        params={"band_nodes": [-12, 20]},
        tolerances={"identity": 1e-10},
    ),
    "e7": dict(
        corpus_size=10,
        exponents=(1.0, 1.5, 2.0),
        symbols=({"kind": "gaussian", "rate": 0.5}, {"kind": "indicator", "lower": [-1.0], "upper": [1.0]}),
        params={"symbol_width": 0.5, "kernel_width": 1.0},
        tolerances={"identity": 1e-8, "young": 1e-6},
    ),
    "e8": dict(
        symbols=({"kind": "constant", "value": 1.0, "arity": 2}, {"kind": "coifman_meyer", "theta": 0.3}),
        params={"s": 1.5, "constant_inputs": 2},
        tolerances={"spread_constant": 3.0, "spread_coifman_meyer": 10.0},
    ),
    "e9": dict(
        corpus_size=40,
        exponents=(4.0, 4.0),
        symbols=({"kind": "coifman_meyer", "theta": 0.3},),
        weights=(
            {"center": [0.0], "beta_inf": -0.1, "points": [[0.0]], "betas": [0.1]},
            {"center": [0.0], "beta_inf": -0.1, "points": [[0.0]], "betas": [0.1]},
        ),
        params={"s": 1.5, "boundary_beta": 0.25, "violating_beta": -0.9, "refine_to": 256},
        tolerances={"spread": 10.0, "refinement": 2.0},
    ),
}

_TOP_KEYS = {"seed", "grid", "corpus_size", *EXPERIMENTS}
_EXPERIMENT_KEYS = {f.name for f in fields(ExperimentConfig)} - {"experiment"}


def default_config(experiment: str) -> ExperimentConfig:
    if experiment not in _DEFAULTS:
        raise ConfigError(f"unknown experiment {experiment!r}")
    return ExperimentConfig(experiment, **copy.deepcopy(_DEFAULTS[experiment]))


def _grid(desc, base: GridConfig) -> GridConfig:
    if not isinstance(desc, dict):
        raise ConfigError("grid must be a mapping")
    extra = set(desc) - {"n", "L", "N"}
    if extra:
        raise ConfigError(f"unknown grid keys: {sorted(extra)}")
    g = replace(base, **{k: (float(v) if k == "L" else int(v)) for k, v in desc.items()})
    try:
        g.spec()
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return g


def _merge_known(base: dict, override: dict, what: str) -> dict:
    extra = set(override) - set(base)
    if extra:
        raise ConfigError(f"unknown {what} keys: {sorted(extra)}")
    out = dict(base)
    out.update(override)
    return out


def _apply(cfg: ExperimentConfig, desc: dict) -> ExperimentConfig:
    extra = set(desc) - _EXPERIMENT_KEYS
    if extra:
        raise ConfigError(f"unknown keys for {cfg.experiment}: {sorted(extra)}")
    changes = {}
    for key, value in desc.items():
        if key == "grid":
            changes["grid"] = _grid(value, cfg.grid)
        elif key == "lambda_sweep":
            if not isinstance(value, dict) or set(value) - {"min", "max", "count"}:
                raise ConfigError("lambda_sweep takes min, max and count")
            changes["lambda_sweep"] = replace(cfg.lambda_sweep, **value)
        elif key in ("params", "tolerances"):
            changes[key] = _merge_known(getattr(cfg, key), value, f"{cfg.experiment} {key}")
        elif key in ("exponents", "symbols", "weights"):
            changes[key] = tuple(value)
        else:
            changes[key] = int(value)
    return replace(cfg, **changes)


def validate(cfg: ExperimentConfig) -> ExperimentConfig:
    """Build every descriptor once so that bad configs fail before any work."""
    try:
        for e in cfg.exponents:
            for d in (e if isinstance(e, (list, tuple)) else [e]):
                exponent_from_config(d)
        for s in cfg.symbols:
            symbol_from_config(s)
        for w in cfg.weights:
            weight_from_config(w)
        cfg.grid.spec()
    except (ValueError, KeyError, TypeError) as exc:
        raise ConfigError(f"{cfg.experiment}: {exc}") from exc
    if cfg.corpus_size < 1:
        raise ConfigError("corpus_size must be positive")
    return cfg


def load_configs(
    path: Optional[Path] = None,
    experiments=EXPERIMENTS,
    seed: Optional[int] = None,
    grid_n: Optional[int] = None,
    grid_l: Optional[float] = None,
) -> list[ExperimentConfig]:
    """Defaults, then the file, then command-line overrides."""
    raw = {}
    if path is not None:
        try:
            raw = yaml.safe_load(Path(path).read_text()) or {}
        except (OSError, yaml.YAMLError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(raw, dict):
            raise ConfigError("config root must be a mapping")
        extra = set(raw) - _TOP_KEYS
        if extra:
            raise ConfigError(f"unknown top-level keys: {sorted(extra)}")
    out = []
    for name in experiments:
        cfg = default_config(name)
        shared = {k: raw[k] for k in ("seed", "grid", "corpus_size") if k in raw}
        try:
            cfg = _apply(cfg, shared)
            cfg = _apply(cfg, raw.get(name) or {})
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from exc
        if seed is not None:
            cfg = replace(cfg, seed=int(seed))
        grid_over = {}
        if grid_n is not None:
            grid_over["N"] = grid_n
        if grid_l is not None:
            grid_over["L"] = grid_l
        if grid_over:
            cfg = replace(cfg, grid=_grid(grid_over, cfg.grid))
        out.append(validate(cfg))
    return out
