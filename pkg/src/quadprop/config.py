"""Flat JSON experiment configuration."""
from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

from .errors import ConfigError, UsageError
from .hamiltonians import catalog_model
from .pdecheck import Grid

OUTPUT_ENV = "QUADPROP_OUTPUT_DIR"


@dataclass(frozen=True)
class ExperimentConfig:
    model: str
    params: dict = field(default_factory=dict)
    h: float = 1.2
    p: int = 1
    x: float | list[float] = 1.0
    t: float = 1.0
    n_list: list[int] = field(default_factory=lambda: list(range(5, 101, 5)))
    grid: Grid = field(default_factory=Grid)
    output_dir: str = "out"
    tol: float = 1e-8

    @property
    def xs(self) -> list[float]:
        return [float(v) for v in self.x] if isinstance(self.x, list) else [float(self.x)]

    def resolved_output_dir(self) -> Path:
        return Path(os.environ.get(OUTPUT_ENV) or self.output_dir)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["grid"].pop("bc", None)
        return d


def _number(raw, key: str, kind=float):
    if isinstance(raw, bool) or not isinstance(raw, (int, float)):
        raise ConfigError(f"{key} must be a number")
    if kind is int and raw != int(raw):
        raise ConfigError(f"{key} must be an integer")
    return kind(raw)


def config_from_dict(raw: dict) -> ExperimentConfig:
    if not isinstance(raw, dict):
        raise ConfigError("the configuration must be a JSON object")
    known = {f.name for f in fields(ExperimentConfig)}
    unknown = set(raw) - known
    if unknown:
        raise ConfigError(f"unknown configuration keys: {sorted(unknown)}")
    if "model" not in raw:
        raise ConfigError("missing required key 'model'")
    kw: dict = {"model": raw["model"]}
    if not isinstance(kw["model"], str):
        raise ConfigError("model must be a string")
    params = raw.get("params", {})
    if not isinstance(params, dict):
        raise ConfigError("params must be an object")
    kw["params"] = params
    for key in ("h", "t", "tol"):
        if key in raw:
            kw[key] = _number(raw[key], key)
    if "p" in raw:
        kw["p"] = _number(raw["p"], "p", int)
        if kw["p"] < 1:
            raise ConfigError("p must be >= 1")
    if "x" in raw:
        x = raw["x"]
        kw["x"] = [_number(v, "x") for v in x] if isinstance(x, list) else _number(x, "x")
        if isinstance(kw["x"], list) and not kw["x"]:
            raise ConfigError("x list is empty")
    if "n_list" in raw:
        ns = raw["n_list"]
        if not isinstance(ns, list) or not ns:
            raise ConfigError("n_list must be a nonempty list")
        ns = [_number(n, "n_list", int) for n in ns]
        if any(n < 1 for n in ns) or ns != sorted(set(ns)):
            raise ConfigError("n_list must be strictly ascending positive integers")
        kw["n_list"] = ns
    if "grid" in raw:
        g = raw["grid"]
        if not isinstance(g, dict) or set(g) - {"x_min", "x_max", "n_points"}:
            raise ConfigError("grid must be an object with x_min, x_max, n_points")
        try:
            kw["grid"] = Grid(
                _number(g.get("x_min", -8.0), "grid.x_min"),
                _number(g.get("x_max", 8.0), "grid.x_max"),
                _number(g.get("n_points", 801), "grid.n_points", int),
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    if "output_dir" in raw:
        if not isinstance(raw["output_dir"], str):
            raise ConfigError("output_dir must be a string")
        kw["output_dir"] = raw["output_dir"]
    cfg = ExperimentConfig(**kw)
    # same validation as building the model directly
    try:
        catalog_model(cfg.model, cfg.params)
    except UsageError as exc:
        raise ConfigError(f"{type(exc).__name__}: {exc}") from exc
    return cfg


def load_config(path: str | Path) -> ExperimentConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
    return config_from_dict(raw)
