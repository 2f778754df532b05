"""Pipeline configuration: a flat YAML mapping, every key also available as
a command-line flag (flags override the file).  Relative paths are resolved
against the config file's directory."""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from pathlib import Path

import yaml

__all__ = ["ConfigError", "PipelineConfig", "load_config"]


class ConfigError(ValueError):
    """Raised for unparseable or invalid configuration."""


@dataclass
class PipelineConfig:
    corpus: str = ""
    annotations: str | None = None
    gazetteer: str | None = None
    term_list: str | None = None
    out_dir: str = "out"
    strip_page_numbers: bool = False
    mode: str = "P_AV"
    av_override: float | None = None
    year_lo: int = 1990
    year_hi: int = 2020
    boundaries: list[int] = field(default_factory=list)
    per_year_periods: bool = True  # used when no boundaries are given
    n_terms: int = 50
    top_k_entities: int = 20
    min_assoc: int = 2
    min_overlap: int = 1
    min_edge_weight: int = 1
    layout_seed: int = 42
    layout_iterations: int = 100

    def validate(self) -> None:
        if not self.corpus:
            raise ConfigError("corpus path is required")
        if self.mode not in ("P_MAX", "P_AV"):
            raise ConfigError(f"mode must be P_MAX or P_AV, got {self.mode!r}")
        if self.av_override is not None and not self.av_override > 0:
            raise ConfigError("av_override must be positive")
        if self.year_lo > self.year_hi:
            raise ConfigError(f"invalid year range [{self.year_lo}, {self.year_hi}]")
        for name in ("n_terms", "top_k_entities", "min_assoc", "min_overlap",
                     "min_edge_weight"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be a positive integer")
        if self.layout_iterations < 0:
            raise ConfigError("layout_iterations must be >= 0")

    def effective_boundaries(self) -> list[int]:
        if self.boundaries:
            return list(self.boundaries)
        if self.per_year_periods:
            return list(range(self.year_lo + 1, self.year_hi + 1))
        return []


_FIELD_TYPES = {f.name: f for f in fields(PipelineConfig)}


def _coerce(key: str, value):
    if key == "boundaries":
        if isinstance(value, list) and all(isinstance(v, int) for v in value):
            return value
        if isinstance(value, str):
            return [int(v) for v in value.split(",") if v.strip()]
        raise ConfigError(f"boundaries must be a list of years, got {value!r}")
    if key in ("strip_page_numbers", "per_year_periods"):
        if isinstance(value, bool):
            return value
        raise ConfigError(f"{key} must be true or false, got {value!r}")
    if key == "av_override":
        if value is None:
            return None
        if isinstance(value, (int, float)) and not isinstance(value, bool):
            return float(value)
        raise ConfigError(f"av_override must be a number, got {value!r}")
    if key in ("year_lo", "year_hi", "n_terms", "top_k_entities", "min_assoc",
               "min_overlap", "min_edge_weight", "layout_seed", "layout_iterations"):
        if isinstance(value, int) and not isinstance(value, bool):
            return value
        raise ConfigError(f"{key} must be an integer, got {value!r}")
    if value is None:
        return None
    if isinstance(value, str):
        return value
    raise ConfigError(f"{key} must be a string, got {value!r}")


def load_config(path: str | Path) -> PipelineConfig:
    """Parse a flat YAML mapping into a PipelineConfig; unknown keys and
    parse errors carry line diagnostics where YAML provides them."""
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {p}: {exc}") from None
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f" at line {mark.line + 1}, column {mark.column + 1}" if mark else ""
        raise ConfigError(f"config parse error{where}: {exc}") from None
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError("config must be a flat key-value mapping")

    cfg = PipelineConfig()
    for key, value in data.items():
        if key not in _FIELD_TYPES:
            raise ConfigError(f"unknown config key {key!r}")
        setattr(cfg, key, _coerce(key, value))

    # Paths in the file are relative to the file itself.  Validation happens
    # after command-line overrides are applied.
    base = p.parent
    for key in ("corpus", "annotations", "gazetteer", "term_list"):
        value = getattr(cfg, key)
        if value:
            setattr(cfg, key, str((base / value).resolve()) if not Path(value).is_absolute() else value)
    return cfg
