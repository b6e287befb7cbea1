"""Run configuration shared by the CLI subcommands."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Any, Mapping

from hatecode.errors import ConfigError


@dataclass(frozen=True)
class RunConfig:
    seed: int = 42
    folds: int = 10
    min_df: int = 2
    max_terms: int = 1000
    C: float = 1.0
    epochs: int = 50
    min_support: float = 0.05
    threshold: int = 4
    english_threshold: float = 0.10
    stopwords_path: str | None = None
    lexicon_path: str | None = None

    def validate(self) -> "RunConfig":
        if self.folds < 2:
            raise ConfigError(f"folds must be >= 2, got {self.folds}")
        if self.min_df < 1:
            raise ConfigError(f"min_df must be >= 1, got {self.min_df}")
        if self.max_terms < 1:
            raise ConfigError(f"max_terms must be >= 1, got {self.max_terms}")
        if not (self.C > 0 and math.isfinite(self.C)):
            raise ConfigError(f"C must be positive, got {self.C}")
        if self.epochs < 1:
            raise ConfigError(f"epochs must be >= 1, got {self.epochs}")
        if not (0 < self.min_support <= 1):
            raise ConfigError(f"InvalidSupport: min_support must lie in (0, 1], got {self.min_support}")
        if self.threshold < 1:
            raise ConfigError(f"threshold must be >= 1, got {self.threshold}")
        if not (0 <= self.english_threshold <= 1):
            raise ConfigError(f"english_threshold must lie in [0, 1], got {self.english_threshold}")
        return self

    def merged(self, overrides: Mapping[str, Any]) -> "RunConfig":
        """Copy with every non-None override applied."""
        known = {f.name for f in fields(self)}
        unknown = set(overrides) - known
        if unknown:
            raise ConfigError(f"unknown config key(s): {', '.join(sorted(unknown))}")
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    def to_dict(self) -> dict:
        return asdict(self)


_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _coerce(key: str, value: Any) -> Any:
    kind = _TYPES[key]
    try:
        if kind == "int":
            if isinstance(value, bool) or (isinstance(value, float) and not value.is_integer()):
                raise TypeError
            return int(value)
        if kind == "float":
            if isinstance(value, bool):
                raise TypeError
            return float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"config key {key!r} has invalid value {value!r}") from None
    return None if value is None else str(value)


def load_config(path: str | Path) -> RunConfig:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file is not valid JSON: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ConfigError("config file must hold a JSON object")
    unknown = set(doc) - set(_TYPES)
    if unknown:
        raise ConfigError(f"unknown config key(s): {', '.join(sorted(unknown))}")
    return RunConfig().merged({k: _coerce(k, v) for k, v in doc.items()})
