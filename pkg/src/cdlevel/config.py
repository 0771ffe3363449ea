"""Run configuration shared by the library entry points and the CLI."""

from __future__ import annotations

import enum
import json
import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Any, Mapping, Optional

CONFIG_ENV = "CDLEVEL_CONFIG"


class SublevelReading(str, enum.Enum):
    """How "sum of nonzero squares" is read in the sublevel definition."""

    LITERAL_NONZERO_SQUARE = "literal_nonzero_square"  # every summand x_i^2 != 0
    NONZERO_ELEMENT = "nonzero_element"  # every x_i != 0, x_i^2 may vanish

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class RunConfig:
    enumeration_budget: int = 10**7
    factor_bound: int = 10**6
    witness_height: int = 50
    t_max: int = 6
    sublevel_reading: SublevelReading = SublevelReading.LITERAL_NONZERO_SQUARE

    def __post_init__(self):
        object.__setattr__(self, "sublevel_reading", SublevelReading(self.sublevel_reading))
        for name in ("enumeration_budget", "factor_bound", "witness_height", "t_max"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value <= 0:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")

    @property
    def decide_kwargs(self) -> dict:
        return {"factor_bound": self.factor_bound, "witness_height": self.witness_height}

    def to_dict(self) -> dict:
        d = asdict(self)
        d["sublevel_reading"] = str(self.sublevel_reading)
        return d

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown configuration keys: {sorted(unknown)}")
        return cls(**dict(data))

    def with_overrides(self, **overrides) -> "RunConfig":
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


def load_config(path: Optional[str | os.PathLike] = None, **overrides) -> RunConfig:
    """Defaults, then the JSON file (explicit path or $CDLEVEL_CONFIG), then ``overrides``."""
    if path is None:
        path = os.environ.get(CONFIG_ENV) or None
    cfg = RunConfig()
    if path is not None:
        with open(Path(path), encoding="utf-8") as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise ValueError(f"config file {path} must contain a JSON object")
        cfg = RunConfig.from_mapping(data)
    return cfg.with_overrides(**overrides)
