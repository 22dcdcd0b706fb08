from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path

from .errors import BudgetExceeded

FORMATS = ("json", "csv", "text")


@dataclass(frozen=True)
class Budgets:
    max_atom_len: int = 64
    max_support_count: int = 1_000_000
    wall_clock_ms: int = 3_600_000
    max_group_order: int = 4096

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not isinstance(v, int) or isinstance(v, bool) or v <= 0:
                raise ValueError(f"budget {f.name} must be a positive integer, got {v!r}")

    def deadline(self) -> float:
        return time.time() + self.wall_clock_ms / 1000.0


def check_deadline(deadline: float | None) -> None:
    if deadline is not None and time.time() > deadline:
        raise BudgetExceeded("wall-clock budget exhausted")


@dataclass(frozen=True)
class Config:
    budgets: Budgets = field(default_factory=Budgets)
    jobs: int = 1
    format: str = "json"
    include_zero: bool = False
    catalog: str | None = None

    def __post_init__(self):
        if not isinstance(self.jobs, int) or self.jobs < 1:
            raise ValueError(f"jobs must be a positive integer, got {self.jobs!r}")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}, got {self.format!r}")

    @classmethod
    def from_dict(cls, data: dict) -> "Config":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        data = dict(data)
        if "budgets" in data:
            b = data["budgets"]
            bad = set(b) - {f.name for f in fields(Budgets)}
            if bad:
                raise ValueError(f"unknown budget keys: {sorted(bad)}")
            data["budgets"] = Budgets(**b)
        return cls(**data)

    @classmethod
    def load(cls, path: str | Path) -> "Config":
        return cls.from_dict(json.loads(Path(path).read_text()))

    def with_(self, **kw) -> "Config":
        return replace(self, **kw)

    def to_dict(self) -> dict:
        return asdict(self)
