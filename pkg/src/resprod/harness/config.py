"""Experiment configuration: a declarative record plus CLI/file merging."""

from __future__ import annotations

import dataclasses
import json
import math
import os
from dataclasses import dataclass
from pathlib import Path

from ..arith import CONSTANTS
from ..errors import ConfigError, IoError

KINDS = (
    "coprime-count",
    "prime-cofactor",
    "mertens",
    "char-scan",
    "mean-value",
    "product-length",
    "subgroup-length",
    "fermat-length",
    "correspondence",
    "greedy-pack",
    "balog",
    "subgroup-pairs",
    "grh-ratio",
)

WORKERS_ENV = "RESPROD_WORKERS"


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment run: what to sweep, with which bounds, where to write.

    ``bound`` (explicit B) and ``bound_exp`` (B = floor(q^e)) are mutually
    exclusive; kinds that need a bound fall back to their documented default
    exponent when neither is given.
    """

    kind: str
    q_lo: int = 2
    q_hi: int = 50
    cube_free_only: bool = False
    primes_only: bool = False
    epsilon: float = 0.05
    bound: int | None = None
    bound_exp: float | None = None
    k_max: int | None = None
    subgroup: str = ""
    workers: int = 1
    out: str | None = None
    out_format: str = "csv"
    seed: int = 1
    demo_widening: float | None = None
    sample: int = 0
    anchors: tuple[float, ...] = ()
    vectors: int = 100
    plot: bool = False

    def validate(self) -> "ExperimentConfig":
        if self.kind not in KINDS:
            raise ConfigError(f"unknown experiment kind {self.kind!r}; choose from {KINDS}")
        if self.q_lo > self.q_hi:
            raise ConfigError(f"q_lo {self.q_lo} > q_hi {self.q_hi}")
        if self.q_lo < 1:
            raise ConfigError(f"q_lo {self.q_lo} < 1")
        if self.epsilon < 0:
            raise ConfigError(f"epsilon {self.epsilon} < 0")
        if self.bound is not None and self.bound_exp is not None:
            raise ConfigError("give either an explicit bound or a bound exponent, not both")
        if self.bound is not None and self.bound < 1:
            raise ConfigError(f"bound {self.bound} < 1")
        if self.bound_exp is not None and not 0.0 < self.bound_exp < 1.0:
            raise ConfigError(f"bound exponent {self.bound_exp} outside (0, 1)")
        if self.k_max is not None and self.k_max < 1:
            raise ConfigError(f"k_max {self.k_max} < 1")
        if self.workers < 1:
            raise ConfigError(f"workers {self.workers} < 1")
        if self.out_format not in ("csv", "json"):
            raise ConfigError(f"format {self.out_format!r} is not csv or json")
        if self.demo_widening is not None and self.demo_widening < 1.0:
            raise ConfigError(f"demo widening {self.demo_widening} < 1")
        if self.sample < 0:
            raise ConfigError(f"sample {self.sample} < 0")
        if self.vectors < 1:
            raise ConfigError(f"vectors {self.vectors} < 1")
        return self

    def default_exponent(self) -> float:
        """Bound exponent used when neither bound nor bound_exp is given."""
        if self.kind == "subgroup-length":
            return CONSTANTS.beta
        if self.kind == "fermat-length":
            return 2 * CONSTANTS.beta + self.epsilon
        return CONSTANTS.beta + self.epsilon

    def bound_for(self, q: int) -> int:
        """Factor bound for modulus q under the configured rule."""
        if self.bound is not None:
            return self.bound
        exp = self.bound_exp if self.bound_exp is not None else self.default_exponent()
        return max(1, math.floor(q**exp))

    def exponent_label(self) -> str:
        if self.bound is not None:
            return ""
        exp = self.bound_exp if self.bound_exp is not None else self.default_exponent()
        return f"{exp:.12g}"

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["anchors"] = list(self.anchors)
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        fields = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - fields
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        if "kind" not in data:
            raise ConfigError("config needs an experiment kind")
        clean = dict(data)
        if "anchors" in clean and clean["anchors"] is not None:
            clean["anchors"] = tuple(float(a) for a in clean["anchors"])
        return cls(**clean)


def load_config_file(path: str | Path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise IoError(f"cannot read config file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must hold a JSON object")
    return data


def default_workers() -> int:
    """Worker count from the environment, used only when --workers is absent."""
    raw = os.environ.get(WORKERS_ENV, "")
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"{WORKERS_ENV}={raw!r} is not an integer") from None
    if n < 1:
        raise ConfigError(f"{WORKERS_ENV}={n} < 1")
    return n
