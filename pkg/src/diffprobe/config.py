"""Probe configuration: one flat, immutable record of every tolerance."""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass
from pathlib import Path

from .asymptotics import OrderConfig
from .numcore import EPS, RadialSchedule

__all__ = ["ProbeConfig", "load_config_file", "SEED_ENV"]

SEED_ENV = "DIFFPROBE_SEED"


@dataclass(frozen=True)
class ProbeConfig:
    # radial schedule
    rho0: float = 0.5
    lam: float = 0.5
    count: int = 28
    # directions
    extra_dirs: int = 16
    diagonals: bool = True
    seed: int = 0
    # little-o rule
    slope_margin: float = 0.15
    min_fit_quality: float = 0.9
    ratio_tol: float = 1e-6
    ratio_floor: float = 1e-3
    tail: int = 3
    zero_tol: float = 1e3 * EPS
    # partial derivatives
    deriv_tol: float = 1e-6
    settle: int = 3
    # determinant criterion
    tuples: int = 8
    degeneracy: float = 0.05
    # tangent plane
    a_cap: float = 1e8
    # derivative estimates away from the origin, step = fd_rel * rho
    fd_rel: float = 1e-6
    fd_tol: float = 1e-6
    # directional derivative / Richardson
    dd_h0: float = 1e-2
    dd_tol: float = 1e-9
    dd_max_levels: int = 45
    # Cauchy-Riemann
    cr_tol: float = 1e-6
    workers: int = 1

    def schedule(self) -> RadialSchedule:
        return RadialSchedule(self.rho0, self.lam, self.count)

    def order_config(self) -> OrderConfig:
        return OrderConfig(self.slope_margin, self.min_fit_quality, self.ratio_tol,
                           self.ratio_floor, self.tail, self.zero_tol)

    def replace(self, **changes) -> "ProbeConfig":
        return dataclasses.replace(self, **changes)

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_mapping(cls, values: dict) -> "ProbeConfig":
        """Build from string or typed values, coercing to each field's type."""
        kinds = {f.name: f.type for f in dataclasses.fields(cls)}
        typed = {}
        for key, raw in values.items():
            key = key.strip().replace("-", "_")
            if key == "lambda":
                key = "lam"
            if key not in kinds:
                raise KeyError(f"unknown configuration key {key!r}")
            typed[key] = _coerce(kinds[key], raw)
        return cls(**typed)

    @classmethod
    def default(cls) -> "ProbeConfig":
        """Defaults, with the seed taken from ``$DIFFPROBE_SEED`` when set."""
        env = os.environ.get(SEED_ENV)
        return cls(seed=int(env)) if env not in (None, "") else cls()


def _coerce(kind: str, raw):
    if not isinstance(raw, str):
        return raw
    raw = raw.strip()
    if kind == "bool":
        if raw.lower() in ("1", "true", "yes", "on"):
            return True
        if raw.lower() in ("0", "false", "no", "off"):
            return False
        raise ValueError(f"not a boolean: {raw!r}")
    if kind == "int":
        return int(raw)
    return float(raw)


def load_config_file(path: str | Path) -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    out: dict[str, str] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value'")
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out
