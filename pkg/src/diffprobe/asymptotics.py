"""Classify a sampled residual r(rho) as o(rho^p) or not.

A finite sample can never prove a limit, so the decision combines two
independent signals: the log-log slope of |r| against rho, and the tail of
the normalised ratio |r| / rho^p over the smallest radii.
"""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .numcore import EPS, RadialSchedule, dropped_radii, kept_radii

__all__ = [
    "Classification",
    "OrderConfig",
    "DecaySamples",
    "OrderEstimate",
    "EvaluationError",
    "collect_decay",
    "estimate_order",
    "classify_little_o",
    "samples_to_csv",
    "running_sup",
]


class EvaluationError(ArithmeticError):
    """The function under test produced a non-finite value."""

    def __init__(self, message: str, rho: float | None = None):
        super().__init__(message)
        self.rho = rho


class Classification(str, enum.Enum):
    LITTLE_O = "LittleO"
    NOT_LITTLE_O = "NotLittleO"
    EXACT_ZERO = "ExactZero"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class OrderConfig:
    """Tolerances of the little-o decision rule."""

    slope_margin: float = 0.15
    min_fit_quality: float = 0.9
    ratio_tol: float = 1e-6
    ratio_floor: float = 1e-3
    tail: int = 3
    zero_tol: float = 1e3 * EPS
    max_tail_decrease: float = 0.10

    def __post_init__(self):
        if self.tail < 2:
            raise ValueError("tail must cover at least two samples")


@dataclass(frozen=True)
class DecaySamples:
    """(rho, value) pairs with strictly decreasing rho.

    ``order`` is the power p the series is compared against: the ratio
    column is |value| / rho**p, and "little-o" means o(rho**p).
    """

    rhos: tuple[float, ...]
    values: tuple[float, ...]
    context: str = ""
    order: float = 1.0
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if len(self.rhos) != len(self.values):
            raise ValueError("rhos and values differ in length")
        r = np.asarray(self.rhos, dtype=float)
        if np.any(r <= 0) or np.any(np.diff(r) >= 0):
            raise ValueError("rho values must be positive and strictly decreasing")

    def __len__(self) -> int:
        return len(self.rhos)

    @property
    def ratios(self) -> np.ndarray:
        return np.abs(np.asarray(self.values, dtype=float)) / np.asarray(self.rhos, dtype=float) ** self.order

    def scaled(self, c: float) -> "DecaySamples":
        return DecaySamples(self.rhos, tuple(c * v for v in self.values), self.context, self.order, self.notes)


@dataclass(frozen=True)
class OrderEstimate:
    slope: float
    intercept: float
    fit_quality: float
    ratio_tail: tuple[float, ...]
    classification: Classification
    order: float = 1.0
    n_used: int = 0
    reason: str = ""


def collect_decay(sampler: Callable[[float], float], schedule: RadialSchedule,
                  context: str = "", order: float = 1.0) -> DecaySamples:
    """Evaluate ``sampler`` at every radius of ``schedule``."""
    dropped = dropped_radii(schedule)
    notes = (f"radius floor {schedule.floor:.3g}: {dropped} radii dropped",) if dropped else ()
    rs = kept_radii(schedule)
    vals = []
    for rho in rs:
        v = float(sampler(rho))
        if not math.isfinite(v):
            raise EvaluationError(f"non-finite value {v} at rho={rho:.6g} ({context})", rho)
        vals.append(v)
    return DecaySamples(tuple(rs), tuple(vals), context, order, notes)


def running_sup(samples: DecaySamples, context: str | None = None) -> DecaySamples:
    """Replace each |value| by the max over that radius and all smaller ones.

    Turns shell maxima into a sampled modulus of continuity sup_{|x| <= rho}.
    """
    a = np.abs(np.asarray(samples.values, dtype=float))
    env = np.maximum.accumulate(a[::-1])[::-1]
    return DecaySamples(samples.rhos, tuple(env.tolist()),
                        samples.context if context is None else context, samples.order, samples.notes)


def _decide(slope: float, fit_quality: float, tail: np.ndarray, cfg: OrderConfig, order: float) -> Classification:
    if (math.isfinite(slope) and slope >= order + cfg.slope_margin and fit_quality >= cfg.min_fit_quality) \
            or float(np.max(tail)) <= cfg.ratio_tol:
        return Classification.LITTLE_O
    if float(np.min(tail)) >= cfg.ratio_floor and tail[-1] >= (1.0 - cfg.max_tail_decrease) * tail[0]:
        return Classification.NOT_LITTLE_O
    return Classification.INDETERMINATE


def estimate_order(samples: DecaySamples, cfg: OrderConfig | None = None) -> OrderEstimate:
    """Fit |value| ~ C rho^slope and classify against o(rho^order).

    Values with |value| <= ``zero_tol`` are left out of the fit but stay in
    the ratio tail as zeros, so sign changes of an oscillating residual do
    not distort the slope.
    """
    cfg = cfg or OrderConfig()
    order = samples.order
    rho = np.asarray(samples.rhos, dtype=float)
    val = np.abs(np.asarray(samples.values, dtype=float))
    if rho.size < 4:
        return OrderEstimate(math.nan, math.nan, 0.0, (), Classification.INDETERMINATE, order, 0,
                             f"{rho.size} samples, need at least 4")
    ratios = np.where(val <= cfg.zero_tol, 0.0, val / rho ** order)
    m = min(cfg.tail, rho.size)
    tail = ratios[-m:]
    keep = val > cfg.zero_tol
    n_used = int(np.count_nonzero(keep))
    if n_used == 0:
        return OrderEstimate(math.inf, -math.inf, 1.0, tuple(tail.tolist()), Classification.EXACT_ZERO,
                             order, 0, "every value within zero tolerance")
    if n_used < 4:
        cls = Classification.LITTLE_O if float(np.max(tail)) <= cfg.ratio_tol else Classification.INDETERMINATE
        return OrderEstimate(math.nan, math.nan, 0.0, tuple(tail.tolist()), cls, order, n_used,
                             f"only {n_used} values above zero tolerance")
    lx = np.log(rho[keep])
    ly = np.log(val[keep])
    design = np.column_stack([lx, np.ones_like(lx)])
    (slope, intercept), *_ = np.linalg.lstsq(design, ly, rcond=None)
    resid = ly - (slope * lx + intercept)
    ss_tot = float(np.sum((ly - ly.mean()) ** 2))
    ss_res = float(np.sum(resid ** 2))
    if ss_tot > 0.0:
        quality = max(0.0, 1.0 - ss_res / ss_tot)
    else:
        quality = 1.0 if ss_res <= 1e-24 else 0.0
    cls = _decide(float(slope), quality, tail, cfg, order)
    return OrderEstimate(float(slope), float(intercept), quality, tuple(tail.tolist()), cls, order, n_used)


def classify_little_o(estimate: OrderEstimate, cfg: OrderConfig | None = None) -> Classification:
    """Re-apply the decision rule; ExactZero counts as little-o."""
    cfg = cfg or OrderConfig()
    if estimate.classification is Classification.EXACT_ZERO:
        return Classification.LITTLE_O
    if not estimate.ratio_tail:
        return Classification.INDETERMINATE
    tail = np.asarray(estimate.ratio_tail, dtype=float)
    if estimate.n_used < 4 or not math.isfinite(estimate.slope):
        return Classification.LITTLE_O if float(np.max(tail)) <= cfg.ratio_tol else Classification.INDETERMINATE
    return _decide(estimate.slope, estimate.fit_quality, tail, cfg, estimate.order)


def samples_to_csv(series: Sequence[DecaySamples], prefix: Sequence[tuple[str, str]] = ()) -> str:
    """CSV with columns ``[prefix cols...,] context, rho, value, ratio``."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([name for name, _ in prefix] + ["context", "rho", "value", "ratio"])
    for s in series:
        for rho, v, r in zip(s.rhos, s.values, s.ratios):
            w.writerow([val for _, val in prefix] + [s.context, repr(rho), repr(v), repr(float(r))])
    return buf.getvalue()
