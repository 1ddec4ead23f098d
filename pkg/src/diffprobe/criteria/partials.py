"""Partial-derivative existence at the origin and directional derivatives."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..asymptotics import (Classification, DecaySamples, EvaluationError, classify_little_o, estimate_order,
                           running_sup)
from ..config import ProbeConfig
from ..funcorpus import ScalarField
from ..numcore import EPS, RadialSchedule, kept_radii, unit_axis
from .verdict import pmap

__all__ = [
    "AxisDerivative",
    "PartialDerivativeResult",
    "test_partial_derivatives",
    "DirectionalDerivative",
    "DerivativeError",
    "directional_derivative",
    "richardson_derivative",
    "two_sided_derivative",
]


@dataclass(frozen=True)
class AxisDerivative:
    axis: int
    exists: bool | None
    value: float
    left_limit: float
    right_limit: float
    convergence: DecaySamples | None
    note: str = ""


@dataclass(frozen=True)
class PartialDerivativeResult:
    axes: tuple[AxisDerivative, ...]

    @property
    def all_exist(self) -> bool:
        return all(a.exists is True for a in self.axes)

    @property
    def any_fails(self) -> bool:
        return any(a.exists is False for a in self.axes)

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(a.value for a in self.axes)

    def __getitem__(self, axis: int) -> AxisDerivative:
        """Look up by 1-based axis index."""
        return self.axes[axis - 1]


def _settled(q: np.ndarray, tol: float, settle: int) -> bool:
    gaps = np.abs(np.diff(q))
    return gaps.size >= settle and bool(np.all(gaps[-settle:] < tol))


def _axis_derivative(f: ScalarField, axis: int, ts: list[float], cfg: ProbeConfig) -> AxisDerivative:
    e = unit_axis(axis, f.dim).coords
    try:
        right = np.array([f.eval(t * e) / t for t in ts])
        left = np.array([f.eval(-t * e) / -t for t in ts])
    except (ArithmeticError, ValueError) as exc:
        return AxisDerivative(axis, None, math.nan, math.nan, math.nan, None, f"evaluation failed: {exc}")
    if not (np.all(np.isfinite(right)) and np.all(np.isfinite(left))):
        return AxisDerivative(axis, None, math.nan, math.nan, math.nan, None, "non-finite difference quotient")
    gaps = np.maximum(np.abs(np.diff(right)), np.abs(np.diff(left)))
    conv = DecaySamples(tuple(ts[1:]), tuple(gaps.tolist()), f"axis {axis} quotient gaps", order=0.0)
    lo, hi = float(left[-1]), float(right[-1])
    ocfg = cfg.order_config()

    def decay(values: np.ndarray, rhos, context: str) -> Classification:
        series = running_sup(DecaySamples(tuple(rhos), tuple(values.tolist()), context, order=0.0))
        return classify_little_o(estimate_order(series, ocfg), ocfg)

    # A side converges when its quotients settle within deriv_tol, or when
    # their gaps shrink like a power of t: on a geometric schedule those
    # gaps sum, so the remaining drift is bounded by the last few.
    sides = []
    for q in (right, left):
        if _settled(q, cfg.deriv_tol, cfg.settle):
            sides.append(Classification.LITTLE_O)
        else:
            sides.append(decay(np.abs(np.diff(q)), ts[1:], conv.context))
    if any(c is not Classification.LITTLE_O for c in sides):
        return AxisDerivative(axis, False, math.nan, lo, hi, conv, "difference quotients do not settle")
    # a left-right gap that keeps shrinking (x^2 gives 2t) is one limit, a stalled one is two
    if abs(lo - hi) <= cfg.deriv_tol or \
            decay(np.abs(right - left), ts, f"axis {axis} one-sided gap") is Classification.LITTLE_O:
        return AxisDerivative(axis, True, 0.5 * (lo + hi), lo, hi, conv)
    return AxisDerivative(axis, False, math.nan, lo, hi, conv,
                          f"one-sided limits differ: left {lo:.6g}, right {hi:.6g}")


def test_partial_derivatives(f: ScalarField, cfg: ProbeConfig | None = None,
                             schedule: RadialSchedule | None = None) -> PartialDerivativeResult:
    """One-sided difference quotients f(+-t e_i)/(+-t) along the radial schedule.

    A side converges when its last ``cfg.settle`` gaps are below
    ``deriv_tol`` or the gaps decay like a positive power of t. The axis
    derivative exists when both sides converge and the left-right
    difference is within ``deriv_tol`` or itself decays.
    """
    cfg = cfg or ProbeConfig.default()
    ts = kept_radii(schedule or cfg.schedule())
    axes = pmap(lambda i: _axis_derivative(f, i, ts, cfg), list(range(1, f.dim + 1)), cfg.workers)
    return PartialDerivativeResult(tuple(axes))


test_partial_derivatives.__test__ = False  # not a pytest test


class DerivativeError(ArithmeticError):
    def __init__(self, message: str, estimates: list[float]):
        super().__init__(message)
        self.estimates = estimates


@dataclass(frozen=True)
class DirectionalDerivative:
    value: float
    error: float
    levels: int


def richardson_derivative(phi: Callable[[float], float], h0: float, tol: float,
                          max_levels: int = 45, depth: int = 3) -> DirectionalDerivative:
    """Derivative of ``phi`` at 0 from a Richardson tableau of central differences.

    Steps halve from ``h0``; each new row is extrapolated up to ``depth``
    levels. Converged once two successive best estimates agree to ``tol``
    (relative to max(1, |value|)) twice in a row; the attached error is the
    last such gap.
    """
    h = h0
    prev_row: list[float] = []
    best: list[float] = []
    calm = 0
    for k in range(max_levels):
        fp, fm = phi(h), phi(-h)
        if not (math.isfinite(fp) and math.isfinite(fm)):
            raise EvaluationError(f"non-finite value at step {h:.3g}", h)
        row = [(fp - fm) / (2.0 * h)]
        for j in range(1, min(k, depth) + 1):
            row.append(row[j - 1] + (row[j - 1] - prev_row[j - 1]) / (4.0 ** j - 1.0))
        best.append(row[-1])
        if len(best) >= 2:
            gap = abs(best[-1] - best[-2])
            calm = calm + 1 if gap < tol * max(1.0, abs(best[-1])) else 0
            if calm >= 2:
                return DirectionalDerivative(best[-1], gap, k + 1)
        prev_row = row
        h *= 0.5
    raise DerivativeError(f"no convergence after {max_levels} levels", best)


def two_sided_derivative(phi: Callable[[float], float], h0: float, tol: float, max_levels: int = 60,
                         jump_tol: float = 1e-3) -> float:
    """Richardson derivative that also rejects kinks and cusps.

    Central differences cancel the even part e(h) = (phi(h) + phi(-h))/2 - phi(0),
    so |t| or sqrt(|t|) would read as derivative 0. A derivative needs
    e(h)/h -> 0; at the step where the tableau settled, and at a step 16
    times smaller, e(h)/h must either be below ``jump_tol`` (relative to
    max(1, |value|)) or be shrinking. Otherwise ``DerivativeError``.
    """
    d = richardson_derivative(phi, h0, tol, max_levels)
    f0 = phi(0.0)

    def even_ratio(h: float) -> tuple[float, float]:
        fp, fm = phi(h), phi(-h)
        noise = 8.0 * EPS * max(abs(fp), abs(fm), abs(f0)) / h
        return abs(0.5 * (fp + fm) - f0) / h, noise

    h = h0 * 0.5 ** (d.levels - 1)
    (r1, _), (r2, noise) = even_ratio(h), even_ratio(h / 16.0)
    if r2 > jump_tol * max(1.0, abs(d.value)) + noise and r2 > 0.5 * r1:
        raise DerivativeError(f"even part does not vanish at step {h:.3g}: e(h)/h = {r1:.6g}, {r2:.6g}", [r1, r2])
    return d.value


def directional_derivative(f: ScalarField, u, cfg: ProbeConfig | None = None) -> DirectionalDerivative:
    """Derivative of t -> f(t u) at the origin, with an error estimate."""
    cfg = cfg or ProbeConfig.default()
    uv = np.asarray(u, dtype=float)
    if abs(np.linalg.norm(uv) - 1.0) > 1e-12:
        raise ValueError("direction must be a unit vector")
    return richardson_derivative(lambda t: f.eval(t * uv), cfg.dd_h0, cfg.dd_tol, cfg.dd_max_levels)
