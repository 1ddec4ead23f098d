"""Relaxed sufficient conditions: a nested chain of continuous partial derivatives.

For an ordering of the axes, the derivative along the p-th axis must be
continuous at the origin over the subspace spanned by axes p..n, and the
last derivative only has to exist there. These conditions are sufficient,
never necessary, so a failure is reported as ConditionsNotMet.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..asymptotics import (Classification, DecaySamples, OrderEstimate, classify_little_o, estimate_order,
                           running_sup)
from ..config import ProbeConfig
from ..funcorpus import ScalarField
from ..numcore import kept_radii, make_directions, unit_axis
from .partials import PartialDerivativeResult, richardson_derivative, test_partial_derivatives
from .verdict import CriterionVerdict, Evidence, Verdict

__all__ = ["ContinuityModulus", "check_relaxed_conditions", "partial_derivative_at"]


@dataclass(frozen=True)
class ContinuityModulus:
    """Sampled alpha(rho) = sup |f_axis(x) - f_axis(0)| over |x| <= rho in a subspace."""

    axis: int
    samples: DecaySamples
    estimate: OrderEstimate
    continuous: bool | None
    subspace: tuple[int, ...] = ()


def partial_derivative_at(f: ScalarField, x, axis: int, h0: float, tol: float = 1e-6,
                          max_levels: int = 60) -> float:
    """Derivative of f along ``axis`` (1-based) at ``x``, starting from step ``h0``.

    The step keeps halving until the extrapolated estimates settle, so
    derivatives that oscillate on a scale much finer than ``h0`` are still
    resolved. Raises ``DerivativeError`` when they never settle.
    """
    e = unit_axis(axis, f.dim).coords
    xv = np.asarray(x, dtype=float)
    return richardson_derivative(lambda t: f.eval(xv + t * e), h0, tol, max_levels).value


def _modulus(f: ScalarField, axis: int, subspace: Sequence[int], at_origin: float,
             cfg: ProbeConfig, stream: int) -> ContinuityModulus:
    sub = make_directions(len(subspace), cfg.extra_dirs, cfg.seed + stream, cfg.diagonals).as_array()
    embed = np.zeros((sub.shape[0], f.dim))
    for m, ax in enumerate(subspace):
        embed[:, ax - 1] = sub[:, m]
    rhos = kept_radii(cfg.schedule())
    shell_max = []
    for rho in rhos:
        h0 = cfg.fd_rel * rho
        shell_max.append(max(abs(partial_derivative_at(f, rho * u, axis, h0, cfg.fd_tol) - at_origin)
                             for u in embed))
    raw = DecaySamples(tuple(rhos), tuple(shell_max), f"d/dx{axis} modulus over axes {list(subspace)}", order=0.0)
    samples = running_sup(raw)
    est = estimate_order(samples, cfg.order_config())
    cls = classify_little_o(est, cfg.order_config())
    continuous = {Classification.LITTLE_O: True, Classification.NOT_LITTLE_O: False}.get(cls)
    return ContinuityModulus(axis, samples, est, continuous, tuple(subspace))


def check_relaxed_conditions(f: ScalarField, axis_order: Sequence[int] | None = None,
                             cfg: ProbeConfig | None = None,
                             partials: PartialDerivativeResult | None = None) -> CriterionVerdict:
    """Check the continuity chain for ``axis_order`` (1-based axis indices, "good" to "bad").

    ``detail`` holds one ContinuityModulus per axis except the last.
    """
    cfg = cfg or ProbeConfig.default()
    n = f.dim
    order = tuple(range(1, n + 1)) if axis_order is None else tuple(int(a) for a in axis_order)
    if sorted(order) != list(range(1, n + 1)):
        raise ValueError(f"axis_order {order} is not a permutation of 1..{n}")
    partials = partials or test_partial_derivatives(f, cfg)
    notes: list[str] = [f"axis order {list(order)}"]

    missing = [a for a in order if partials[a].exists is False]
    if missing:
        notes.append(f"partial derivative fails to exist along axes {missing}")
        return CriterionVerdict("relaxed", Verdict.CONDITIONS_NOT_MET, notes=tuple(notes), detail=())
    unknown = [a for a in order if partials[a].exists is None]

    moduli: list[ContinuityModulus] = []
    try:
        for p, axis in enumerate(order[:-1], start=1):
            if partials[axis].exists is not True:
                continue
            moduli.append(_modulus(f, axis, order[p - 1:], partials[axis].value, cfg, p))
    except (ArithmeticError, ValueError) as exc:
        notes.append(f"derivative estimate failed: {exc}")
        return CriterionVerdict("relaxed", Verdict.INCONCLUSIVE, notes=tuple(notes), detail=tuple(moduli))

    evidence = tuple(Evidence(m.samples, m.estimate) for m in moduli)
    if any(m.continuous is False for m in moduli):
        bad = [m.axis for m in moduli if m.continuous is False]
        notes.append(f"derivative along axes {bad} not continuous at the origin")
        verdict = Verdict.CONDITIONS_NOT_MET
    elif unknown or any(m.continuous is None for m in moduli):
        verdict = Verdict.INCONCLUSIVE
    else:
        verdict = Verdict.CONSISTENT
    worst = max(evidence, key=lambda e: e.final_ratio, default=None)
    return CriterionVerdict("relaxed", verdict, evidence, notes=tuple(notes), aggregate=worst, detail=tuple(moduli))
