"""Tangent-hyperplane criterion.

A least-squares hyperplane z = A.x is fitted on every radius shell; the
innermost fit is kept and the point-to-plane distance
d(x) = |f(x) - A.x| cos(alpha), cos(alpha) = (1 + |A|^2)^(-1/2),
is tested for o(rho). Testing against rho rather than the distance to the
projected point is equivalent, since the two are mutually bounded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..asymptotics import Classification, DecaySamples, classify_little_o
from ..config import ProbeConfig
from ..funcorpus import ScalarField
from ..linalg import SingularMatrixError, solve
from ..numcore import DirectionSet, RadialSchedule, Vector, kept_radii, dropped_radii
from .cauchy_like import default_directions
from .verdict import CriterionVerdict, Verdict, make_evidence, pmap, sup_series, worst_of

__all__ = ["FitError", "GeoEvidence", "fit_tangent_hyperplane", "probe_geo"]


class FitError(ValueError):
    """The sample points do not determine a hyperplane."""


@dataclass(frozen=True)
class GeoEvidence:
    fitted_A: Vector
    cos_alpha: float
    distance_samples: DecaySamples
    A_stability: float
    shell_fits: tuple[Vector, ...] = ()
    # 1 - cos_alpha, computed without cancellation; cos_alpha itself rounds to 1 once |A| < 1e-8
    cos_alpha_deficit: float = 0.0


def fit_tangent_hyperplane(f: ScalarField | None, shell_samples: Sequence[tuple], rank_tol: float = 1e-10) -> Vector:
    """Least-squares coefficients A minimising sum (f(x) - A.x)^2.

    ``shell_samples`` holds ``(x, f(x))`` pairs; ``f`` is only used for its
    dimension when given. The normal equations are solved by pivoted
    elimination after a common rescaling of the points.
    """
    if not shell_samples:
        raise FitError("no samples")
    X = np.array([np.asarray(x, dtype=float) for x, _ in shell_samples])
    y = np.array([float(v) for _, v in shell_samples])
    n = X.shape[1] if f is None else f.dim
    if X.shape[1] != n:
        raise FitError(f"sample dimension {X.shape[1]} does not match {n}")
    if X.shape[0] < n:
        raise FitError(f"{X.shape[0]} samples cannot determine {n} coefficients")
    s = float(np.max(np.abs(X)))
    if s == 0.0:
        raise FitError("all sample points at the origin")
    Xs, ys = X / s, y / s
    try:
        A = solve(Xs.T @ Xs, Xs.T @ ys, rank_tol=rank_tol)
    except SingularMatrixError as exc:
        raise FitError(f"rank-deficient sample set: {exc}") from None
    return Vector(A)


def probe_geo(f: ScalarField, schedule: RadialSchedule | None = None, dirs: DirectionSet | None = None,
              cfg: ProbeConfig | None = None) -> CriterionVerdict:
    cfg = cfg or ProbeConfig.default()
    schedule = schedule or cfg.schedule()
    dirs = dirs or default_directions(f.dim, cfg)
    ocfg = cfg.order_config()
    rhos = kept_radii(schedule)
    U = dirs.as_array()
    notes: list[str] = []
    if dropped_radii(schedule):
        notes.append(f"radius floor {schedule.floor:.3g}: {dropped_radii(schedule)} radii dropped")

    def shell(rho: float) -> np.ndarray:
        return np.array([f.eval(rho * u) for u in U])

    try:
        values = np.array(pmap(shell, rhos, cfg.workers))  # (n_rho, n_dir)
        fits = [fit_tangent_hyperplane(f, list(zip(rho * U, values[k]))) for k, rho in enumerate(rhos)]
    except FitError as exc:
        return CriterionVerdict("geo", Verdict.INCONCLUSIVE, notes=(f"fit failed: {exc}",))
    if not np.all(np.isfinite(values)):
        return CriterionVerdict("geo", Verdict.INCONCLUSIVE, notes=("non-finite function value on a shell",))

    A = fits[-1].coords
    stability = max(float(np.linalg.norm(a.coords - A)) for a in fits)
    a2 = float(A @ A)
    root = math.sqrt(1.0 + a2)
    cos_alpha = 1.0 / root
    deficit = a2 / (root * (1.0 + root))
    dist = np.abs(values - np.outer(rhos, U @ A)) * cos_alpha
    series = [DecaySamples(tuple(rhos), tuple(dist[:, k].tolist()), f"direction {k} {np.round(U[k], 6).tolist()}",
                           notes=tuple(notes)) for k in range(len(U))]
    evidence = tuple(make_evidence(s, ocfg) for s in series)
    aggregate = make_evidence(sup_series(series, "max distance over directions"), ocfg)
    detail = GeoEvidence(Vector(A), cos_alpha, aggregate.samples, stability, tuple(fits), deficit)

    cls = classify_little_o(aggregate.estimate, ocfg)
    norm_a = float(np.linalg.norm(A))
    if norm_a > cfg.a_cap:
        notes.append(f"|A| = {norm_a:.3g} exceeds cap {cfg.a_cap:.3g}: plane close to orthogonal")
    if cls is Classification.NOT_LITTLE_O:
        verdict = Verdict.REFUTED
    elif cls is Classification.LITTLE_O and norm_a <= cfg.a_cap:
        verdict = Verdict.CONSISTENT
    else:
        verdict = Verdict.INCONCLUSIVE
    worst = worst_of(evidence)
    return CriterionVerdict("geo", verdict, evidence, dirs[worst] if worst is not None else None,
                            tuple(notes), aggregate, detail)
