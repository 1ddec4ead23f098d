"""Determinant criterion: |D(f; x_1..x_{n+1})| = o(prod |x_j|).

The probe samples rays of tuples: a base tuple is scaled uniformly by rho,
which covers the quantifier over all tuples only along those rays.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..asymptotics import DecaySamples, EvaluationError, collect_decay
from ..config import ProbeConfig
from ..funcorpus import ScalarField
from ..linalg import det, hadamard_bound
from ..numcore import RadialSchedule, seeded_generator
from .verdict import CriterionVerdict, Verdict, aggregate_verdict, make_evidence, pmap, sup_series, worst_of

__all__ = [
    "cauchy_matrix",
    "cauchy_determinant",
    "hadamard_bound",
    "hadamard_holds",
    "is_degenerate",
    "base_tuples",
    "determinant_ratio_series",
    "probe_cauchy_determinant",
    "DeterminantDetail",
]

HADAMARD_SLACK_ULPS = 8


def _as_tuple(xs, n: int) -> np.ndarray:
    arr = np.asarray([np.asarray(x, dtype=float) for x in xs], dtype=float)
    if arr.ndim != 2 or arr.shape != (n + 1, n):
        raise ValueError(f"need exactly {n + 1} vectors of dimension {n}, got shape {arr.shape}")
    return arr


def cauchy_matrix(f: ScalarField, xs: Sequence) -> np.ndarray:
    """Rows ``[f(x_j), x_j^1, ..., x_j^n]`` for the n+1 vectors ``xs``."""
    arr = _as_tuple(xs, f.dim)
    fcol = np.array([f.eval(x) for x in arr])
    return np.column_stack([fcol, arr])


def cauchy_determinant(f: ScalarField, xs: Sequence) -> float:
    return det(cauchy_matrix(f, xs))


def hadamard_holds(m: np.ndarray, d: float | None = None) -> bool:
    """``|det m| <= hadamard_bound(m)`` up to 8 units in the last place of the bound."""
    d = det(m) if d is None else d
    bound = hadamard_bound(m)
    return abs(d) <= bound + HADAMARD_SLACK_ULPS * np.spacing(bound)


def is_degenerate(xs: np.ndarray, threshold: float) -> bool:
    """Reject tuples whose affine rows ``[1, x_j]`` are nearly dependent."""
    aug = np.column_stack([np.ones(len(xs)), xs])
    return abs(det(aug)) < threshold * hadamard_bound(aug)


def base_tuples(n: int, count: int, seed: int, threshold: float = 0.05,
                max_tries: int = 1000) -> list[np.ndarray]:
    """The canonical tuple ``e_1, ..., e_n, (1, ..., 1)`` then seeded random ones.

    Every tuple is rescaled so its longest vector has unit norm, which makes
    the probe radius equal to max_j |x_j|.
    """
    def unit(t: np.ndarray) -> np.ndarray:
        return t / np.max(np.linalg.norm(t, axis=1))

    out: list[np.ndarray] = []
    # the degeneracy test is not scale invariant, so it runs on the tuple as the probe uses it
    canonical = unit(np.vstack([np.eye(n), np.ones(n)]))
    if not is_degenerate(canonical, threshold):
        out.append(canonical)
    rng = seeded_generator(seed, 1)
    tries = 0
    while len(out) < count and tries < max_tries:
        tries += 1
        cand = unit(rng.standard_normal((n + 1, n)))
        if not is_degenerate(cand, threshold):
            out.append(cand)
    return out[:count]


def determinant_ratio_series(f: ScalarField, xs, schedule: RadialSchedule, context: str = "",
                             violations: list | None = None) -> DecaySamples:
    """``|D(f; rho xs)| / prod_j |rho x_j|`` along the schedule (compared against o(1))."""
    base = _as_tuple(xs, f.dim)
    norms = np.linalg.norm(base, axis=1)

    def ratio(rho: float) -> float:
        m = cauchy_matrix(f, rho * base)
        d = det(m)
        if violations is not None and not hadamard_holds(m, d):
            violations.append((rho, d, hadamard_bound(m)))
        return abs(d) / float(np.prod(rho * norms))

    return collect_decay(ratio, schedule, context, order=0.0)


@dataclass(frozen=True)
class DeterminantDetail:
    tuples: tuple[np.ndarray, ...]
    hadamard_violations: tuple = ()


def probe_cauchy_determinant(f: ScalarField, schedule: RadialSchedule | None = None,
                             cfg: ProbeConfig | None = None, seed: int | None = None) -> CriterionVerdict:
    cfg = cfg or ProbeConfig.default()
    schedule = schedule or cfg.schedule()
    seed = cfg.seed if seed is None else seed
    ocfg = cfg.order_config()
    tuples = base_tuples(f.dim, cfg.tuples, seed, cfg.degeneracy)
    notes = ["tuples shrink uniformly along rays; the quantifier over all tuples is sampled, not exhausted"]
    if not tuples:
        return CriterionVerdict("determinant", Verdict.INCONCLUSIVE, notes=tuple(notes + ["every tuple degenerate"]))
    violations: list = []

    def series(k: int) -> DecaySamples:
        return determinant_ratio_series(f, tuples[k], schedule, f"tuple {k}", violations)

    try:
        samples = pmap(series, list(range(len(tuples))), cfg.workers)
    except EvaluationError as exc:
        return CriterionVerdict("determinant", Verdict.INCONCLUSIVE, notes=tuple(notes + [str(exc)]))
    evidence = tuple(make_evidence(s, ocfg) for s in samples)
    aggregate = make_evidence(sup_series(samples, "sup over tuples"), ocfg)
    if violations:
        notes.append(f"{len(violations)} Hadamard bound violations beyond {HADAMARD_SLACK_ULPS} ulp")
    worst = worst_of(evidence)
    if worst is not None:
        notes.append(f"worst tuple {worst}: {np.round(tuples[worst], 6).tolist()}")
    return CriterionVerdict(
        "determinant", aggregate_verdict([e.estimate for e in evidence], ocfg), evidence,
        notes=tuple(notes), aggregate=aggregate,
        detail=DeterminantDetail(tuple(tuples), tuple(violations)),
    )

