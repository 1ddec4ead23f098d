"""Partial derivatives plus the residual f - sum of partial values."""

from __future__ import annotations

import numpy as np

from ..asymptotics import Classification, EvaluationError, classify_little_o, collect_decay
from ..config import ProbeConfig
from ..funcorpus import ScalarField, partial_values
from ..numcore import DirectionSet, RadialSchedule, make_directions
from .partials import test_partial_derivatives
from .verdict import CriterionVerdict, Verdict, make_evidence, pmap, sup_series, worst_of

__all__ = ["cauchy_like_residual", "probe_cauchy_like", "default_directions"]


def cauchy_like_residual(f: ScalarField, x) -> float:
    """``f(x) - sum_i f(x^i e_i)``."""
    xv = np.asarray(x, dtype=float)
    return f.eval(xv) - sum(partial_values(f, xv))


def default_directions(n: int, cfg: ProbeConfig) -> DirectionSet:
    return make_directions(n, cfg.extra_dirs, cfg.seed, cfg.diagonals)


def probe_cauchy_like(f: ScalarField, schedule: RadialSchedule | None = None,
                      dirs: DirectionSet | None = None, cfg: ProbeConfig | None = None) -> CriterionVerdict:
    """Existence of every partial derivative, then o(rho) decay of the residual along each direction.

    A failed existence test or any direction whose residual is not o(rho)
    refutes; every partial existing and every direction little-o is
    consistent with differentiability.
    """
    cfg = cfg or ProbeConfig.default()
    schedule = schedule or cfg.schedule()
    dirs = dirs or default_directions(f.dim, cfg)
    ocfg = cfg.order_config()
    notes: list[str] = []

    partials = test_partial_derivatives(f, cfg, schedule)
    for a in partials.axes:
        if a.exists is not True:
            notes.append(f"axis {a.axis}: {a.note}")

    def series(k: int):
        u = dirs[k].coords
        return collect_decay(lambda rho: cauchy_like_residual(f, rho * u), schedule,
                             f"direction {k} {np.round(u, 6).tolist()}")

    try:
        samples = pmap(series, list(range(len(dirs))), cfg.workers)
    except EvaluationError as exc:
        notes.append(str(exc))
        verdict = Verdict.REFUTED if partials.any_fails else Verdict.INCONCLUSIVE
        return CriterionVerdict("cauchy_like", verdict, notes=tuple(notes), detail=partials)

    evidence = tuple(make_evidence(s, ocfg) for s in samples)
    aggregate = make_evidence(sup_series(samples, "sup over directions"), ocfg)
    classes = [classify_little_o(e.estimate, ocfg) for e in evidence]
    worst = worst_of(evidence)

    if partials.any_fails:
        notes.insert(0, "partial derivative existence fails")
        verdict = Verdict.REFUTED
    elif Classification.NOT_LITTLE_O in classes:
        verdict = Verdict.REFUTED
    elif partials.all_exist and all(c is Classification.LITTLE_O for c in classes):
        verdict = Verdict.CONSISTENT
    else:
        verdict = Verdict.INCONCLUSIVE
    return CriterionVerdict(
        "cauchy_like", verdict, evidence,
        worst_direction=dirs[worst] if worst is not None else None,
        notes=tuple(notes), aggregate=aggregate, detail=partials,
    )
