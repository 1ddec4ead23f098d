"""Probes for block-structured maps F: Y_1 x ... x Y_n -> R^m, and complex functions.

Points of the product space are normed by rho = max_j |Y_j|. Each block is
a real space; a complex block is handled through its real embedding.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .asymptotics import (Classification, DecaySamples, EvaluationError, classify_little_o, collect_decay,
                          estimate_order, running_sup)
from .config import ProbeConfig
from .criteria.cauchy_like import probe_cauchy_like
from .criteria.geo import FitError
from .criteria.partials import DerivativeError, directional_derivative, two_sided_derivative
from .criteria.relaxed import ContinuityModulus
from .criteria.verdict import CriterionVerdict, Evidence, Verdict, make_evidence, pmap, sup_series, worst_of
from .funcorpus import BlockField, ComplexFieldSample, ScalarField, block_partial_values
from .linalg import SingularMatrixError, solve
from .numcore import BlockVector, RadialSchedule, kept_radii, make_directions, seeded_generator

__all__ = [
    "BlockLinearMap",
    "BlockFit",
    "fit_block_linear",
    "probe_block_cauchy_like",
    "check_continuous_partial_differentiability",
    "scalar_as_block",
    "wirtinger_derivatives",
    "cr_check",
    "CRDetail",
]


@dataclass(frozen=True)
class BlockLinearMap:
    """The linear map L_j: Y_j -> Z, stored as a (codomain_dim, d_j) matrix."""

    block_index: int
    matrix: np.ndarray

    def apply(self, y) -> np.ndarray:
        return self.matrix @ np.asarray(y, dtype=float)


@dataclass(frozen=True)
class BlockFit:
    map: BlockLinearMap
    evidence: Evidence
    partially_differentiable: bool | None


def _block_dirs(F: BlockField, j: int, cfg: ProbeConfig) -> np.ndarray:
    return make_directions(F.block_dims[j], cfg.extra_dirs, cfg.seed + 7919 * (j + 1), cfg.diagonals).as_array()


def _embed(F: BlockField, j: int, y: np.ndarray, base: list[np.ndarray] | None = None) -> list[np.ndarray]:
    blocks = [np.zeros(d) for d in F.block_dims] if base is None else [b.copy() for b in base]
    blocks[j] = blocks[j] + y
    return blocks


def _lstsq(U: np.ndarray, V: np.ndarray) -> np.ndarray:
    """Rows of ``V`` ~ L @ rows of ``U``; returns L (m x d)."""
    if U.shape[0] < U.shape[1]:
        raise FitError(f"{U.shape[0]} samples cannot determine a map on {U.shape[1]} dimensions")
    try:
        return solve(U.T @ U, U.T @ V).T
    except SingularMatrixError as exc:
        raise FitError(f"rank-deficient shell sample: {exc}") from None


def fit_block_linear(F: BlockField, j: int, schedule: RadialSchedule | None = None,
                     cfg: ProbeConfig | None = None) -> BlockFit:
    """Fit L_j from F restricted to block ``j`` and test the restriction for o(|Y_j|).

    The map is fitted on the innermost shell; the residual
    max_u |F(0..rho u..0) - L_j(rho u)| is then classified along the schedule.
    """
    cfg = cfg or ProbeConfig.default()
    if not 0 <= j < len(F.block_dims):
        raise IndexError(f"block index {j} out of range for {len(F.block_dims)} blocks")
    schedule = schedule or cfg.schedule()
    U = _block_dirs(F, j, cfg)
    rhos = kept_radii(schedule)
    values = {rho: np.array([F.eval(_embed(F, j, rho * u)) for u in U]) for rho in rhos}
    if not all(np.all(np.isfinite(v)) for v in values.values()):
        raise EvaluationError(f"non-finite value of {F.name} on block {j}")
    inner = rhos[-1]
    L = _lstsq(U, values[inner] / inner)
    lmap = BlockLinearMap(j, L)

    def residual(rho: float) -> float:
        return float(np.max(np.linalg.norm(values[rho] - rho * (U @ L.T), axis=1)))

    samples = collect_decay(residual, schedule, f"block {j} restricted residual")
    ev = make_evidence(samples, cfg.order_config())
    cls = classify_little_o(ev.estimate, cfg.order_config())
    ok = {Classification.LITTLE_O: True, Classification.NOT_LITTLE_O: False}.get(cls)
    return BlockFit(lmap, ev, ok)


def probe_block_cauchy_like(F: BlockField, schedule: RadialSchedule | None = None,
                            cfg: ProbeConfig | None = None, seed: int | None = None) -> CriterionVerdict:
    """Partial differentiability in every block, then |F(Y) - sum_j F(0..Y_j..0)| = o(rho).

    Joint samples put a seeded unit vector in every block, all scaled by
    rho, so each sample has block norm rho.
    """
    cfg = cfg or ProbeConfig.default()
    schedule = schedule or cfg.schedule()
    seed = cfg.seed if seed is None else seed
    ocfg = cfg.order_config()
    notes: list[str] = []
    try:
        fits = [fit_block_linear(F, j, schedule, cfg) for j in range(len(F.block_dims))]
    except (FitError, EvaluationError) as exc:
        return CriterionVerdict("block_cauchy_like", Verdict.INCONCLUSIVE, notes=(f"block fit failed: {exc}",))
    for fit in fits:
        if fit.partially_differentiable is not True:
            notes.append(f"block {fit.map.block_index}: partial differentiability "
                         f"{'fails' if fit.partially_differentiable is False else 'undecided'}")

    per_block = [_block_dirs(F, j, cfg) for j in range(len(F.block_dims))]
    count = max(len(d) for d in per_block)
    rng = seeded_generator(seed, 2)
    picks = [np.arange(count) % len(d) if k == 0 else rng.permutation(count) % len(d)
             for k, d in enumerate(per_block)]
    joint = [[per_block[j][picks[j][s]] for j in range(len(per_block))] for s in range(count)]

    def series(s: int) -> DecaySamples:
        us = joint[s]

        def residual(rho: float) -> float:
            y = BlockVector([rho * u for u in us])
            return float(np.linalg.norm(F.eval(y) - sum(block_partial_values(F, y))))

        return collect_decay(residual, schedule, f"joint sample {s}")

    try:
        samples = pmap(series, list(range(count)), cfg.workers)
    except EvaluationError as exc:
        return CriterionVerdict("block_cauchy_like", Verdict.INCONCLUSIVE, notes=tuple(notes + [str(exc)]),
                                detail=tuple(fits))
    evidence = tuple(make_evidence(s, ocfg) for s in samples)
    aggregate = make_evidence(sup_series(samples, "sup over joint samples"), ocfg)
    classes = [classify_little_o(e.estimate, ocfg) for e in evidence]
    if any(f.partially_differentiable is False for f in fits) or Classification.NOT_LITTLE_O in classes:
        verdict = Verdict.REFUTED
    elif all(f.partially_differentiable for f in fits) and all(c is Classification.LITTLE_O for c in classes):
        verdict = Verdict.CONSISTENT
    else:
        verdict = Verdict.INCONCLUSIVE
    worst = worst_of(evidence)
    if worst is not None:
        notes.append(f"worst joint sample {worst}")
    return CriterionVerdict("block_cauchy_like", verdict, evidence, notes=tuple(notes),
                            aggregate=aggregate, detail=tuple(fits))


def _local_map(F: BlockField, j: int, base: list[np.ndarray], U: np.ndarray, h0: float, tol: float) -> np.ndarray:
    """L_j at ``base`` from derivatives of F along each sampled direction of block j."""
    cols = []
    for u in U:
        comps = [two_sided_derivative(lambda t, c=c: float(F.eval(_embed(F, j, t * u, base))[c]), h0, tol)
                 for c in range(F.codomain_dim)]
        cols.append(comps)
    return _lstsq(U, np.array(cols))


def check_continuous_partial_differentiability(F: BlockField, j: int, schedule: RadialSchedule | None = None,
                                               cfg: ProbeConfig | None = None) -> ContinuityModulus:
    """Drift sup |(L_j(B) - L_j(0)) u| of the block-j linear map as base points B approach 0.

    Base points have block j zero and every other block of norm rho in a
    seeded direction. The drift is a max over sampled unit directions u of
    block j, and the series is the running sup over smaller radii.
    """
    cfg = cfg or ProbeConfig.default()
    schedule = schedule or cfg.schedule()
    U = _block_dirs(F, j, cfg)
    zero = [np.zeros(d) for d in F.block_dims]
    rhos = kept_radii(schedule)
    others = [k for k in range(len(F.block_dims)) if k != j]
    if not others:
        raise ValueError("a single-block field has no offsets to vary")
    # axes and sign-diagonals of every other block; random extras add cost, not coverage
    offset_dirs = {k: make_directions(F.block_dims[k], 0, cfg.seed, True).as_array() for k in others}
    n_bases = min(len(v) for v in offset_dirs.values())
    drifts: list[float] = []
    missing_at = None
    try:
        L0 = _local_map(F, j, zero, U, cfg.fd_rel * schedule.rho0, cfg.fd_tol)
    except DerivativeError:
        L0, missing_at = None, 0.0
    for rho in rhos if L0 is not None else ():
        worst = 0.0
        try:
            for b in range(n_bases):
                base = [np.zeros(d) for d in F.block_dims]
                for k in others:
                    base[k] = rho * offset_dirs[k][b]
                Lb = _local_map(F, j, base, U, cfg.fd_rel * rho, cfg.fd_tol)
                worst = max(worst, float(np.max(np.linalg.norm(U @ (Lb - L0).T, axis=1))))
        except DerivativeError:
            missing_at = rho
            break
        drifts.append(worst)
    if missing_at is None:
        notes = ()
    elif L0 is None:
        notes = (f"block {j} derivative does not exist at the origin",)
    else:
        notes = (f"block {j} derivative does not exist at offset radius {missing_at:.3g}",)
    raw = DecaySamples(tuple(rhos[:len(drifts)]), tuple(drifts), f"block {j} map drift", order=0.0, notes=notes)
    samples = running_sup(raw) if drifts else raw
    est = estimate_order(samples, cfg.order_config())
    if missing_at is not None:
        continuous = False
    else:
        cls = classify_little_o(est, cfg.order_config())
        continuous = {Classification.LITTLE_O: True, Classification.NOT_LITTLE_O: False}.get(cls)
    return ContinuityModulus(j, samples, est, continuous, tuple(others))


def scalar_as_block(f: ScalarField) -> BlockField:
    """View f: R^n -> R as a block field with n one-dimensional blocks."""
    return BlockField(f"{f.name}[blocks]", (1,) * f.dim, 1,
                      lambda y: np.array([f.eval(np.concatenate(y))]), f.truth, f.truth_note, f.formula)


def wirtinger_derivatives(f: ComplexFieldSample, cfg: ProbeConfig | None = None) -> tuple[np.ndarray, np.ndarray]:
    """(df/dz_k, df/dconj(z_k)) at the origin for every k, from the real embedding."""
    cfg = cfg or ProbeConfig.default()
    re, im = f.real_part(), f.imag_part()
    dz, dzbar = [], []
    for k in range(f.n):
        ex = np.zeros(2 * f.n)
        ey = np.zeros(2 * f.n)
        ex[2 * k] = 1.0
        ey[2 * k + 1] = 1.0
        fx = directional_derivative(re, ex, cfg).value + 1j * directional_derivative(im, ex, cfg).value
        fy = directional_derivative(re, ey, cfg).value + 1j * directional_derivative(im, ey, cfg).value
        dz.append(0.5 * (fx - 1j * fy))
        dzbar.append(0.5 * (fx + 1j * fy))
    return np.array(dz), np.array(dzbar)


@dataclass(frozen=True)
class CRDetail:
    dz: np.ndarray
    dzbar: np.ndarray
    real_part: CriterionVerdict
    imag_part: CriterionVerdict


def cr_check(f: ComplexFieldSample, cfg: ProbeConfig | None = None) -> CriterionVerdict:
    """C-differentiability at the origin: Cauchy-Riemann equations plus R-differentiability.

    The anti-holomorphic Wirtinger derivatives must vanish (to ``cr_tol``)
    and both the real and imaginary parts must pass the Cauchy-like probe
    on R^{2n}.
    """
    cfg = cfg or ProbeConfig.default()
    notes: list[str] = []
    try:
        dz, dzbar = wirtinger_derivatives(f, cfg)
    except (DerivativeError, EvaluationError) as exc:
        return CriterionVerdict("cauchy_riemann", Verdict.INCONCLUSIVE, notes=(f"Wirtinger estimate failed: {exc}",))
    cr_ok = bool(np.all(np.abs(dzbar) <= cfg.cr_tol))
    if not cr_ok:
        notes.append("Cauchy-Riemann equations fail: |df/dzbar| = "
                     + ", ".join(f"{abs(v):.6g}" for v in dzbar))
    rp = probe_cauchy_like(f.real_part(), cfg=cfg)
    ip = probe_cauchy_like(f.imag_part(), cfg=cfg)
    parts = (rp.verdict, ip.verdict)
    if not cr_ok or Verdict.REFUTED in parts:
        verdict = Verdict.REFUTED
    elif all(p is Verdict.CONSISTENT for p in parts):
        verdict = Verdict.CONSISTENT
    else:
        verdict = Verdict.INCONCLUSIVE
    for name, p in (("real part", rp), ("imaginary part", ip)):
        if p.verdict is not Verdict.CONSISTENT:
            notes.append(f"{name}: {p.verdict.value}")
    evidence = rp.evidence + ip.evidence
    aggregate = None
    if rp.aggregate is not None and ip.aggregate is not None:
        aggregate = max((rp.aggregate, ip.aggregate), key=lambda e: e.final_ratio)
    return CriterionVerdict("cauchy_riemann", verdict, evidence, notes=tuple(notes), aggregate=aggregate,
                            detail=CRDetail(dz, dzbar, rp, ip))

