"""Probe reports: running selected criteria, combining verdicts, JSON and CSV output."""

from __future__ import annotations

import csv
import datetime as _dt
import enum
import io
import json
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import __version__
from .blockgen import check_continuous_partial_differentiability, cr_check, probe_block_cauchy_like
from .config import ProbeConfig
from .criteria import (CriterionVerdict, Verdict, check_relaxed_conditions, probe_cauchy_determinant,
                       probe_cauchy_like, probe_geo)
from .criteria.verdict import pmap
from .funcorpus import (BlockField, ComplexFieldSample, ScalarField, Truth, block_corpus_list, complex_corpus_list,
                        corpus_list, translate)

__all__ = [
    "UsageError",
    "Combined",
    "CriterionSummary",
    "ProbeReport",
    "CorpusEntry",
    "CorpusRunSummary",
    "SCALAR_CRITERIA",
    "BLOCK_CRITERIA",
    "COMPLEX_CRITERIA",
    "combine",
    "resolve_function",
    "run_probe",
    "run_corpus",
    "emit_report",
    "load_report",
    "surface_csv",
]

SCALAR_CRITERIA = ("cauchy_like", "determinant", "geo", "relaxed")
BLOCK_CRITERIA = ("block_cauchy_like", "block_continuity")
COMPLEX_CRITERIA = ("cauchy_riemann",)
FORMATS = ("json", "csv-evidence")


class UsageError(ValueError):
    """Bad input from the caller: unknown id, empty selection, unsupported format."""


class Combined(str, enum.Enum):
    CONSISTENT = "Consistent"
    REFUTED = "Refuted"
    INCONCLUSIVE = "Inconclusive"
    CONFLICTING = "Conflicting"


def combine(verdicts: Sequence[Verdict]) -> tuple[Combined, tuple[str, ...]]:
    """Fold criterion verdicts; Inconclusive and ConditionsNotMet never block a decisive one.

    Returns the combined verdict and any diagnostics. Consistent next to
    Refuted means some tolerance is wrong, so it is flagged, not resolved.
    """
    vs = set(verdicts)
    if Verdict.CONSISTENT in vs and Verdict.REFUTED in vs:
        return Combined.CONFLICTING, ("criteria disagree: Consistent and Refuted both present; check tolerances",)
    if Verdict.REFUTED in vs:
        return Combined.REFUTED, ()
    if Verdict.CONSISTENT in vs:
        return Combined.CONSISTENT, ()
    return Combined.INCONCLUSIVE, ()


def _finite(x) -> float | None:
    x = float(x)
    return x if math.isfinite(x) else None


@dataclass(frozen=True)
class CriterionSummary:
    name: str
    verdict: str
    worst_direction: tuple[float, ...] | None
    slope: float | None
    fit_quality: float | None
    ratio_tail: tuple[float, ...]
    notes: tuple[str, ...] = ()

    @classmethod
    def from_verdict(cls, v: CriterionVerdict) -> "CriterionSummary":
        wd = None if v.worst_direction is None else tuple(float(c) for c in v.worst_direction.coords)
        est = v.aggregate.estimate if v.aggregate is not None else None
        return cls(
            v.criterion, v.verdict.value, wd,
            None if est is None else _finite(est.slope),
            None if est is None else _finite(est.fit_quality),
            () if est is None else tuple(float(r) for r in est.ratio_tail),
            tuple(v.notes),
        )

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "verdict": self.verdict,
            "worst_direction": None if self.worst_direction is None else list(self.worst_direction),
            "evidence_summary": {"slope": self.slope, "fit_quality": self.fit_quality,
                                 "ratio_tail": list(self.ratio_tail)},
            "notes": list(self.notes),
        }

    @classmethod
    def from_json(cls, d: dict) -> "CriterionSummary":
        ev = d["evidence_summary"]
        wd = d.get("worst_direction")
        return cls(d["name"], d["verdict"], None if wd is None else tuple(wd), ev["slope"], ev["fit_quality"],
                   tuple(ev["ratio_tail"]), tuple(d.get("notes", ())))


@dataclass(frozen=True)
class ProbeReport:
    """Everything a probe run decided, plus the raw evidence (not serialized to JSON)."""

    function: str
    kind: str
    point: tuple[float, ...]
    seed: int
    config: dict
    criteria: tuple[CriterionSummary, ...]
    combined: Combined
    diagnostics: tuple[str, ...] = ()
    timestamp: str | None = None
    tool_version: str = __version__
    block_dims: tuple[int, ...] | None = None
    verdicts: tuple[CriterionVerdict, ...] = field(default=(), compare=False, repr=False)

    @property
    def conflicting(self) -> bool:
        return self.combined is Combined.CONFLICTING

    def to_json(self) -> dict:
        return {
            "function": self.function,
            "kind": self.kind,
            "point": list(self.point),
            "seed": self.seed,
            "config": self.config,
            "criteria": [c.to_json() for c in self.criteria],
            "combined": self.combined.value,
            "diagnostics": list(self.diagnostics),
            "timestamp": self.timestamp,
            "tool_version": self.tool_version,
            "block_dims": None if self.block_dims is None else list(self.block_dims),
        }

    @classmethod
    def from_json(cls, d: dict) -> "ProbeReport":
        return cls(
            d["function"], d["kind"], tuple(d["point"]), d["seed"], d["config"],
            tuple(CriterionSummary.from_json(c) for c in d["criteria"]), Combined(d["combined"]),
            tuple(d.get("diagnostics", ())), d.get("timestamp"), d.get("tool_version", __version__),
            None if d.get("block_dims") is None else tuple(d["block_dims"]),
        )


def _config_echo(cfg: ProbeConfig) -> dict:
    # the worker count changes scheduling, never results, so reports leave it out
    echo = cfg.as_dict()
    echo.pop("workers")
    return echo


def resolve_function(function_id: str) -> ScalarField | BlockField | ComplexFieldSample:
    for family in (corpus_list(), block_corpus_list(), complex_corpus_list()):
        for f in family:
            if f.name == function_id:
                return f
    raise UsageError(f"unknown function id {function_id!r}; run 'diffprobe list' for the catalog")


def _kind(f) -> str:
    if isinstance(f, BlockField):
        return "block"
    if isinstance(f, ComplexFieldSample):
        return "complex"
    return "scalar"


def _point_dim(f) -> int:
    if isinstance(f, BlockField):
        return sum(f.block_dims)
    if isinstance(f, ComplexFieldSample):
        return 2 * f.n
    return f.dim


def _shift(f, p: np.ndarray):
    """The function g(x) = f(p + x) - f(p), so that the origin of g is ``p``."""
    if not np.any(p):
        return f
    if isinstance(f, ScalarField):
        return translate(f, p)
    if isinstance(f, BlockField):
        splits = np.cumsum(f.block_dims)[:-1]
        pb = np.split(p, splits)
        base = f.eval(pb)
        return BlockField(f"{f.name}@{p.tolist()}", f.block_dims, f.codomain_dim,
                          lambda y: f.func([a + np.asarray(b, dtype=float) for a, b in zip(pb, y)]) - base,
                          formula=f"{f.formula} shifted")
    pz = ComplexFieldSample.to_complex(p)
    base = f.eval(pz)
    return ComplexFieldSample(f"{f.name}@{p.tolist()}", f.n, lambda z: f.func(pz + z) - base,
                              formula=f"{f.formula} shifted")


def _select(kind: str, criteria: Sequence[str] | None) -> tuple[str, ...]:
    allowed = {"scalar": SCALAR_CRITERIA, "block": BLOCK_CRITERIA, "complex": COMPLEX_CRITERIA}[kind]
    if criteria is None:
        return allowed
    chosen: list[str] = []
    for c in criteria:
        c = c.strip()
        if c == "all":
            chosen.extend(allowed)
        elif c in allowed:
            chosen.append(c)
        elif c:
            raise UsageError(f"criterion {c!r} does not apply to {kind} functions; choose from {', '.join(allowed)}")
    chosen = list(dict.fromkeys(chosen))
    if not chosen:
        raise UsageError("empty criteria selection: nothing to run")
    return tuple(chosen)


def _continuity_verdicts(F: BlockField, cfg: ProbeConfig) -> list[CriterionVerdict]:
    from .criteria.verdict import Evidence

    out = []
    for j in range(len(F.block_dims)):
        m = check_continuous_partial_differentiability(F, j, cfg=cfg)
        verdict = {True: Verdict.CONSISTENT, False: Verdict.CONDITIONS_NOT_MET}.get(m.continuous, Verdict.INCONCLUSIVE)
        ev = Evidence(m.samples, m.estimate)
        out.append(CriterionVerdict(f"block_continuity_{j}", verdict, (ev,), notes=m.samples.notes, aggregate=ev,
                                    detail=m))
    return out


def _run(f, kind: str, selected: Sequence[str], cfg: ProbeConfig, axis_order=None) -> list[CriterionVerdict]:
    schedule = cfg.schedule()
    out: list[CriterionVerdict] = []
    for name in selected:
        if name == "cauchy_like":
            out.append(probe_cauchy_like(f, schedule, cfg=cfg))
        elif name == "determinant":
            out.append(probe_cauchy_determinant(f, schedule, cfg, cfg.seed))
        elif name == "geo":
            out.append(probe_geo(f, schedule, cfg=cfg))
        elif name == "relaxed":
            out.append(check_relaxed_conditions(f, axis_order, cfg))
        elif name == "block_cauchy_like":
            out.append(probe_block_cauchy_like(f, schedule, cfg, cfg.seed))
        elif name == "block_continuity":
            if len(f.block_dims) > 1:
                out.extend(_continuity_verdicts(f, cfg))
        elif name == "cauchy_riemann":
            out.append(cr_check(f, cfg))
    return out


def run_probe(function_id: str, point: Sequence[float] | None = None, criteria: Sequence[str] | None = None,
              cfg: ProbeConfig | None = None, *, timestamp: bool = True,
              axis_order: Sequence[int] | None = None) -> ProbeReport:
    """Run the selected criteria for one corpus function at ``point`` (default: the origin).

    Every criterion shares ``cfg.seed``. Block points are the concatenated
    block coordinates; complex points interleave real and imaginary parts.
    """
    cfg = cfg or ProbeConfig.default()
    f = resolve_function(function_id)
    kind = _kind(f)
    dim = _point_dim(f)
    p = np.zeros(dim) if point is None else np.asarray(point, dtype=float).ravel()
    if p.shape != (dim,):
        raise UsageError(f"{function_id} takes a point with {dim} coordinates, got {p.size}")
    selected = _select(kind, criteria)
    if axis_order is not None and kind == "scalar":
        if sorted(int(a) for a in axis_order) != list(range(1, dim + 1)):
            raise UsageError(f"axis order must be a permutation of 1..{dim}")
    verdicts = _run(_shift(f, p), kind, selected, cfg, axis_order)
    combined, diagnostics = combine([v.verdict for v in verdicts])
    stamp = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds") if timestamp else None
    return ProbeReport(
        function=function_id, kind=kind, point=tuple(float(c) for c in p), seed=cfg.seed, config=_config_echo(cfg),
        criteria=tuple(CriterionSummary.from_verdict(v) for v in verdicts), combined=combined,
        diagnostics=diagnostics, timestamp=stamp,
        block_dims=tuple(f.block_dims) if kind == "block" else None, verdicts=tuple(verdicts),
    )


# corpus regression ---------------------------------------------------------

@dataclass(frozen=True)
class CorpusEntry:
    function: str
    kind: str
    truth: Truth
    combined: Combined
    match: bool
    criteria: tuple[tuple[str, str], ...]
    disagreements: tuple[str, ...] = ()


@dataclass(frozen=True)
class CorpusRunSummary:
    entries: tuple[CorpusEntry, ...]

    @property
    def totals(self) -> dict:
        return {"entries": len(self.entries), "matched": sum(e.match for e in self.entries),
                "mismatched": sum(not e.match for e in self.entries)}

    @property
    def mismatches(self) -> list[str]:
        return [e.function for e in self.entries if not e.match]

    @property
    def all_match(self) -> bool:
        return not self.mismatches

    @property
    def strict_ok(self) -> bool:
        """All match and no single criterion contradicts a truth label."""
        return self.all_match and not any(e.disagreements for e in self.entries)

    def to_json(self) -> dict:
        return {
            "entries": [{"function": e.function, "kind": e.kind, "truth": e.truth.value,
                         "combined": e.combined.value, "match": e.match,
                         "criteria": {k: v for k, v in e.criteria}, "disagreements": list(e.disagreements)}
                        for e in self.entries],
            "totals": self.totals,
            "mismatches": self.mismatches,
        }

    def to_text(self) -> str:
        lines = [f"{'function':<18} {'truth':<26} {'combined':<13} match  criteria"]
        for e in self.entries:
            crit = " ".join(f"{k}={v}" for k, v in e.criteria)
            lines.append(f"{e.function:<18} {e.truth.value:<26} {e.combined.value:<13} "
                         f"{'yes' if e.match else 'NO ':<6} {crit}")
            for d in e.disagreements:
                lines.append(f"{'':<18} ! {d}")
        t = self.totals
        lines.append(f"{t['matched']}/{t['entries']} entries match their truth labels")
        return "\n".join(lines) + "\n"


def _matches(truth: Truth, combined: Combined) -> bool:
    return ((truth is Truth.DIFFERENTIABLE and combined is Combined.CONSISTENT)
            or (truth is Truth.NOT_DIFFERENTIABLE and combined is Combined.REFUTED))


def _contradicts(truth: Truth, verdict: str) -> bool:
    return ((truth is Truth.DIFFERENTIABLE and verdict == Verdict.REFUTED.value)
            or (truth is Truth.NOT_DIFFERENTIABLE and verdict == Verdict.CONSISTENT.value))


def _corpus_criteria(kind: str) -> tuple[str, ...]:
    # block continuity is a sufficient condition with its own cost; probe-only
    return {"scalar": SCALAR_CRITERIA, "block": ("block_cauchy_like",), "complex": COMPLEX_CRITERIA}[kind]


def run_corpus(cfg: ProbeConfig | None = None) -> CorpusRunSummary:
    """Probe every corpus entry at the origin and compare with its truth label.

    Entries run through ``pmap`` with ``cfg.workers``; each entry runs its
    own criteria serially, and assembly follows corpus order.
    """
    cfg = cfg or ProbeConfig.default()
    fns = [*corpus_list(), *block_corpus_list(), *complex_corpus_list()]
    inner = cfg.replace(workers=1)

    def one(f) -> CorpusEntry:
        kind = _kind(f)
        verdicts = _run(f, kind, _corpus_criteria(kind), inner)
        combined, _ = combine([v.verdict for v in verdicts])
        pairs = tuple((v.criterion, v.verdict.value) for v in verdicts)
        bad = tuple(f"{name} says {v} against truth {f.truth.value}" for name, v in pairs if _contradicts(f.truth, v))
        return CorpusEntry(f.name, kind, f.truth, combined, _matches(f.truth, combined), pairs, bad)

    return CorpusRunSummary(tuple(pmap(one, fns, cfg.workers)))


# output ---------------------------------------------------------------------

def emit_report(report: ProbeReport, fmt: str = "json") -> bytes:
    """Serialize as ``json`` (summary schema) or ``csv-evidence`` (every decay sample)."""
    if fmt == "json":
        return (json.dumps(report.to_json(), sort_keys=True, indent=2, allow_nan=False) + "\n").encode("utf-8")
    if fmt == "csv-evidence":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["criterion", "context", "rho", "value", "ratio"])
        for v in report.verdicts:
            for s in v.series():
                for rho, val, r in zip(s.rhos, s.values, s.ratios):
                    w.writerow([v.criterion, s.context, repr(float(rho)), repr(float(val)), repr(float(r))])
        return buf.getvalue().encode("utf-8")
    raise UsageError(f"unsupported format {fmt!r}; choose from {', '.join(FORMATS)}")


def load_report(data: bytes | str) -> ProbeReport:
    """Inverse of ``emit_report(..., "json")``; the raw evidence is not restored."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    return ProbeReport.from_json(json.loads(data))


def surface_csv(function_id: str, grid: int = 41, extent: float = 1.0) -> bytes:
    """Gridded samples ``x, y, f(x, y)`` on [-extent, extent]^2 for external plotting."""
    f = resolve_function(function_id)
    if not isinstance(f, ScalarField) or f.dim != 2:
        raise UsageError(f"surface needs a scalar function of two variables; {function_id} is not one")
    if grid < 2:
        raise UsageError("grid must be at least 2")
    if not extent > 0:
        raise UsageError("extent must be positive")
    axis = np.linspace(-extent, extent, grid)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "y", "f"])
    for y in axis:
        for x in axis:
            w.writerow([repr(float(x)), repr(float(y)), repr(float(f.eval(np.array([x, y]))))])
    return buf.getvalue().encode("utf-8")

