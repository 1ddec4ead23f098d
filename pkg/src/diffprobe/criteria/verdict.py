from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence, TypeVar

from ..asymptotics import Classification, DecaySamples, OrderConfig, OrderEstimate, classify_little_o
from ..numcore import Vector

T = TypeVar("T")
R = TypeVar("R")


class Verdict(str, enum.Enum):
    CONSISTENT = "Consistent"
    REFUTED = "Refuted"
    INCONCLUSIVE = "Inconclusive"
    CONDITIONS_NOT_MET = "ConditionsNotMet"


@dataclass(frozen=True)
class Evidence:
    """One decay series and its order estimate."""

    samples: DecaySamples
    estimate: OrderEstimate

    @property
    def context(self) -> str:
        return self.samples.context

    @property
    def final_ratio(self) -> float:
        return self.estimate.ratio_tail[-1] if self.estimate.ratio_tail else float("nan")


@dataclass(frozen=True)
class CriterionVerdict:
    """Outcome of one probe.

    ``aggregate`` is the sup-over-sampled-directions series, the single
    number a report quotes as the criterion's residual order. ``detail``
    carries the criterion-specific payload (partial derivatives, tangent
    plane, continuity moduli, ...).
    """

    criterion: str
    verdict: Verdict
    evidence: tuple[Evidence, ...] = ()
    worst_direction: Vector | None = None
    notes: tuple[str, ...] = ()
    aggregate: Evidence | None = None
    detail: Any = None

    def series(self) -> list[DecaySamples]:
        out = [e.samples for e in self.evidence]
        if self.aggregate is not None:
            out.append(self.aggregate.samples)
        return out


def make_evidence(samples: DecaySamples, cfg: OrderConfig) -> Evidence:
    from ..asymptotics import estimate_order

    return Evidence(samples, estimate_order(samples, cfg))


def aggregate_verdict(estimates: Iterable[OrderEstimate], cfg: OrderConfig) -> Verdict:
    """Refuted on any NotLittleO, Consistent when every item is little-o, else Inconclusive."""
    classes = [classify_little_o(e, cfg) for e in estimates]
    if not classes:
        return Verdict.INCONCLUSIVE
    if Classification.NOT_LITTLE_O in classes:
        return Verdict.REFUTED
    if all(c is Classification.LITTLE_O for c in classes):
        return Verdict.CONSISTENT
    return Verdict.INCONCLUSIVE


def worst_of(evidence: Sequence[Evidence]) -> int | None:
    best, idx = -1.0, None
    for k, e in enumerate(evidence):
        r = e.final_ratio
        if r == r and r > best:
            best, idx = r, k
    return idx


def pmap(fn: Callable[[T], R], items: Sequence[T], workers: int = 1) -> list[R]:
    """Ordered map, optionally over a thread pool; output order never depends on ``workers``."""
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def sup_series(series: Sequence[DecaySamples], context: str) -> DecaySamples:
    """Pointwise max of |value| across series sharing one radius grid."""
    first = series[0]
    vals = tuple(max(abs(s.values[k]) for s in series) for k in range(len(first)))
    notes = tuple(dict.fromkeys(n for s in series for n in s.notes))
    return DecaySamples(first.rhos, vals, context, first.order, notes)


__all__ = ["Verdict", "Evidence", "CriterionVerdict", "aggregate_verdict", "make_evidence",
           "worst_of", "pmap", "sup_series"]
