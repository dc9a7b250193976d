"""Slope estimation from orbit traces.

The slope of an orbit is the set of accumulation points of arg(z_n), a
closed subinterval of [0, pi]. A finite trace estimates it by the range of
arg over a tail window: the stored rows with index >= n^(1-tail_fraction),
i.e. the last `tail_fraction` of the run on a log-index scale (early
transient angles are not limit points and must not pollute the range).

Estimates carry evidence rather than a bare interval: per-window ranges
over dyadic index windows, a stability flag comparing the last two of them,
and the largest gap between consecutive sorted tail angles, which shows
whether the reported interval is filled or just a pair of clusters.

The two check_* operations test structural facts about slopes: zero-step
maps have a starting-point-independent slope set, and positive-step maps
have a singleton slope at 0 or pi. Both enforce their step-type hypothesis
and refuse to run on the wrong kind of map.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import OrbitTrace, classify_trace, iterate_orbit
from .errors import HypothesisViolation, InputError
from .maps import ParabolicMap

STABILITY_TOL = 0.01
TAIL_FRACTION = 0.5
MIN_SLOPE_LENGTH = 1_000


@dataclass(frozen=True)
class SlopeReport:
    interval_lo: float
    interval_hi: float
    window_history: tuple[tuple[int, float, float], ...]  # (window, min, max), oldest first
    max_consecutive_gap: float
    converged: bool
    iterations_used: int
    final_arg: float

    @property
    def width(self) -> float:
        return self.interval_hi - self.interval_lo

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.interval_lo + self.interval_hi)

    def contains(self, angle: float, pad: float = 0.0) -> bool:
        return self.interval_lo - pad <= angle <= self.interval_hi + pad


def _window_range(trace: OrbitTrace, lo_idx, hi_idx):
    mask = (trace.indices >= lo_idx) & (trace.indices <= hi_idx)
    if mask.sum() == 0:
        return None
    vals = trace.args[mask]
    return float(vals.min()), float(vals.max())


def slope_report(
    trace: OrbitTrace,
    tail_fraction: float = TAIL_FRACTION,
    stability_tol: float = STABILITY_TOL,
) -> SlopeReport:
    """Angular range over the tail window with dyadic-window evidence."""
    n = trace.n_steps
    if n < MIN_SLOPE_LENGTH:
        raise InputError(f"slope estimation needs at least {MIN_SLOPE_LENGTH} steps")
    if not 0 < tail_fraction < 1:
        raise InputError("tail fraction must lie in (0,1)")
    tail_lo = max(1, int(round(n ** (1 - tail_fraction))))
    mask = trace.indices >= tail_lo
    if mask.sum() < 8:
        raise InputError("tail window holds too few checkpoints")
    tail = np.sort(trace.args[mask])

    history = []
    hi = n
    window = 0
    while True:
        lo = n >> (window + 1)
        r = _window_range(trace, lo, hi) if lo >= 1 else None
        if r is None or lo < 1:
            break
        history.append((window, r[0], r[1]))
        hi = lo - 1
        window += 1
        if window > 60:
            break
    history.reverse()  # oldest window first
    converged = False
    if len(history) >= 2:
        (_, lo1, hi1), (_, lo2, hi2) = history[-2], history[-1]
        converged = abs(lo1 - lo2) <= stability_tol and abs(hi1 - hi2) <= stability_tol

    gaps = np.diff(tail)
    return SlopeReport(
        interval_lo=float(tail[0]),
        interval_hi=float(tail[-1]),
        window_history=tuple(history),
        max_consecutive_gap=float(gaps.max()) if len(gaps) else 0.0,
        converged=converged,
        iterations_used=n,
        final_arg=float(trace.args[-1]),
    )


# ---------------------------------------------------------------------------
# structural checks


@dataclass(frozen=True)
class SeedComparison:
    """Slope reports from several seeds plus their spread; the slope set of
    a zero-step map does not depend on the seed."""

    step_label: str
    reports: tuple[SlopeReport, ...]
    max_endpoint_spread: float
    max_tail_arg_gap: float  # max over seed pairs of |arg difference| in the last decade


def check_initial_point_independence(
    f: ParabolicMap, seeds, budget: int, **orbit_kwargs
) -> SeedComparison:
    """Compare slope estimates across seeds for a zero-step map.

    Raises HypothesisViolation on a positive-step map: seed independence is
    a zero-step theorem and the comparison would be meaningless evidence.
    """
    seeds = list(seeds)
    if len(seeds) < 2:
        raise InputError("need at least two seeds")
    traces = [iterate_orbit(f, z0, budget, **orbit_kwargs) for z0 in seeds]
    cls = classify_trace(traces[0])
    if cls.label == "positive":
        raise HypothesisViolation("hypothesis violated: map has positive hyperbolic step")
    reports = tuple(slope_report(tr) for tr in traces)
    los = [r.interval_lo for r in reports]
    his = [r.interval_hi for r in reports]
    spread = max(max(los) - min(los), max(his) - min(his))
    tail = traces[0].indices >= max(1, budget // 10)
    gap = 0.0
    for i in range(len(traces)):
        for j in range(i + 1, len(traces)):
            d = np.abs(traces[i].args[tail] - traces[j].args[tail])
            gap = max(gap, float(d.max()))
    return SeedComparison(
        step_label=cls.label,
        reports=reports,
        max_endpoint_spread=float(spread),
        max_tail_arg_gap=gap,
    )


@dataclass(frozen=True)
class SingletonReport:
    """Positive-step maps have a singleton slope in {0, pi}; this records
    where the orbits went and how tightly."""

    step_label: str
    target: float  # 0.0 or pi
    max_final_arg_error: float
    x_over_y_final: tuple[float, ...]  # per seed; diverges with sign matching the target
    reports: tuple[SlopeReport, ...]


def check_positive_step_singleton(
    f: ParabolicMap, seeds, budget: int, **orbit_kwargs
) -> SingletonReport:
    """Check that all seeds' angles converge to one common end of [0, pi].

    Raises HypothesisViolation on a zero-step map (the singleton statement
    is the positive-step theorem).
    """
    seeds = list(seeds)
    if not seeds:
        raise InputError("need at least one seed")
    traces = [iterate_orbit(f, z0, budget, **orbit_kwargs) for z0 in seeds]
    cls = classify_trace(traces[0])
    if cls.label == "zero":
        raise HypothesisViolation("hypothesis violated: map has zero hyperbolic step")
    reports = tuple(slope_report(tr) for tr in traces)
    finals = [r.final_arg for r in reports]
    target = 0.0 if float(np.mean(finals)) < np.pi / 2 else float(np.pi)
    err = max(abs(a - target) for a in finals)
    ratios = tuple(float(tr.xs[-1] / tr.ys[-1]) for tr in traces)
    return SingletonReport(
        step_label=cls.label,
        target=target,
        max_final_arg_error=err,
        x_over_y_final=ratios,
        reports=reports,
    )
