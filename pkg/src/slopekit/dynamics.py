"""Orbit iteration with step diagnostics and hyperbolic-step classification.

Orbits run at full working precision in gmpy2. Diagnostics are stored at a
decimating set of checkpoint indices: every step up to `dense_cap`
(default 10^4), geometrically spaced beyond it, final step always included.
Row n holds z_n together with the step leaving it, so rho_step/dx/dy at row
n describe the move from z_n to z_{n+1}; the last row has no outgoing step.
Stored values are kept at full precision (for trace output at arbitrary
digits) and mirrored into float64 arrays for cheap statistics.

Step distances in the pseudo-hyperbolic metric never increase along an
orbit. The runner tracks the largest observed increase of rho^2 between
consecutive steps at full precision at every step, not just checkpoints,
because float64 granularity (~1e-16) is far coarser than the slack this
invariant is checked to (10^-(digits-6)).

Maps with a nonzero measure strictly increase the imaginary part; when a
step fails to do so the working precision is exhausted and the runner
raises rather than silently flatlining. Iteration is strictly sequential
(z_{n+1} depends on z_n); run independent orbits concurrently instead.
"""

from __future__ import annotations

from dataclasses import dataclass

import gmpy2
import numpy as np

from .errors import InputError, LeftHalfPlane, PrecisionExhaustion
from .halfplane import UHPoint
from .maps import ParabolicMap, eval_map, reduced_offset
from .precision import current_bits, to_complex, to_real, use_bits

DENSE_CAP = 10_000
CHECKPOINT_RATIO = 1.02

MIN_CLASSIFY_BUDGET = 1_000
MIN_DRIFT_LENGTH = 100

# classifier thresholds over the last decade of checkpoints (artifact
# decisions; the source results give no quantitative rates)
ZERO_STEP_RHO_MAX = 1e-3
ZERO_STEP_B_MAX = 1e-3
POSITIVE_STEP_RHO_MIN = 1e-2
POSITIVE_STEP_SPREAD = 0.25


def checkpoint_indices(n_steps: int, dense_cap: int = DENSE_CAP, ratio: float = CHECKPOINT_RATIO):
    """Sorted step indices to store: 0..dense_cap dense, then geometric."""
    if n_steps < 1:
        raise InputError("n_steps must be >= 1")
    idx = list(range(0, min(n_steps, dense_cap) + 1))
    n = idx[-1]
    while n < n_steps:
        n = min(max(int(n * ratio), n + 1), n_steps)
        idx.append(n)
    return np.array(idx, dtype=np.int64)


@dataclass
class OrbitTrace:
    map: ParabolicMap
    z0: gmpy2.mpc
    n_steps: int
    bits: int
    indices: np.ndarray  # stored step numbers, indices[0] == 0, last == n_steps
    xs: np.ndarray  # float64 mirrors of the exact columns
    ys: np.ndarray
    args: np.ndarray
    rho_step: np.ndarray  # rho(z_n, z_{n+1}); NaN at the last row
    dx: np.ndarray  # x_{n+1} - x_n; NaN at the last row
    dy: np.ndarray
    exact_points: list  # gmpy2.mpc per stored row
    exact_steps: list  # (dx, dy, rho) gmpy2.mpfr triples, None at the last row
    final_z: gmpy2.mpc
    max_rho2_excess: float  # max over n of rho2_{n+1} - rho2_n; -inf if n_steps < 2

    def rows(self, digits: int = 30):
        """Yield trace rows (n, re, im, arg, rho_step, dx, dy) as decimal
        strings at the requested digits, from the exact stored values."""
        from .precision import format_real

        for i, n in enumerate(self.indices):
            z = self.exact_points[i]
            arg = gmpy2.atan2(z.imag, z.real)
            step = self.exact_steps[i]
            if step is None:
                tail = ("", "", "")
            else:
                tail = tuple(format_real(v, digits) for v in step)
            yield (
                int(n),
                format_real(z.real, digits),
                format_real(z.imag, digits),
                format_real(arg, digits),
                tail[2],
                tail[0],
                tail[1],
            )


def _make_stepper(f: ParabolicMap):
    """One-step closure for the fast strategies; density-backed integral
    strategies fall back to certified quadrature per step (short runs only)."""
    strategy = f.strategy
    atoms = [(a.mass_real, a.location_real) for a in f.measure.atoms]

    if strategy in ("closed_alpha_right", "closed_alpha_left", "closed_log"):
        off = reduced_offset(f)
        if strategy == "closed_log":

            def step(z):
                return z + off - gmpy2.log(1 - z) / z

        else:
            alpha = f.measure.density.alpha
            a = gmpy2.mpfr(alpha.numerator) / alpha.denominator
            pi = gmpy2.const_pi()
            if strategy == "closed_alpha_right":
                c0 = pi * gmpy2.exp(gmpy2.mpc(gmpy2.mpfr(0), pi * a)) / gmpy2.sin(pi * a)
            else:
                c0 = gmpy2.mpc(-pi / gmpy2.sin(pi * a))

            def step(z):
                return z + off + c0 * gmpy2.exp(-a * gmpy2.log(z))

        return step

    if f.measure.density is None:
        if strategy == "reduced":
            off = reduced_offset(f)
            atom_terms = [(m * (1 + t * t), t) for m, t in atoms]

            def step(z):
                w = z + off
                for c, t in atom_terms:
                    w += c / (t - z)
                return w

        else:  # herglotz over atoms
            beta = f.beta_real

            def step(z):
                w = z + beta
                for m, t in atoms:
                    w += m * (1 + t * z) / (t - z)
                return w

        return step

    return lambda z: eval_map(f, z)


def _as_mpc(z) -> gmpy2.mpc:
    if isinstance(z, UHPoint):
        return z.z
    if isinstance(z, tuple) and len(z) == 2:
        zc = to_complex(*z)
    else:
        zc = gmpy2.mpc(to_real(z.real), to_real(z.imag))
    if not (gmpy2.is_finite(zc.real) and gmpy2.is_finite(zc.imag) and zc.imag > 0):
        raise InputError(f"starting point {zc} is not in the upper half-plane")
    return zc


def iterate_orbit(
    f: ParabolicMap,
    z0,
    n_steps: int,
    bits: int | None = None,
    dense_cap: int = DENSE_CAP,
    ratio: float = CHECKPOINT_RATIO,
) -> OrbitTrace:
    """Run n_steps applications of f from z0 (trace has n_steps+1 rows)."""
    with use_bits(bits or current_bits()):
        return _iterate_orbit(f, z0, n_steps, dense_cap, ratio)


def _iterate_orbit(f, z0, n_steps, dense_cap, ratio) -> OrbitTrace:
    z = _as_mpc(z0)
    step = _make_stepper(f)
    has_measure = not f.measure.is_zero
    idx = checkpoint_indices(n_steps, dense_cap, ratio)
    store = set(int(i) for i in idx)

    m = len(idx)
    exact_points = []
    exact_steps = []
    xs = np.empty(m)
    ys = np.empty(m)
    rho = np.full(m, np.nan)
    dxs = np.full(m, np.nan)
    dys = np.full(m, np.nan)

    prev_rho2 = None
    max_excess = gmpy2.mpfr("-inf")
    row = 0

    for n in range(n_steps):
        z_next = step(z)
        x2, y2 = z_next.real, z_next.imag
        if not y2 > 0:
            raise LeftHalfPlane(f"orbit left the upper half-plane at step {n + 1}")
        if has_measure and not y2 > z.imag:
            raise PrecisionExhaustion(
                f"imaginary part stalled at step {n + 1} (y = {y2}); "
                f"increase working precision above {current_bits()} bits"
            )
        dx = x2 - z.real
        dy = y2 - z.imag
        rho2 = (dx * dx + dy * dy) / (dx * dx + (z.imag + y2) ** 2)
        if prev_rho2 is not None:
            excess = rho2 - prev_rho2
            if excess > max_excess:
                max_excess = excess
        prev_rho2 = rho2
        if n in store:
            exact_points.append(z)
            r = gmpy2.sqrt(rho2)
            exact_steps.append((dx, dy, r))
            xs[row] = float(z.real)
            ys[row] = float(z.imag)
            rho[row] = float(r)
            dxs[row] = float(dx)
            dys[row] = float(dy)
            row += 1
        z = z_next

    exact_points.append(z)
    exact_steps.append(None)
    xs[row] = float(z.real)
    ys[row] = float(z.imag)

    args = np.arctan2(ys, xs)
    return OrbitTrace(
        map=f,
        z0=exact_points[0],
        n_steps=n_steps,
        bits=current_bits(),
        indices=idx,
        xs=xs,
        ys=ys,
        args=args,
        rho_step=rho,
        dx=dxs,
        dy=dys,
        exact_points=exact_points,
        exact_steps=exact_steps,
        final_z=z,
        max_rho2_excess=float(max_excess),
    )


# ---------------------------------------------------------------------------
# step-size diagnostics


@dataclass(frozen=True)
class DriftReport:
    """Estimate of b = lim (x_{n+1} - x_n)/y_n with supporting ratios."""

    b: float
    converged: bool
    window_medians: tuple[float, float]
    z_ratio_gap: float  # |z_{n+1}/z_n - 1| at the last stored step
    y_ratio_gap: float  # |y_{n+1}/y_n - 1| at the last stored step


def pommerenke_b(trace: OrbitTrace) -> DriftReport:
    """Median of dx/y over stored rows in the last half of the run, with a
    two-window agreement flag; b = 0 is the zero-step regime."""
    n = trace.n_steps
    if n < MIN_DRIFT_LENGTH:
        raise InputError(f"drift estimation needs at least {MIN_DRIFT_LENGTH} steps")
    idx = trace.indices
    with np.errstate(invalid="ignore"):
        vals = trace.dx / trace.ys
    w1 = (idx >= n // 4) & (idx < n // 2) & ~np.isnan(vals)
    w2 = (idx >= n // 2) & ~np.isnan(vals)
    if w2.sum() < 3 or w1.sum() < 3:
        raise InputError("orbit too short for drift estimation")
    m1 = float(np.median(vals[w1]))
    m2 = float(np.median(vals[w2]))
    tol = max(1e-3, 0.05 * max(abs(m1), abs(m2)))
    live = np.where(~np.isnan(trace.dx))[0]
    last = live[-1]
    z_gap = float(
        np.hypot(trace.dx[last], trace.dy[last]) / np.hypot(trace.xs[last], trace.ys[last])
    )
    y_gap = float(abs(trace.dy[last]) / trace.ys[last])
    return DriftReport(
        b=m2,
        converged=abs(m1 - m2) <= tol,
        window_medians=(m1, m2),
        z_ratio_gap=z_gap,
        y_ratio_gap=y_gap,
    )


@dataclass(frozen=True)
class StepClassification:
    """Zero/positive hyperbolic-step verdict with its evidence."""

    label: str  # "zero" | "positive" | "inconclusive"
    b_estimate: float
    b_converged: bool
    rho_tail_max: float
    rho_tail_min: float
    rho_final: float


def classify_trace(trace: OrbitTrace) -> StepClassification:
    """Classify an existing trace's hyperbolic step size.

    zero: step distances and the drift ratio both collapse (rho below 1e-3
    over the last decade of checkpoints and |b| <= 1e-3; the two are
    equivalent in the limit and back each other up). positive: step
    distances stabilize above 1e-2. Anything else is inconclusive, a valid
    outcome that longer runs sharpen.
    """
    drift = pommerenke_b(trace)
    tail = (trace.indices >= max(1, trace.n_steps // 10)) & ~np.isnan(trace.rho_step)
    if tail.sum() < 3:
        raise InputError("orbit too short for step classification")
    rho_tail = trace.rho_step[tail]
    rmax = float(rho_tail.max())
    rmin = float(rho_tail.min())
    if rmax < ZERO_STEP_RHO_MAX and abs(drift.b) <= ZERO_STEP_B_MAX:
        label = "zero"
    elif rmin >= POSITIVE_STEP_RHO_MIN and (rmax - rmin) <= POSITIVE_STEP_SPREAD * rmax:
        label = "positive"
    else:
        label = "inconclusive"
    return StepClassification(
        label=label,
        b_estimate=drift.b,
        b_converged=drift.converged,
        rho_tail_max=rmax,
        rho_tail_min=rmin,
        rho_final=float(rho_tail[-1]),
    )


def classify_step(f: ParabolicMap, z0, budget: int, **orbit_kwargs) -> StepClassification:
    """Run a fresh orbit of `budget` steps and classify its step size."""
    if budget < MIN_CLASSIFY_BUDGET:
        raise InputError(f"budget below minimum ({MIN_CLASSIFY_BUDGET})")
    return classify_trace(iterate_orbit(f, z0, budget, **orbit_kwargs))


# ---------------------------------------------------------------------------
# paired orbits


@dataclass
class PairTrace:
    indices: np.ndarray
    rho: np.ndarray  # rho(z_n, w_n) at stored indices
    max_rho2_excess: float
    final_z: gmpy2.mpc
    final_w: gmpy2.mpc


def two_orbit_rho(
    f: ParabolicMap,
    z0,
    w0,
    n_steps: int,
    dense_cap: int = DENSE_CAP,
    ratio: float = CHECKPOINT_RATIO,
) -> PairTrace:
    """Iterate two orbits in lockstep tracking their mutual distance.

    rho(z_n, w_n) is non-increasing for any holomorphic self-map; the
    maximum observed increase of its square is tracked at full precision at
    every step.
    """
    z = _as_mpc(z0)
    w = _as_mpc(w0)
    step = _make_stepper(f)
    idx = checkpoint_indices(n_steps, dense_cap, ratio)
    store = set(int(i) for i in idx)
    rho = np.empty(len(idx))

    def rho2_of(u, v):
        dx = u.real - v.real
        dy = u.imag - v.imag
        return (dx * dx + dy * dy) / (dx * dx + (u.imag + v.imag) ** 2)

    r2 = rho2_of(z, w)
    max_excess = gmpy2.mpfr("-inf")
    row = 0
    for n in range(n_steps + 1):
        if n in store:
            rho[row] = float(gmpy2.sqrt(r2))
            row += 1
        if n == n_steps:
            break
        z = step(z)
        w = step(w)
        if not (z.imag > 0 and w.imag > 0):
            raise LeftHalfPlane(f"orbit left the upper half-plane at step {n + 1}")
        r2_new = rho2_of(z, w)
        excess = r2_new - r2
        if excess > max_excess:
            max_excess = excess
        r2 = r2_new
    return PairTrace(
        indices=idx,
        rho=rho,
        max_rho2_excess=float(max_excess),
        final_z=z,
        final_w=w,
    )
