"""Pole ladders with prescribed slope behaviour, and their certificates.

A construction is a finite ladder of simple poles

    p(z) = sum_k a_k / (gamma_k - z),    a_k > 0, gamma_k real,

equivalently the transform of the atomic measure putting mass
a_k/(1+gamma_k^2) at gamma_k. Two variants are built:

    full: pole locations alternate sign, orbits swing between angles near 0
          and near pi, and the slope fills out all of [0, pi];
    half: all poles on the positive axis, orbits alternate between runs at
          low angle and vertical climbs, and the slope fills [pi/2, pi].

Ladder feasibility is governed by four growth/domination conditions plus
finiteness of the associated measure. This module checks them exactly over
rationals. Sequences produced by `build_construction` carry their growth
law as metadata, which makes the infinite-tail parts of the conditions
certifiable by geometric-ratio bounds; raw sequences without metadata get a
three-valued verdict (pass / fail / uncertifiable) since finitely many terms
cannot witness an asymptotic statement.

The single-step geometry behind the slope argument is sampled by
`check_region_lemmas`: each region's inequality is evaluated on a clustered
grid with the truncated-tail error budgeted explicitly. Grid evidence is a
smoke test of the actual transform on the stated regions, not a proof.

The parametric families here follow fixed shapes

    full: a_k = S_a A^k (k!)^2,  |gamma_k| = S_g G^k (k!)^4
    half: a_k = S_a A^k (k!)^3,  gamma_k  = S_g G^k (k!)^6

and `search_constants` finds the lexicographically least integer pair
(A, G) making a ladder of given depth pass every condition with
certificates. Feasibility is monotone in G at fixed A (every G-dependent
bound loosens as G grows), so the inner search is a binary search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2

from .errors import InputError
from .maps import ParabolicMap
from .measures import FiniteMeasure, atom_measure
from .precision import to_real, use_bits

VARIANTS = ("full_interval", "half_interval")

# exponent of k! in a_k; pole locations use twice this exponent
_FACTORIAL_EXP = {"full_interval": 2, "half_interval": 3}

REGION_BITS = 512
REGION_GRID = 32
LANDING_HEIGHT_RATIO = Fraction(3, 2)  # upper band edge of the landing region


@dataclass(frozen=True)
class PoleTerm:
    coeff: Fraction
    pole: Fraction

    @property
    def mass(self) -> Fraction:
        return self.coeff / (1 + self.pole * self.pole)


@dataclass(frozen=True)
class FamilyMeta:
    """Growth law of a parametric ladder; enables tail certificates."""

    a_growth: Fraction
    gamma_growth: Fraction
    a_base: Fraction = Fraction(1)
    gamma_base: Fraction = Fraction(1)


@dataclass(frozen=True)
class ConstructionSpec:
    variant: str
    a: tuple[Fraction, ...]
    gamma: tuple[Fraction, ...]
    meta: FamilyMeta | None = None

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise InputError(f"unknown variant {self.variant!r}; expected one of {VARIANTS}")
        if len(self.a) != len(self.gamma):
            raise InputError("a and gamma must have the same length")
        if len(self.a) < 2:
            raise InputError("a ladder needs at least two rungs")
        if any(x <= 0 for x in self.a):
            raise InputError("all a_k must be > 0")
        if any(g == 0 for g in self.gamma):
            raise InputError("pole locations must be nonzero")
        if self.meta is not None:
            want = _family_sequences(self.variant, len(self.a), self.meta)
            if (self.a, self.gamma) != want:
                raise InputError("sequences do not match their declared growth law")

    @property
    def depth(self) -> int:
        return len(self.a)

    @property
    def poles(self) -> tuple[PoleTerm, ...]:
        return tuple(PoleTerm(c, g) for c, g in zip(self.a, self.gamma))


def _family_sequences(variant: str, depth: int, meta: FamilyMeta):
    s = _FACTORIAL_EXP[variant]
    a = []
    gamma = []
    for k in range(1, depth + 1):
        fact = Fraction(math.factorial(k))
        a.append(meta.a_base * meta.a_growth**k * fact**s)
        g = meta.gamma_base * meta.gamma_growth**k * fact ** (2 * s)
        if variant == "full_interval" and k % 2 == 1:
            g = -g
        gamma.append(g)
    return tuple(a), tuple(gamma)


def build_construction(
    variant: str,
    depth: int,
    a_growth,
    gamma_growth,
    a_base=1,
    gamma_base=1,
) -> ConstructionSpec:
    """Parametric ladder with the fixed factorial-geometric shape.

    All generator constants must be > 0 and the depth at least 2 (depth-1
    conditions have empty sums and are vacuous).
    """
    if variant not in VARIANTS:
        raise InputError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    if not (Fraction(a_growth) > 0 and Fraction(gamma_growth) > 0
            and Fraction(a_base) > 0 and Fraction(gamma_base) > 0):
        raise InputError("generator constants must be > 0")
    meta = FamilyMeta(
        a_growth=Fraction(a_growth),
        gamma_growth=Fraction(gamma_growth),
        a_base=Fraction(a_base),
        gamma_base=Fraction(gamma_base),
    )
    a, gamma = _family_sequences(variant, depth, meta)
    return ConstructionSpec(variant=variant, a=a, gamma=gamma, meta=meta)


def factorial_ladder(variant: str, depth: int, a_base=1, gamma_base=1) -> ConstructionSpec:
    """Bare factorial ladder (no geometric boost); fails domination at k=2
    for every choice of base constants, since both sides of that bound scale
    with a_base. A large gamma_base clears the partial-sum checks, isolating
    the domination failure."""
    return build_construction(variant, depth, 1, 1, a_base=a_base, gamma_base=gamma_base)


def construction_map(spec: ConstructionSpec) -> ParabolicMap:
    """The self-map z + p(z) of the ladder, as an exactly balanced atom map."""
    pairs = [(t.pole, t.mass) for t in spec.poles]
    measure = atom_measure(pairs)
    beta = sum((t.mass * t.pole for t in spec.poles), Fraction(0))
    return ParabolicMap(beta=beta, measure=measure, strategy="reduced")


# ---------------------------------------------------------------------------
# condition checks


@dataclass(frozen=True)
class ConditionStatus:
    """ok True/False is a certified verdict; None means the finite data
    cannot decide (asymptotic condition or unbounded tail, no growth law)."""

    name: str
    ok: bool | None
    witness_k: int | None
    detail: str


@dataclass(frozen=True)
class ConditionReport:
    variant: str
    depth: int
    statuses: tuple[ConditionStatus, ...]

    @property
    def certified(self) -> bool:
        return all(s.ok is True for s in self.statuses)

    @property
    def failures(self) -> tuple[tuple[str, int], ...]:
        return tuple((s.name, s.witness_k) for s in self.statuses if s.ok is False)

    @property
    def uncertifiable(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.statuses if s.ok is None)


def _tail_ratio_bound(spec: ConstructionSpec, term_at, ratio_at) -> Fraction | None:
    """Bound sum_{l > depth} term(l): ratio_at(k) = term(k)/term(k-1) must be
    < 1 and non-increasing from depth+1 on, giving a geometric majorant.
    Returns None when the ratio does not contract (no certificate)."""
    K = spec.depth
    r = ratio_at(K + 1)
    if not r < 1:
        return None
    first = term_at(K) * r  # term at K+1
    return first / (1 - r)


def _meta_tail_first_moment(spec: ConstructionSpec) -> Fraction | None:
    """Certified bound for sum_{l > depth} a_l/|gamma_l|, or None without meta."""
    if spec.meta is None:
        return None
    m = spec.meta
    s = _FACTORIAL_EXP[spec.variant]

    def term(k):
        return (m.a_base / m.gamma_base) * (m.a_growth / m.gamma_growth) ** k / Fraction(
            math.factorial(k)
        ) ** s

    def ratio(k):
        return (m.a_growth / m.gamma_growth) / Fraction(k) ** s

    return _tail_ratio_bound(spec, term, ratio)


def _check_gamma_growth(spec: ConstructionSpec) -> ConditionStatus:
    name = "gamma_growth"
    for k, g in enumerate(spec.gamma, start=1):
        if spec.variant == "full_interval":
            want_neg = k % 2 == 1
            if (g < 0) != want_neg:
                return ConditionStatus(name, False, k, f"pole {k} has the wrong sign")
        elif g < 0:
            return ConditionStatus(name, False, k, f"pole {k} must be positive")
    if abs(spec.gamma[0]) < 1:
        return ConditionStatus(name, False, 1, "|gamma_1| must be >= 1")
    for k in range(1, spec.depth):
        if 4 * abs(spec.gamma[k - 1]) > abs(spec.gamma[k]):
            return ConditionStatus(name, False, k, f"|gamma_{k+1}| < 4 |gamma_{k}|")
    if spec.meta is not None:
        # ratio beyond the data is gamma_growth * (k+1)^(2s) >= 4 whenever
        # gamma_growth >= 1; growth law guarantees it
        if spec.meta.gamma_growth < 1:
            return ConditionStatus(name, None, None, "growth ratio below 1 beyond the data")
        return ConditionStatus(name, True, None, "sign pattern and 4x growth hold at all depths")
    return ConditionStatus(name, True, None, "holds on the given rungs")


def _head_bounds(spec: ConstructionSpec, k: int):
    """(partial_sums head bound, dominance head bound) at rung k (1-based)."""
    a_k = spec.a[k - 1]
    g_k = abs(spec.gamma[k - 1])
    if spec.variant == "full_interval":
        return g_k / (4 * k), a_k / (80 * k)
    return g_k / (24 * k), a_k / (64 * k * k)


def _tail_bounds(spec: ConstructionSpec, k: int):
    """(partial_sums tail bound, dominance tail bound) at rung k."""
    a_k = spec.a[k - 1]
    g_k = abs(spec.gamma[k - 1])
    if spec.variant == "full_interval":
        return g_k / (8 * k), a_k / (160 * k * g_k)
    return g_k / (24 * k), a_k / (100 * k * k * g_k)


def _check_sum_conditions(spec: ConstructionSpec):
    """partial_sums and dominance.

    Each condition pairs a finite inequality with an infinite-sum bound. The
    finite halves are the per-rung verdicts and are scanned first, in exact
    arithmetic. The infinite halves come second: a failure there is only
    sound when the visible rungs alone exceed the bound; when the visible
    part passes but the geometric certificate cannot squeeze the full sum
    under the bound, the verdict stays open rather than claiming a failure
    the numbers do not prove."""
    tail_cert = _meta_tail_first_moment(spec)
    K = spec.depth
    prefix = [Fraction(0)]  # prefix[k] = sum_{l <= k} a_l
    for a in spec.a:
        prefix.append(prefix[-1] + a)

    def visible_tail(k):
        # sum_{l > k} a_l/|gamma_l| over the rungs we can see
        return sum((spec.a[l] / abs(spec.gamma[l]) for l in range(k, K)), Fraction(0))

    out = []
    for name in ("partial_sums", "dominance"):
        status = None
        for k in range(1, K + 1):
            ps_head, dom_head = _head_bounds(spec, k)
            if name == "partial_sums":
                lhs, bound, what = prefix[k], ps_head, f"sum of a up to rung {k}"
            else:
                lhs, bound, what = prefix[k - 1], dom_head, f"sum of a below rung {k}"
            if lhs > bound:
                status = ConditionStatus(name, False, k, f"{what} is {lhs} > {bound}")
                break
        open_status = None
        if status is None:
            for k in range(1, K + 1):
                ps_tail, dom_tail = _tail_bounds(spec, k)
                bound = ps_tail if name == "partial_sums" else dom_tail
                seen = visible_tail(k)
                if seen > bound:
                    status = ConditionStatus(
                        name, False, k,
                        f"a/|gamma| tail from rung {k + 1} exceeds {bound} on the visible rungs alone",
                    )
                    break
                if tail_cert is None:
                    open_status = open_status or ConditionStatus(
                        name, None, k,
                        "visible rungs pass; tail beyond the data is unbounded without a growth law",
                    )
                elif seen + tail_cert > bound:
                    open_status = open_status or ConditionStatus(
                        name, None, k,
                        "tail certificate is too weak to settle the infinite-sum bound",
                    )
        out.append(
            status
            or open_status
            or ConditionStatus(name, True, None, "holds with certified tails at every rung")
        )
    return out


def _check_steepness(spec: ConstructionSpec) -> ConditionStatus:
    name = "steepness"
    ratios = [g * g / a for a, g in zip(spec.a, spec.gamma)]
    if spec.meta is None:
        trend = "increasing" if all(x < y for x, y in zip(ratios, ratios[1:])) else "not monotone"
        return ConditionStatus(
            name, None, None, f"gamma^2/a is {trend} on the data; divergence needs a growth law"
        )
    m = spec.meta
    s = _FACTORIAL_EXP[spec.variant]
    # consecutive ratio of gamma_k^2/a_k is (G^2/A) (k+1)^(3s), minimal at k=1
    min_ratio = ((m.gamma_growth**2) / m.a_growth) * Fraction(2) ** (3 * s)
    if min_ratio > 1:
        return ConditionStatus(name, True, None, f"gamma^2/a grows by >= {float(min_ratio):.3g} per rung")
    return ConditionStatus(name, False, 1, "gamma^2/a is not eventually increasing")


def _check_summability(spec: ConstructionSpec) -> ConditionStatus:
    """Total mass and first absolute moment of the pole measure are finite."""
    name = "summability"
    if spec.meta is None:
        return ConditionStatus(
            name, None, None, "finite rungs always sum; the tail needs a growth law"
        )
    tail = _meta_tail_first_moment(spec)
    if tail is None:
        return ConditionStatus(
            name, None, spec.depth, "uncertifiable: a/|gamma| term ratio does not contract"
        )
    seen = sum((a / abs(g) for a, g in zip(spec.a, spec.gamma)), Fraction(0))
    return ConditionStatus(
        name, True, None, f"first absolute moment bounded by {float(seen + tail):.6g}"
    )


def validate_conditions(spec: ConstructionSpec) -> ConditionReport:
    """Exact three-valued check of the ladder's feasibility conditions."""
    statuses = [_check_gamma_growth(spec)]
    statuses.extend(_check_sum_conditions(spec))
    statuses.append(_check_steepness(spec))
    statuses.append(_check_summability(spec))
    return ConditionReport(variant=spec.variant, depth=spec.depth, statuses=tuple(statuses))


# ---------------------------------------------------------------------------
# constant search


@dataclass(frozen=True)
class SearchResult:
    variant: str
    depth: int
    feasible: bool
    a_growth: int | None
    gamma_growth: int | None
    report: ConditionReport | None
    binding: tuple[str, int | None] | None = None  # failure no cap increase fixed


def search_constants(
    variant: str,
    depth: int,
    a_cap: int = 256,
    gamma_cap: int = 1 << 21,
) -> SearchResult:
    """Least (A, G) in lexicographic order with a fully certified ladder.

    G-dependent bounds all loosen as G grows, so for fixed A feasibility is
    monotone in G and binary search applies; A is scanned upward and the
    first A admitting any feasible G wins. On an exhausted grid the binding
    condition is reported from the best corner: a dominance failure there is
    structural (its head part is G-free and scale-free), anything else is
    just the cap.
    """

    def ok(A: int, G: int) -> bool:
        return validate_conditions(build_construction(variant, depth, A, G)).certified

    best_failures = None
    for A in range(1, a_cap + 1):
        if not ok(A, gamma_cap):
            rep = validate_conditions(build_construction(variant, depth, A, gamma_cap))
            best_failures = rep.failures or best_failures
            continue
        lo, hi = 1, gamma_cap  # hi feasible, lo possibly not
        if ok(A, lo):
            hi = lo
        while lo < hi:
            mid = (lo + hi) // 2
            if ok(A, mid):
                hi = mid
            else:
                lo = mid + 1
        report = validate_conditions(build_construction(variant, depth, A, hi))
        return SearchResult(variant, depth, True, A, hi, report)
    binding = None
    if best_failures:
        binding = next((f for f in best_failures if f[0] == "dominance"), best_failures[0])
    return SearchResult(variant, depth, False, None, None, None, binding=binding)


# ---------------------------------------------------------------------------
# region geometry checks


@dataclass(frozen=True)
class RegionCheck:
    variant: str
    k: int
    region: str
    inequality: str
    nodes: int
    worst_margin: float  # min over nodes of signed relative slack; >= 0 passes
    worst_point: tuple[float, float]  # (x, y) attaining the minimum (witness if < 0)
    ok: bool


@dataclass(frozen=True)
class RegionReport:
    checks: tuple[RegionCheck, ...]
    tail_certified: bool

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def violations(self) -> tuple[RegionCheck, ...]:
        return tuple(c for c in self.checks if not c.ok)


def _cluster_nodes(lo, hi, n):
    """n nodes on [lo, hi]: endpoints, midpoint, and geometrically clustered
    offsets from both ends (sharp behaviour sits at region edges)."""
    lo = to_real(lo)
    hi = to_real(hi)
    span = hi - lo
    if span <= 0:
        return [lo]
    pts = {lo, hi, lo + span / 2}
    per_side = (n - 3 + 1) // 2
    for j in range(1, per_side + 1):
        off = span / (2 ** (j + 1))
        pts.add(lo + off)
        pts.add(hi - off)
    return sorted(pts)


def _p_full(poles, z):
    total = gmpy2.mpc(0)
    for c, g in poles:
        total += c / (g - z)
    return total


def check_region_lemmas(
    spec: ConstructionSpec,
    ks=(1, 2, 3),
    grid: int = REGION_GRID,
    bits: int = REGION_BITS,
    landing_ratio: Fraction = LANDING_HEIGHT_RATIO,
) -> RegionReport:
    """Sample the single-step region inequalities on clustered grids.

    For rung k with pole magnitude g = |gamma_k| the regions are (half
    variant; the full variant mirrors x -> -x at negative poles):

        corridor: the strip below the pole where the horizontal push is
                  small against g;
        escape:   the band beside the pole where its own term dominates;
        elevator (half only): the chimney above the pole, split into a core
                  with |p| small and walls that push back toward the center;
        landing:  the band above the corridor where the push turns strictly
                  toward the pole side and the vertical component stays tame.

    The transform is evaluated with every rung of the ladder; the unseen
    tail beyond the data contributes at most 2x its certified first-moment
    bound on these regions (|gamma_l - z| >= |gamma_l|/2 is asserted), and
    4x that bound is budgeted as margin on every inequality.
    """
    gate = validate_conditions(spec)
    if gate.failures:
        name, k_bad = gate.failures[0]
        raise InputError(
            f"spec fails its feasibility conditions ({name} at rung {k_bad}); "
            "lemma regions are only meaningful for validated ladders"
        )
    checks = []
    tail = _meta_tail_first_moment(spec) if spec.meta is not None else None
    tail_certified = tail is not None
    with use_bits(bits):
        poles = [(to_real(t.coeff), to_real(t.pole)) for t in spec.poles]
        margin = to_real(4 * tail) if tail is not None else gmpy2.mpfr(0)
        C = to_real(landing_ratio)
        for k in ks:
            if k > spec.depth:
                raise InputError(f"rung {k} beyond ladder depth {spec.depth}")
            a = to_real(spec.a[k - 1])
            gk = spec.gamma[k - 1]
            s = -1 if gk < 0 else 1
            g = to_real(abs(gk))
            ck, pk = poles[k - 1]

            def single_term(z):
                return ck / (pk - z)

            # guard the tail bound's geometry: grid points stay well inside
            # the first unseen pole's half-radius
            if spec.meta is not None:
                next_pole = abs(
                    spec.meta.gamma_base
                    * spec.meta.gamma_growth ** (spec.depth + 1)
                    * Fraction(math.factorial(spec.depth + 1)) ** (2 * _FACTORIAL_EXP[spec.variant])
                )
                reach = (2 + k) * abs(spec.gamma[k - 1])
                if not reach * 2 <= next_pole:
                    raise InputError(f"rung {k} regions reach past the tail-bound radius")

            def run(region, ineq, xs, ys, predicate):
                worst = None
                worst_at = None
                count = 0
                for xi in xs:
                    for y in ys:
                        z = gmpy2.mpc(s * xi, y)  # mirrored frame for full variant
                        m = predicate(z, xi, y)
                        count += 1
                        if worst is None or m < worst:
                            worst = m
                            worst_at = z
                checks.append(
                    RegionCheck(
                        variant=spec.variant,
                        k=k,
                        region=region,
                        inequality=ineq,
                        nodes=count,
                        worst_margin=float(worst),
                        worst_point=(float(worst_at.real), float(worst_at.imag)),
                        ok=worst >= 0,
                    )
                )

            def re_p(z):
                return s * _p_full(poles, z).real  # mirrored real part

            nx = grid
            if spec.variant == "full_interval":
                xs = _cluster_nodes(-2 * g, 2 * g, nx)
                ys = _cluster_nodes(1, g / k, nx)
                run(
                    "corridor",
                    "|Re p| <= g/2",
                    xs,
                    ys,
                    lambda z, xi, y: (g / 2 - abs(_p_full(poles, z).real) - margin) / (g / 2),
                )
                xs = _cluster_nodes(-2 * g, g / 2, nx)
                ys = _cluster_nodes(g / k, C * g / k, nx)
                bound = a / (40 * g)
                run(
                    "landing",
                    "Re p >= a/(40g) toward the pole",
                    xs,
                    ys,
                    lambda z, xi, y: (re_p(z) - margin - bound) / bound,
                )
                run(
                    "landing",
                    "Im p <= 5 a y / g^2",
                    xs,
                    ys,
                    lambda z, xi, y: (5 * a * y / (g * g) - _p_full(poles, z).imag - margin)
                    / (5 * a * y / (g * g)),
                )
                xs = _cluster_nodes(-2 * g, -3 * g / 2, nx)
                ys = _cluster_nodes(1, g / k, nx)
                bound = a / (20 * g)
                run(
                    "escape",
                    "own-pole push >= a/(20g)",
                    xs,
                    ys,
                    lambda z, xi, y: (s * single_term(z).real - bound) / bound,
                )
            else:
                xs = _cluster_nodes(0, 3 * g / 2, nx)
                ys = _cluster_nodes(1, g / k, nx)
                run(
                    "corridor",
                    "|Re p| <= g/4",
                    xs,
                    ys,
                    lambda z, xi, y: (g / 4 - abs(_p_full(poles, z).real) - margin) / (g / 4),
                )
                xs = _cluster_nodes(5 * g / 4, 3 * g / 2, nx)
                bound = a / (5 * g)
                run(
                    "escape",
                    "own-pole push >= a/(5g)",
                    xs,
                    ys,
                    lambda z, xi, y: (abs(single_term(z).real) - bound) / bound,
                )
                xs = _cluster_nodes(3 * g / 4, 5 * g / 4, nx)
                ys = _cluster_nodes(1, k * g, nx)
                run(
                    "elevator_core",
                    "|p| <= g/4",
                    xs,
                    ys,
                    lambda z, xi, y: (g / 4 - abs(_p_full(poles, z)) - margin) / (g / 4),
                )
                ys = _cluster_nodes(1, k * g, nx)
                for side, wall_lo, wall_hi in (
                    ("left", g / 2, 3 * g / 4),
                    ("right", 5 * g / 4, 3 * g / 2),
                ):
                    xs = _cluster_nodes(wall_lo, wall_hi, nx)
                    sign = 1 if side == "left" else -1  # wanted sign of Re p
                    run(
                        "elevator_walls",
                        f"{side} wall pushes toward the center",
                        xs,
                        ys,
                        lambda z, xi, y, sg=sign: (sg * _p_full(poles, z).real - margin)
                        / (a / (5 * k * k * g)),
                    )
                    # constant 5, not 4: at the inner-top corner the pull is
                    # 4a/((1+16k^2)g) and (1+16k^2)/(4k^2) peaks at 4.25
                    bound = a / (5 * k * k * g)
                    run(
                        "elevator_walls",
                        f"{side} wall own-pole push >= a/(5k^2 g)",
                        xs,
                        ys,
                        lambda z, xi, y: (abs(single_term(z).real) - bound) / bound,
                    )
                    run(
                        "elevator_walls",
                        f"{side} wall keeps |x + Re p - g| <= g/2",
                        xs,
                        ys,
                        lambda z, xi, y: (
                            g / 2 - abs(xi + _p_full(poles, z).real - g) - margin
                        )
                        / (g / 2),
                    )
                xs = _cluster_nodes(0, g / 2, nx)
                ys = _cluster_nodes(g / k, C * g / k, nx)
                bound = a / (8 * g)
                run(
                    "landing",
                    "Re p >= a/(8g)",
                    xs,
                    ys,
                    lambda z, xi, y: (_p_full(poles, z).real - margin - bound) / bound,
                )
                run(
                    "landing",
                    "Im p <= 5 a y / g^2",
                    xs,
                    ys,
                    lambda z, xi, y: (5 * a * y / (g * g) - _p_full(poles, z).imag - margin)
                    / (5 * a * y / (g * g)),
                )
    return RegionReport(checks=tuple(checks), tail_certified=tail_certified)
