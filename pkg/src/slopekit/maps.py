"""Parabolic self-maps of the upper half-plane fixing infinity.

A map is determined by a real offset and a finite positive measure:

    f(z) = z + beta + int (1+tz)/(t-z) dm(t)

Every such f maps H into H and satisfies Im f(z) >= Im z, with equality only
for pure translations (empty measure). When int |t| dm < oo the same map has
the reduced form

    f(z) = z + beta~ + int (1+t^2)/(t-z) dm(t),    beta~ = beta - int t dm,

and for the three enumerated density families the reduced integral is a
closed form, which is what the fast orbit loops evaluate:

    alpha_right(a):  p(z) = pi e^(i pi a) / (sin(pi a) z^a)
    alpha_left(a):   p(z) = -pi / (sin(pi a) z^a)
    log_right:       p(z) = -log(1-z) / z

The evaluation strategy is part of the map's identity and is never rewritten
internally: a map declared "herglotz" is always evaluated through the
Herglotz integral even when a closed form exists, so independent routes stay
independent and can be compared against each other in tests.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

import gmpy2

from .errors import InputError, LeftHalfPlane, NumericError
from .halfplane import UHPoint
from .measures import (
    FiniteMeasure,
    alpha_left_measure,
    alpha_right_measure,
    atom_measure,
    cached_moments,
    first_moment_exact,
    herglotz_integral,
    log_right_measure,
    reduced_p,
)
from .precision import current_bits, exact_fraction, to_real

STRATEGIES = (
    "herglotz",
    "reduced",
    "closed_alpha_right",
    "closed_alpha_left",
    "closed_log",
)

_CLOSED_FAMILY = {
    "closed_alpha_right": "alpha_right",
    "closed_alpha_left": "alpha_left",
    "closed_log": "log_right",
}

# relative tolerance for deciding beta~ = 0 from quadrature-grade moments;
# exact inputs take an exact-rational path instead
DRIFT_EQUALITY_RTOL = gmpy2.mpfr("1e-20")


@dataclass(frozen=True)
class ParabolicMap:
    """Self-map of H: identity plus offset plus measure transform.

    beta stays an exact Fraction when the input was exact (decimal strings,
    atoms) so drift-sign decisions can be made without tolerance;
    factory-built balanced maps store a working-precision value.
    """

    beta: Fraction | gmpy2.mpfr
    measure: FiniteMeasure
    strategy: str

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise InputError(
                f"unknown strategy {self.strategy!r}; expected one of {STRATEGIES}"
            )
        if not isinstance(self.beta, Fraction) and not gmpy2.is_finite(self.beta):
            raise InputError("beta must be finite")
        fam = _CLOSED_FAMILY.get(self.strategy)
        if fam is not None:
            if self.measure.density is None or self.measure.density.family != fam:
                raise InputError(
                    f"strategy {self.strategy} requires a measure with density family {fam!r}"
                )
            if self.measure.atoms:
                raise InputError(f"strategy {self.strategy} requires an empty atom list")

    @property
    def beta_real(self) -> gmpy2.mpfr:
        return to_real(self.beta)


# ---------------------------------------------------------------------------
# closed reduced-integral forms


def closed_reduced_integral(density, z) -> gmpy2.mpc:
    """Closed form of int (1+t^2)/(t-z) dm(t) for an enumerated density."""
    zc = z.z if isinstance(z, UHPoint) else gmpy2.mpc(z)
    if density.family == "log_right":
        return -gmpy2.log(1 - zc) / zc
    a = to_real(density.alpha)
    pi = gmpy2.const_pi()
    za = gmpy2.exp(-a * gmpy2.log(zc))  # z^-a, principal branch
    if density.family == "alpha_right":
        phase = gmpy2.exp(gmpy2.mpc(gmpy2.mpfr(0), pi * a))
        return pi * phase * za / gmpy2.sin(pi * a)
    if density.family == "alpha_left":
        return -pi * za / gmpy2.sin(pi * a)
    raise InputError(f"no closed form for density family {density.family!r}")


def _atom_reduced_sum(measure: FiniteMeasure, zc: gmpy2.mpc) -> gmpy2.mpc:
    total = gmpy2.mpc(0)
    for atom in measure.atoms:
        t = atom.location_real
        total += atom.mass_real * (1 + t * t) / (t - zc)
    return total


@functools.lru_cache(maxsize=128)
def _reduced_offset(f: ParabolicMap, bits: int) -> gmpy2.mpfr:
    first = cached_moments(f.measure).first
    if first is None:
        raise NumericError("reduced form undefined: first absolute moment is infinite")
    return f.beta_real - first


def reduced_offset(f: ParabolicMap) -> gmpy2.mpfr:
    """beta~ = beta - int t dm, cached per precision."""
    return _reduced_offset(f, current_bits())


def eval_map(f: ParabolicMap, z) -> gmpy2.mpc:
    """One application of f, routed through the declared strategy."""
    zc = z.z if isinstance(z, UHPoint) else gmpy2.mpc(z)
    if not zc.imag > 0:
        raise InputError(f"point {zc} is not in the upper half-plane")
    if f.strategy == "herglotz":
        w = zc + f.beta_real + herglotz_integral(f.measure, zc)
    elif f.strategy == "reduced":
        w = zc + reduced_offset(f) + reduced_p(f.measure, zc)
    else:
        w = zc + reduced_offset(f) + closed_reduced_integral(f.measure.density, zc)
    if not w.imag > 0:
        raise LeftHalfPlane(f"map left the upper half-plane at z = {zc}")
    return w


# ---------------------------------------------------------------------------
# factories


def alpha_right_map(alpha, drift=0) -> ParabolicMap:
    """Balanced alpha_right map (beta~ = drift, default 0)."""
    m = alpha_right_measure(alpha)
    beta = cached_moments(m).first + to_real(drift)
    return ParabolicMap(beta=beta, measure=m, strategy="closed_alpha_right")


def alpha_left_map(alpha, drift=0) -> ParabolicMap:
    m = alpha_left_measure(alpha)
    beta = cached_moments(m).first + to_real(drift)
    return ParabolicMap(beta=beta, measure=m, strategy="closed_alpha_left")


def log_map(drift=0) -> ParabolicMap:
    m = log_right_measure()
    beta = cached_moments(m).first + to_real(drift)
    return ParabolicMap(beta=beta, measure=m, strategy="closed_log")


def translation_map(b) -> ParabolicMap:
    return ParabolicMap(beta=exact_fraction(b), measure=FiniteMeasure(), strategy="herglotz")


def atom_map(beta, pairs, strategy="reduced") -> ParabolicMap:
    return ParabolicMap(beta=exact_fraction(beta), measure=atom_measure(pairs), strategy=strategy)


# ---------------------------------------------------------------------------
# drift diagnostics and slope prediction


@dataclass(frozen=True)
class PredictedSlope:
    """Theorem-backed slope prediction.

    label is one of "zero_angle", "pi_angle", "half_pi", "unknown"; angle is
    the predicted value in [0, pi] or None for "unknown". "unknown" means the
    hypotheses decide nothing (balanced drift with infinite second moment,
    or indeterminate moments), not that the slope fails to exist.
    """

    label: str
    angle: gmpy2.mpfr | None
    drift_sign: int | None
    reason: str = ""


def _drift_sign(f: ParabolicMap) -> int | None:
    """Sign of beta - int t dm; exact when both sides are exact, None when
    the first moment does not exist."""
    exact_first = first_moment_exact(f.measure)
    if exact_first is not None and isinstance(f.beta, Fraction):
        d = f.beta - exact_first
        return (d > 0) - (d < 0)
    first = cached_moments(f.measure).first
    if first is None:
        return None
    d = f.beta_real - first
    scale = max(gmpy2.mpfr(1), abs(f.beta_real), abs(first))
    if abs(d) <= DRIFT_EQUALITY_RTOL * scale:
        return 0
    return 1 if d > 0 else -1


def predict_slope(f: ParabolicMap) -> PredictedSlope:
    """Slope of orbits of f from the drift sign and moment finiteness.

    Positive drift (beta above the first moment) pulls orbits toward angle
    0, negative drift toward pi; balanced drift with a finite second moment
    gives pi/2. Balanced drift with an infinite second moment is outside the
    hypotheses and reports unknown.
    """
    sign = _drift_sign(f)
    pi = gmpy2.const_pi()
    if sign is None:
        return PredictedSlope("unknown", None, None, "first absolute moment is infinite")
    if sign > 0:
        return PredictedSlope("zero_angle", gmpy2.mpfr(0), sign)
    if sign < 0:
        return PredictedSlope("pi_angle", pi, sign)
    if cached_moments(f.measure).second_finite:
        return PredictedSlope("half_pi", pi / 2, 0)
    return PredictedSlope(
        "unknown", None, 0, "balanced drift with infinite second moment is undecided"
    )


# ---------------------------------------------------------------------------
# angular translation limit


@dataclass(frozen=True)
class TranslationLimit:
    estimate: gmpy2.mpc
    converged: bool
    samples: tuple[gmpy2.mpc, ...]


def default_radii(levels: int = 21) -> tuple[gmpy2.mpfr, ...]:
    return tuple(gmpy2.mpfr(2) ** k for k in range(4, 4 + levels))


def translation_limit_estimate(f: ParabolicMap, theta=None, radii=None) -> TranslationLimit:
    """Extrapolate lim (f(z) - z) along the ray z = r e^(i theta).

    Two rounds of three-point (Aitken) extrapolation on a geometric radius
    schedule; declared convergent when the last three accelerated values
    agree to 1e-6 absolutely. When int |t| dm < oo the limit is
    beta - int t dm; a non-convergent run still returns its partial data
    with converged=False.
    """
    th = gmpy2.const_pi() / 2 if theta is None else to_real(theta)
    if not 0 < th < gmpy2.const_pi():
        raise InputError("ray angle must lie in (0, pi)")
    rs = default_radii() if radii is None else [to_real(r) for r in radii]
    if len(rs) < 8:
        raise InputError("need at least 8 radii")
    if any(b <= a for a, b in zip(rs, rs[1:])):
        raise InputError("radii must be strictly increasing")
    direction = gmpy2.mpc(gmpy2.cos(th), gmpy2.sin(th))
    samples = []
    for r in rs:
        z = r * direction
        samples.append(eval_map(f, z) - z)
    acc = list(samples)
    for _ in range(2):
        nxt = []
        for i in range(len(acc) - 2):
            d2 = acc[i + 2] - 2 * acc[i + 1] + acc[i]
            if d2 == 0:
                nxt.append(acc[i + 2])
            else:
                nxt.append(acc[i + 2] - (acc[i + 2] - acc[i + 1]) ** 2 / d2)
        if len(nxt) < 3:
            break
        acc = nxt
    tail = acc[-3:]
    spread = max(abs(u - v) for u in tail for v in tail)
    return TranslationLimit(
        estimate=tail[-1],
        converged=bool(spread <= gmpy2.mpfr("1e-6")),
        samples=tuple(samples),
    )
