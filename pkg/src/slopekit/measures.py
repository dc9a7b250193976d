"""Finite positive measures on the real line and their integral transforms.

A measure is a finite list of point masses plus at most one density from a
closed enumeration of three families:

    alpha_right(a):  d/dm = 1/((1+t^2) t^a)    on (0, +oo),  0 < a < 1
    alpha_left(a):   d/dm = 1/((1+t^2)|t|^a)   on (-oo, 0),  0 < a < 1
    log_right:       d/dm = 1/((1+t^2) t)      on (1, +oo)

The module computes moments (total mass, first absolute/signed moment,
second moment with divergence detection) and the two transforms

    herglotz(m, z) = int (1+tz)/(t-z) dm(t)
    reduced_p(m, z) = int (1+t^2)/(t-z) dm(t)   (defined when int|t|dm < oo)

Atoms are summed exactly at working precision. Density integrals run through
mpmath tanh-sinh quadrature after endpoint-exact power substitutions: the
head of an alpha family uses t = s^(1/(1-a)), which removes the t^-a
endpoint singularity identically, and every tail uses t = s^(-1/p) where p+1
is the integrand's algebraic decay exponent, which maps the tail onto a
finite interval with the singular point at the origin of the new variable
(where quadrature nodes keep full relative precision). Certified relative
error defaults to 1e-10; a result whose reported error cannot be certified
raises QuadratureIndeterminate rather than returning a number.

mpmath's global context is not thread-safe; run concurrent quadrature in
separate processes (the CLI's --jobs does).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

import gmpy2

from .errors import InputError, NumericError, QuadratureIndeterminate
from .precision import (
    bits_to_digits,
    complex_to_mpc,
    current_bits,
    exact_fraction,
    mpc_to_complex,
    mpf_to_real,
    to_real,
)

DENSITY_FAMILIES = ("alpha_right", "alpha_left", "log_right")

MOMENT_RTOL = 1e-10

# dyadic divergence detector (design choice, recorded in config):
# a moment integral is flagged +oo when 8 consecutive dyadic blocks
# int_{2^j}^{2^{j+1}} fail to decay by at least the factor below
DYADIC_DECAY_THRESHOLD = 0.95
DYADIC_FLAG_BLOCKS = 8
DYADIC_MAX_BLOCKS = 160


@dataclass(frozen=True)
class Atom:
    location: Fraction
    mass: Fraction

    def __post_init__(self):
        if self.mass <= 0:
            raise InputError(f"atom mass must be > 0, got {self.mass}")

    @property
    def location_real(self) -> gmpy2.mpfr:
        return to_real(self.location)

    @property
    def mass_real(self) -> gmpy2.mpfr:
        return to_real(self.mass)


@dataclass(frozen=True)
class DensityFamily:
    """One member of the closed density enumeration."""

    family: str
    alpha: Fraction | None = None

    def __post_init__(self):
        if self.family not in DENSITY_FAMILIES:
            raise InputError(
                f"unknown density family {self.family!r}; expected one of {DENSITY_FAMILIES}"
            )
        if self.family == "log_right":
            if self.alpha is not None:
                raise InputError("log_right takes no alpha parameter")
        else:
            if self.alpha is None:
                raise InputError(f"{self.family} requires alpha in (0,1)")
            if not (0 < self.alpha < 1):
                raise InputError(f"alpha must lie strictly in (0,1), got {self.alpha}")


@dataclass(frozen=True)
class FiniteMeasure:
    """Finite positive measure: atoms plus an optional named density."""

    atoms: tuple[Atom, ...] = ()
    density: DensityFamily | None = None

    def __post_init__(self):
        locs = [a.location for a in self.atoms]
        if len(set(locs)) != len(locs):
            raise InputError("atom locations must be pairwise distinct")

    @property
    def is_zero(self) -> bool:
        return not self.atoms and self.density is None


def atom_measure(pairs) -> FiniteMeasure:
    """Measure from (location, mass) pairs; values go through exact rationals."""
    atoms = tuple(Atom(exact_fraction(t), exact_fraction(m)) for t, m in pairs)
    return FiniteMeasure(atoms=atoms)


def alpha_right_measure(alpha) -> FiniteMeasure:
    return FiniteMeasure(density=DensityFamily("alpha_right", exact_fraction(alpha)))


def alpha_left_measure(alpha) -> FiniteMeasure:
    return FiniteMeasure(density=DensityFamily("alpha_left", exact_fraction(alpha)))


def log_right_measure() -> FiniteMeasure:
    return FiniteMeasure(density=DensityFamily("log_right"))


@dataclass(frozen=True)
class MomentReport:
    """Moments of a measure. Infinite values are gmpy2 +inf; `first` is None
    exactly when the first absolute moment is infinite."""

    total_mass: gmpy2.mpfr
    abs_first: gmpy2.mpfr
    first: gmpy2.mpfr | None
    second: gmpy2.mpfr

    @property
    def abs_first_finite(self) -> bool:
        return gmpy2.is_finite(self.abs_first)

    @property
    def second_finite(self) -> bool:
        return gmpy2.is_finite(self.second)


# ---------------------------------------------------------------------------
# quadrature engine


def _workdps(extra: int = 25) -> int:
    return bits_to_digits(current_bits()) + extra


class _DensityIntegrand:
    """One-sided density integral data.

    Every family is integrated over u in (lo, +oo) against
    u^-head_exp * smooth(u); `signed_t(u)` recovers the measure's own
    coordinate (u for right-sided families, -u for alpha_left).
    """

    def __init__(self, density: DensityFamily):
        import mpmath as mp

        self.family = density.family
        if density.alpha is not None:
            self.alpha = mp.mpf(density.alpha.numerator) / density.alpha.denominator
        else:
            self.alpha = None
        self.mirror = self.family == "alpha_left"
        self.lo = mp.mpf(1) if self.family == "log_right" else mp.mpf(0)
        # weight in the u coordinate and its algebraic data
        if self.family == "log_right":
            self.head_exp = None  # no endpoint singularity at u = 1
            self.weight_decay = 3
        else:
            self.head_exp = self.alpha
            self.weight_decay = 2 + self.alpha

    def signed_t(self, u):
        return -u if self.mirror else u

    def weight(self, u):
        if self.family == "log_right":
            return 1 / ((1 + u * u) * u)
        return 1 / ((1 + u * u) * u**self.alpha)


def _quad_checked(f, points, rtol, maxdegree=8):
    """mp.quad with certified relative error; escalates degree once."""
    import mpmath as mp

    for degree in (maxdegree, maxdegree + 3):
        val, err = mp.quad(f, points, error=True, maxdegree=degree)
        scale = abs(val) + mp.mpf(10) ** (-mp.mp.dps)
        if err <= rtol * scale:
            return val
    raise QuadratureIndeterminate(
        f"quadrature error {mp.nstr(err, 5)} above tolerance {rtol} * {mp.nstr(scale, 5)}"
    )


def _head_integral(di: _DensityIntegrand, kernel_u, T, rtol, splits=()):
    """int_lo^T kernel_u(u) * weight(u) du with the endpoint singularity
    removed by t = s^(1/(1-a)) for the alpha families."""
    import mpmath as mp

    if di.head_exp is None:
        pts = sorted({di.lo, T, *[s for s in splits if di.lo < s < T]})
        return _quad_checked(lambda u: kernel_u(u) * di.weight(u), pts, rtol)

    a = di.head_exp
    one_m_a = 1 - a

    def smooth_part(u):
        # weight(u) = u^-a * (1/(1+u^2)); the u^-a factor is absorbed
        return kernel_u(u) / (1 + u * u)

    def g(s):
        u = s ** (1 / one_m_a)
        return smooth_part(u) / one_m_a

    S = T**one_m_a
    pts = sorted({mp.mpf(0), S, *[s**one_m_a for s in splits if 0 < s < T]})
    return _quad_checked(g, pts, rtol)


def _tail_integral(di: _DensityIntegrand, kernel_u, T, kernel_growth, rtol):
    """int_T^oo kernel_u(u) * weight(u) du via t = s^(-1/p).

    kernel_growth is the power of u by which the kernel grows at infinity
    (0 for moments of order matching the weight, 1 for the reduced kernel,
    and so on); p = weight_decay - kernel_growth - 1 must be positive.
    """
    import mpmath as mp

    p = di.weight_decay - kernel_growth - 1
    if not p > 0:
        raise NumericError("tail integral does not converge")

    def g(s):
        u = s ** (-1 / p)
        return (u ** (p + 1)) * kernel_u(u) * di.weight(u) / p

    return _quad_checked(g, [mp.mpf(0), T ** mp.mpf(-p)], rtol)


def _density_integral(di: _DensityIntegrand, kernel_u, kernel_growth, rtol, splits=()):
    import mpmath as mp

    T = max(mp.mpf(2), 2 * di.lo, *[2 * abs(s) for s in splits] or [mp.mpf(0)])
    head = _head_integral(di, kernel_u, T, rtol, splits=splits)
    tail = _tail_integral(di, kernel_u, T, kernel_growth, rtol)
    return head + tail


def _dyadic_diverges(di: _DensityIntegrand, kernel_u, start=0):
    """True when dyadic blocks of the integrand stop decaying geometrically.

    Returns (diverges, certified_finite); raises QuadratureIndeterminate when
    the block cap is hit without a verdict (never a silent number).
    """
    import mpmath as mp

    prev = None
    bad_run = 0
    good_run = 0
    j = start
    while j < start + DYADIC_MAX_BLOCKS:
        block = mp.quad(lambda u: kernel_u(u) * di.weight(u), [mp.mpf(2) ** j, mp.mpf(2) ** (j + 1)])
        if prev is not None and prev > 0:
            ratio = block / prev
            if ratio >= DYADIC_DECAY_THRESHOLD:
                bad_run += 1
                good_run = 0
                if bad_run >= DYADIC_FLAG_BLOCKS:
                    return True
            else:
                good_run += 1
                bad_run = 0
                if good_run >= DYADIC_FLAG_BLOCKS:
                    return False
        prev = block
        j += 1
    raise QuadratureIndeterminate("dyadic divergence test did not reach a verdict")


# ---------------------------------------------------------------------------
# moments


def _atom_moment_sums(m: FiniteMeasure):
    tot = gmpy2.mpfr(0)
    ab1 = gmpy2.mpfr(0)
    fst = gmpy2.mpfr(0)
    snd = gmpy2.mpfr(0)
    for a in m.atoms:
        t = a.location_real
        w = a.mass_real
        tot += w
        ab1 += abs(t) * w
        fst += t * w
        snd += t * t * w
    return tot, ab1, fst, snd


def moments(m: FiniteMeasure, rtol: float = MOMENT_RTOL) -> MomentReport:
    """Moment report; atom sums exact, densities by certified quadrature.

    Second moments go through the dyadic divergence detector first; the three
    enumerated families all diverge there and come back +oo.
    """
    import mpmath as mp

    tot, ab1, fst, snd = _atom_moment_sums(m)
    if m.density is not None:
        with mp.workdps(_workdps()):
            di = _DensityIntegrand(m.density)
            d_tot = _density_integral(di, lambda u: 1, 0, rtol)
            d_ab1 = _density_integral(di, lambda u: u, 1, rtol)
            tot += mpf_to_real(d_tot)
            ab1 += mpf_to_real(d_ab1)
            fst += -mpf_to_real(d_ab1) if di.mirror else mpf_to_real(d_ab1)
            if _dyadic_diverges(di, lambda u: u * u):
                snd = gmpy2.inf(1)
            else:
                snd += mpf_to_real(_density_integral(di, lambda u: u * u, 2, rtol))
    first = fst if gmpy2.is_finite(ab1) else None
    return MomentReport(total_mass=tot, abs_first=ab1, first=first, second=snd)


@functools.lru_cache(maxsize=128)
def _cached_moments(m: FiniteMeasure, bits: int) -> MomentReport:
    return moments(m)


def cached_moments(m: FiniteMeasure) -> MomentReport:
    return _cached_moments(m, current_bits())


def first_moment_exact(m: FiniteMeasure) -> Fraction | None:
    """Exact first moment, available when the measure is purely atomic."""
    if m.density is not None:
        return None
    return sum((a.location * a.mass for a in m.atoms), Fraction(0))


# ---------------------------------------------------------------------------
# transforms


def herglotz_integral(m: FiniteMeasure, z, rtol: float = MOMENT_RTOL) -> gmpy2.mpc:
    """int (1+tz)/(t-z) dm(t); imaginary part >= 0 on H, > 0 unless m = 0."""
    import mpmath as mp

    zc = z.z if hasattr(z, "z") else gmpy2.mpc(z)
    total = gmpy2.mpc(0)
    for a in m.atoms:
        t = a.location_real
        total += a.mass_real * (1 + t * zc) / (t - zc)
    if m.density is not None:
        with mp.workdps(_workdps()):
            zm = complex_to_mpc(zc)
            di = _DensityIntegrand(m.density)

            def kern(u):
                t = di.signed_t(u)
                return (1 + t * zm) / (t - zm)

            # kernel tends to the constant z at infinity: growth 0
            val = _density_integral(di, kern, 0, rtol, splits=(abs(zm),))
            total += mpc_to_complex(val)
    return total


def reduced_p(m: FiniteMeasure, z, rtol: float = MOMENT_RTOL) -> gmpy2.mpc:
    """p(z) = int (1+t^2)/(t-z) dm(t). Requires int |t| dm < oo.

    Identity with the other transform: herglotz = reduced_p - int t dm,
    used as a cross-check in the suite.
    """
    import mpmath as mp

    rep = cached_moments(m)
    if not rep.abs_first_finite:
        raise NumericError("reduced form undefined: first absolute moment is infinite")
    zc = z.z if hasattr(z, "z") else gmpy2.mpc(z)
    total = gmpy2.mpc(0)
    for a in m.atoms:
        t = a.location_real
        total += a.mass_real * (1 + t * t) / (t - zc)
    if m.density is not None:
        with mp.workdps(_workdps()):
            zm = complex_to_mpc(zc)
            di = _DensityIntegrand(m.density)

            def kern(u):
                t = di.signed_t(u)
                return (1 + t * t) / (t - zm)

            # (1+t^2)/(t-z) grows like |t|: growth 1
            val = _density_integral(di, kern, 1, rtol, splits=(abs(zm),))
            total += mpc_to_complex(val)
    return total
