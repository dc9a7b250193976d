"""Geometry of the open upper half-plane H = {x + iy : y > 0}.

Provides the pseudo-hyperbolic distance rho(z, w) = |(z - w)/(z - conj(w))|,
the principal argument restricted to H, and the disk <-> half-plane Cayley
conjugation S with S(tau) = infinity, normalized so that S(0) = i.
"""

from __future__ import annotations

from dataclasses import dataclass

import gmpy2

from .errors import InputError
from .precision import to_complex, to_real


@dataclass(frozen=True)
class UHPoint:
    """A point of the open upper half-plane at the working precision.

    Construction rejects im <= 0 and non-finite coordinates outright; orbit
    code treats any such rejection as a hard failure, because a genuine
    self-map of H never leaves H.
    """

    re: gmpy2.mpfr
    im: gmpy2.mpfr

    def __init__(self, re, im=None):
        if im is None and isinstance(re, (complex, type(gmpy2.mpc(0)))):
            re, im = re.real, re.imag
        re = to_real(re)
        im = to_real(im)
        if not (gmpy2.is_finite(re) and gmpy2.is_finite(im)):
            raise InputError("point coordinates must be finite")
        if not im > 0:
            raise InputError(f"point must lie in the open upper half-plane (im={im})")
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    @property
    def z(self) -> gmpy2.mpc:
        return gmpy2.mpc(self.re, self.im)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))


def _coords(z):
    """(re, im) of a UHPoint, mpc, complex, or (re, im) pair."""
    if isinstance(z, UHPoint):
        return z.re, z.im
    if isinstance(z, tuple):
        return to_real(z[0]), to_real(z[1])
    return to_real(z.real), to_real(z.imag)


def pseudo_hyperbolic_distance(z, w) -> gmpy2.mpfr:
    """rho(z, w) = |(z - w)/(z - conj(w))|, symmetric, in [0, 1).

    Computed from real parts to avoid forming intermediate mpc quotients:
    |z - w|^2 = dx^2 + dy^2 and |z - conj(w)|^2 = dx^2 + (y1 + y2)^2.
    """
    x1, y1 = _coords(z)
    x2, y2 = _coords(w)
    dx = x1 - x2
    dy = y1 - y2
    s = y1 + y2
    return gmpy2.sqrt((dx * dx + dy * dy) / (dx * dx + s * s))


def principal_arg(z) -> gmpy2.mpfr:
    """Principal argument; lands strictly inside (0, pi) on H."""
    x, y = _coords(z)
    return gmpy2.atan2(y, x)


def _check_unimodular(tau) -> gmpy2.mpc:
    tau = to_complex(tau)
    one = gmpy2.mpfr(1)
    tol = gmpy2.mpfr(2) ** (-(gmpy2.get_context().precision // 2))
    if abs(gmpy2.norm(tau) - one) > tol:
        raise InputError(f"tau must be unimodular, got |tau|^2 = {gmpy2.norm(tau)}")
    return tau


def cayley_disk_to_halfplane(w, tau=1) -> UHPoint:
    """S(w) = i (tau + w)/(tau - w), the Moebius map D -> H with S(tau) = oo.

    The normalization sending 0 to i is a choice; any Moebius map with
    S(tau) = oo works for slope purposes.
    """
    w = to_complex(w)
    tau = _check_unimodular(tau)
    if gmpy2.norm(w) >= 1:
        raise InputError("w must lie in the open unit disk")
    den = tau - w
    if den == 0:
        raise InputError("w == tau maps to infinity")
    img = gmpy2.mpc(0, 1) * (tau + w) / den
    if not img.imag > 0:
        # |w| < 1 guarantees Im > 0 mathematically; hitting this means the
        # input sat on the boundary within rounding
        raise InputError("image is not in the open upper half-plane")
    return UHPoint(img.real, img.imag)


def cayley_halfplane_to_disk(z, tau=1) -> gmpy2.mpc:
    """Exact functional inverse of cayley_disk_to_halfplane: w = tau (z - i)/(z + i)."""
    tau = _check_unimodular(tau)
    x, y = _coords(z)
    zc = gmpy2.mpc(x, y)
    i = gmpy2.mpc(0, 1)
    return tau * (zc - i) / (zc + i)
