"""Precision plumbing: one global binary precision, decimal I/O, exact bridges.

All extended-precision arithmetic runs through gmpy2 (MPFR/MPC). The active
precision is gmpy2's context precision; `use_bits` scopes it. gmpy2 contexts
are thread-local, so worker threads and processes must call `setup(bits)`
themselves; the CLI and the orbit engine do.

Default precision is 256 bits, overridable with the SLOPEKIT_BITS environment
variable. Output uses decimal strings at a configurable digit count (default
30) so published numbers regenerate exactly.
"""

from __future__ import annotations

import contextlib
import os
from fractions import Fraction

import gmpy2

DEFAULT_BITS = 256
DEFAULT_DIGITS = 30

_ENV_BITS = "SLOPEKIT_BITS"


def default_bits() -> int:
    raw = os.environ.get(_ENV_BITS)
    if raw is None:
        return DEFAULT_BITS
    try:
        bits = int(raw)
    except ValueError as exc:
        raise ValueError(f"{_ENV_BITS} must be an integer, got {raw!r}") from exc
    if bits < 24:
        raise ValueError(f"{_ENV_BITS} must be >= 24, got {bits}")
    return bits


def setup(bits: int | None = None) -> int:
    """Install a fresh gmpy2 context at `bits` precision in this thread."""
    bits = default_bits() if bits is None else int(bits)
    if bits < 24:
        raise ValueError(f"precision must be >= 24 bits, got {bits}")
    gmpy2.set_context(gmpy2.context(precision=bits))
    return bits


def current_bits() -> int:
    return gmpy2.get_context().precision


@contextlib.contextmanager
def use_bits(bits: int | None):
    """Temporarily switch this thread's working precision."""
    old = gmpy2.get_context()
    try:
        setup(bits if bits is not None else old.precision)
        yield gmpy2.get_context().precision
    finally:
        gmpy2.set_context(old)


def bits_to_digits(bits: int) -> int:
    # floor(bits * log10(2)) is the count of faithful decimal digits
    return max(1, int(bits * 0.30102999566398))


def digits_to_bits(digits: int) -> int:
    return int(digits / 0.30102999566398) + 4


Real = gmpy2.mpfr
Complex = gmpy2.mpc

_REAL_SOURCES = (str, int, float, Fraction, type(gmpy2.mpfr(0)), type(gmpy2.mpq(1, 2)), type(gmpy2.mpz(0)))


def to_real(value) -> gmpy2.mpfr:
    """Parse a real at the current precision. Accepts decimal strings,
    ints, floats, Fractions, and gmpy2 scalars."""
    if isinstance(value, Fraction):
        return gmpy2.mpfr(gmpy2.mpq(value.numerator, value.denominator))
    if isinstance(value, _REAL_SOURCES):
        return gmpy2.mpfr(value)
    raise TypeError(f"cannot interpret {type(value).__name__} as a real number")


def to_complex(re, im=None) -> gmpy2.mpc:
    if im is None:
        if isinstance(value := re, (complex,)):
            return gmpy2.mpc(gmpy2.mpfr(value.real), gmpy2.mpfr(value.imag))
        if isinstance(re, type(gmpy2.mpc(0))):
            return re
        return gmpy2.mpc(to_real(re), gmpy2.mpfr(0))
    return gmpy2.mpc(to_real(re), to_real(im))


def real_is_finite(x) -> bool:
    return gmpy2.is_finite(x)


def exact_fraction(x) -> Fraction:
    """Exact rational value of a gmpy2/int/float/str scalar.

    Every finite binary float is a dyadic rational, and decimal strings are
    rationals, so this never loses information. Used by the exact comparison
    fast path of the slope predictor and by the construction validator.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        return Fraction(x)
    q = gmpy2.mpq(x)  # exact for mpfr/mpz/mpq
    return Fraction(int(q.numerator), int(q.denominator))


def format_real(x, digits: int = DEFAULT_DIGITS) -> str:
    """Decimal string with `digits` significant digits, round-trip stable
    for fixed precision and digits."""
    x = to_real(x)
    if gmpy2.is_nan(x):
        return "nan"
    if gmpy2.is_infinite(x):
        return "inf" if x > 0 else "-inf"
    return format(x, f".{digits}g")


def format_complex(z, digits: int = DEFAULT_DIGITS) -> dict:
    z = to_complex(z)
    return {"re": format_real(z.real, digits), "im": format_real(z.imag, digits)}


# Exact bridges to and from mpmath, used by the quadrature layer. An mpf is
# sign * man * 2^exp; both directions go through integers, so the only
# rounding is the final one into the destination precision.

def mpf_to_real(x) -> gmpy2.mpfr:
    import mpmath

    if isinstance(x, mpmath.mpf) or hasattr(x, "_mpf_"):
        sign, man, exp, _ = x._mpf_
        if man == 0:
            if exp == 0:
                return gmpy2.mpfr(0)
            return gmpy2.inf(-1 if sign else 1)
        out = gmpy2.mpfr(man) * gmpy2.mpfr(2) ** exp
        return -out if sign else out
    return to_real(x)


def mpc_to_complex(z) -> gmpy2.mpc:
    import mpmath

    if isinstance(z, mpmath.mpc):
        return gmpy2.mpc(mpf_to_real(z.real), mpf_to_real(z.imag))
    return gmpy2.mpc(mpf_to_real(z), gmpy2.mpfr(0))


def real_to_mpf(x):
    """gmpy2 mpfr -> mpmath mpf, exact (mpmath precision must cover it)."""
    import mpmath
    from mpmath.libmp import from_man_exp

    x = to_real(x)
    if gmpy2.is_zero(x):
        return mpmath.mpf(0)
    man, exp = x.as_mantissa_exp()
    return mpmath.make_mpf(from_man_exp(int(man), int(exp), mpmath.mp.prec, "n"))


def complex_to_mpc(z):
    import mpmath

    z = to_complex(z)
    return mpmath.mpc(real_to_mpf(z.real), real_to_mpf(z.imag))
