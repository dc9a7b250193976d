"""Exception hierarchy shared by the library and the CLI.

Exit-code convention: 0 success, 2 input or contract violation, 3 numeric
failure (precision exhaustion, quadrature breakdown, a map stepping out of
the half-plane).
"""

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERIC = 3


class SlopekitError(Exception):
    """Base class; carries the CLI exit code."""

    exit_code = EXIT_INPUT


class InputError(SlopekitError):
    """Invalid input, schema violation, or broken operation precondition."""

    exit_code = EXIT_INPUT


class HypothesisViolation(InputError):
    """An operation was called on a map outside its stated hypothesis
    (e.g. a multi-seed slope-agreement check on a positive-step map)."""


class NumericError(SlopekitError):
    """Numeric failure that more precision or budget might fix."""

    exit_code = EXIT_NUMERIC


class PrecisionExhaustion(NumericError):
    """An orbit increment underflowed at the working precision.

    Raised when a map with strictly increasing imaginary part produces
    y_{n+1} <= y_n; the caller should retry with more mantissa bits.
    """


class QuadratureIndeterminate(NumericError):
    """Adaptive quadrature failed to certify the requested tolerance and the
    divergence detector did not trigger either. Never silently a number."""


class LeftHalfPlane(NumericError):
    """Evaluation left the open upper half-plane. A genuine self-map cannot
    do this, so it signals a bug or severe precision loss."""
