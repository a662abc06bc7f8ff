"""Exception types shared across the package.

Every error raised on purpose by this package derives from QlcmError, so
callers can catch one base class.  Errors that signal caller mistakes
(bad arguments) are distinct from InternalError, which indicates an
arithmetic invariant broke inside the package and is never the caller's
fault.
"""


class QlcmError(Exception):
    """Base class for all package errors."""


class NonExactDivision(QlcmError):
    """Polynomial division left a nonzero remainder where exactness was required."""


class ZeroPolynomialInput(QlcmError):
    """An operation that requires nonzero polynomials received the zero polynomial."""


class NonPositive(QlcmError):
    """An integer argument that must be positive (or nonnegative) is out of range."""


class NotPrime(QlcmError):
    """An argument that must be prime is not."""


class OutOfRange(QlcmError):
    """An index argument lies outside its documented range."""


class IndexTooSmall(QlcmError):
    """An index below the supported minimum (for example d < 2 where Phi_d(1) would be 0)."""


class HypothesisViolated(QlcmError):
    """A caller-supplied hypothesis failed its verification scan."""


class InternalError(QlcmError):
    """An internal arithmetic invariant failed; indicates a bug, not bad input."""
