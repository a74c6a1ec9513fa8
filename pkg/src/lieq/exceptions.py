"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: input problems exit with 2, violated
geometric preconditions with 3 and numerically inconclusive verdicts with 4.
"""


class LieqError(Exception):
    """Base class for all package errors."""


class InputError(LieqError, ValueError):
    """Malformed input: wrong shapes, unknown keys, schema violations."""


class GeometryError(LieqError, ValueError):
    """A geometric precondition does not hold for the supplied data."""


class NotOnQuadricError(GeometryError):
    """A vector expected to be lightlike is not on the Lie quadric."""


class ImproperPointError(GeometryError):
    """An operation hit the improper point where the target model is undefined."""

    def __init__(self, message, indices=None):
        super().__init__(message)
        self.indices = indices


class NotInGroupError(GeometryError):
    """A matrix fails to preserve the form within tolerance."""

    def __init__(self, message, residual=float("nan")):
        super().__init__(message)
        self.residual = residual


class InconclusiveError(LieqError):
    """Numerical evidence is too weak to decide a verdict either way."""
