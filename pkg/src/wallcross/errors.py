"""Shared exception types.

Every error raised on purpose by this package derives from WallcrossError,
so callers (and the CLI) can distinguish contract violations from bugs.
"""


class WallcrossError(Exception):
    """Base class for all errors raised by wallcross."""


class BadParameters(WallcrossError):
    """Arguments outside the documented parameter range."""


class DimensionMismatch(WallcrossError):
    """Objects with incompatible dimensions or lengths were combined."""


class SizeGuard(WallcrossError):
    """An enumeration was refused because the instance is too large."""


class DivisionByZero(WallcrossError, ZeroDivisionError):
    """Division by the zero element of a field or by a non-unit."""


class PoleAtPoint(WallcrossError):
    """Evaluation of a rational function at a root of its denominator."""


class DegreeOverflow(WallcrossError):
    """Polynomial degree exceeded the hard guard; signals a runaway computation."""


class ParseError(WallcrossError, ValueError):
    """Malformed textual input."""


class NotInNormalForm(WallcrossError):
    """A jet vector does not satisfy the fixed-chart normal form."""


class InsufficientTruncation(WallcrossError):
    """The requested data lies beyond the truncation order of a jet."""


class IndistinguishableAtTruncation(WallcrossError):
    """All members of a jet family agree up to their truncation order."""


class NotFine(WallcrossError):
    """Operation requires a fine mixed subdivision."""


class WrongDimension(WallcrossError):
    """Operation is only defined for a specific ambient dimension."""


class InvariantBreach(WallcrossError):
    """An internal invariant that should be unbreakable was violated."""


class PreconditionViolated(WallcrossError):
    """A documented precondition of an operation does not hold."""
