"""Exception hierarchy for the tropspan package.

Everything derives from TropicalError so callers can catch broadly; the CLI
maps subfamilies to distinct exit codes (see cli.py).
"""

from __future__ import annotations


class TropicalError(Exception):
    """Base class for all tropspan errors."""


class ShapeMismatch(TropicalError):
    """Operands have incompatible dimensions."""


class InversionOfZero(TropicalError):
    """Multiplicative inverse of the semifield zero was requested."""


class AllZeroMatrix(TropicalError):
    """Operation requires a matrix with at least one finite entry."""


class ZeroVector(TropicalError):
    """Operation requires a vector with at least one finite entry."""


class ZeroColumn(TropicalError):
    """Matrix has an all-zero column where nonzero columns are required."""


class NotSquare(TropicalError):
    """Operation is defined for square matrices only."""


class SpectralConditionViolated(TropicalError):
    """Tr(A) > 1: the inequality A x <= x has no regular solution."""


class NotColumnRegular(TropicalError):
    """Matrix has an all-zero column."""


class NotRegularMatrix(TropicalError):
    """Matrix has an all-zero row or column where regularity is required."""


class NotRegularVector(TropicalError):
    """Vector has a zero component where a regular vector is required."""


class InfeasiblePrecedence(TropicalError):
    """Cyclic precedence constraints with positive total lag; no schedule exists."""


class InfeasibleDeadline(TropicalError):
    """Deadline constraints admit no regular coefficient vector."""


class CoefficientOutOfBound(TropicalError):
    """Supplied coefficient vector exceeds the admissible upper bound."""


class UnsupportedDimension(TropicalError):
    """Plotting supports two-dimensional problems only."""


class ParseError(TropicalError):
    """Problem or solution text is malformed; message carries the location."""


class ValidationError(TropicalError):
    """Well-formed document violates a structural invariant."""


class EnumerationBudgetExceeded(TropicalError):
    """Selection enumeration hit the configured cap.

    Attributes carry what was gathered before the cap: ``visited`` is the
    number of selections emitted, ``partial`` the selections themselves
    (may be None when raised below the enumeration layer).
    """

    def __init__(self, message: str, *, visited: int = 0, partial=None):
        super().__init__(message)
        self.visited = visited
        self.partial = partial
