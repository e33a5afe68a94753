"""Exception hierarchy shared by every module."""

from __future__ import annotations


class KrichError(Exception):
    """Base class for all library errors."""


class MathFailure(KrichError):
    """A mathematical check failed (maps to CLI exit code 1)."""


class UsageError(KrichError):
    """Bad input: malformed data or violated preconditions (CLI exit code 2)."""


class PrecisionError(UsageError):
    """A requested coefficient lies outside the certified window."""


class UnknownVariableError(UsageError):
    """A monomial mentions a variable that the order does not know."""


class NotInCellError(MathFailure):
    """The subspace does not lie in the requested cell."""


class NotASubalgebraError(MathFailure):
    """A product of basis elements left the subspace."""


class ShapeViolation(MathFailure):
    """A presentation does not have the required Groebner shape."""
