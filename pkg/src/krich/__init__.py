"""Exact computations with marked curves, their Krichever coordinates on
Sato-Grassmannian cells, weight cones, and Weierstrass gap combinatorics."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    KrichError,
    MathFailure,
    NotASubalgebraError,
    NotInCellError,
    PrecisionError,
    ShapeViolation,
    UnknownVariableError,
    UsageError,
)

__all__ = [
    "__version__",
    "KrichError",
    "MathFailure",
    "NotASubalgebraError",
    "NotInCellError",
    "PrecisionError",
    "ShapeViolation",
    "UnknownVariableError",
    "UsageError",
]
