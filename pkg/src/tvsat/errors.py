"""Exception types shared across the package.

Everything raised on purpose derives from TvsatError so the command line
front end can map domain failures to a single exit code. Genuine programming
mistakes (wrong types, impossible states) still surface as the usual builtin
exceptions.
"""

from __future__ import annotations

__all__ = [
    "TvsatError",
    "InvalidLevelError",
    "InvalidConfigurationError",
    "DomainError",
    "AdmissibilityError",
    "ScalarDivisionError",
    "DegenerateExtensionError",
    "ContextMismatchError",
    "ShapeError",
    "WheelShapeError",
    "OracleLimitError",
    "UnsupportedColoringError",
    "KnotSyntaxError",
    "CacheError",
]


class TvsatError(Exception):
    """Base class for every error this library raises deliberately."""


class InvalidLevelError(TvsatError):
    """The integer level p is outside the supported range."""


class InvalidConfigurationError(TvsatError):
    """A context option (for example the root order) is not allowed."""


class DomainError(TvsatError):
    """An argument is outside the mathematical domain of the operation."""


class AdmissibilityError(DomainError):
    """A required triple of colors is not admissible."""


class ScalarDivisionError(TvsatError):
    """Division by the zero scalar."""


class DegenerateExtensionError(TvsatError):
    """Division hit a nonzero scalar of zero norm.

    This can only happen when the square root adjoined to the base field
    already lies inside it, so the two-component representation is not a
    field. Every division performed by the built-in constructions is by a
    pure base-grade scalar, which keeps them clear of this failure; it
    guards externally supplied operands.
    """


class ContextMismatchError(TvsatError):
    """Two operands belong to different arithmetic contexts."""


class ShapeError(TvsatError):
    """Matrix dimensions do not fit the requested operation."""


class WheelShapeError(ShapeError):
    """Wheel slots and maps are inconsistent, or a fold does not divide."""


class OracleLimitError(TvsatError):
    """The diagram oracle was asked for a network above its size bound."""


class UnsupportedColoringError(TvsatError):
    """The construction does not provide a module for this meridian color."""


class KnotSyntaxError(TvsatError):
    """A knot expression string is not generated by the grammar."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class CacheError(TvsatError):
    """A cache file exists but cannot be understood."""
