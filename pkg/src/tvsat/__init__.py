"""Exact Turaev-Viro style modules of satellite knots.

Public API re-exports live here; see README.md for a tour.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import (
    TvsatError,
    InvalidLevelError,
    InvalidConfigurationError,
    DomainError,
    AdmissibilityError,
    ScalarDivisionError,
    DegenerateExtensionError,
    ContextMismatchError,
    ShapeError,
    WheelShapeError,
    OracleLimitError,
    UnsupportedColoringError,
    KnotSyntaxError,
    CacheError,
)
from .scalars import (
    FieldContext,
    Scalar,
    make_context,
    kappa_inv3,
    embed_complex,
    scalar_to_json,
    scalar_from_json,
)

__all__ = [
    "__version__",
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
    "FieldContext",
    "Scalar",
    "make_context",
    "kappa_inv3",
    "embed_complex",
    "scalar_to_json",
    "scalar_from_json",
]
