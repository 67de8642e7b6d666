"""Utility modules for logging, error handling, encoding and fan-out."""

from .errors import (
    BudgetExhausted,
    ConfigurationError,
    CuFraisseError,
    DiagnosticError,
    ManifestError,
    PreconditionError,
    RepresentationError,
    StructuralError,
)
from .logger import get_logger
from .parallel import first_success, parallel_map

__all__ = [
    "BudgetExhausted",
    "ConfigurationError",
    "CuFraisseError",
    "DiagnosticError",
    "ManifestError",
    "PreconditionError",
    "RepresentationError",
    "StructuralError",
    "first_success",
    "get_logger",
    "parallel_map",
]
