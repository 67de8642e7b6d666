"""Custom exception classes for the engine."""

from typing import Any, Dict, Optional


class CuFraisseError(Exception):
    """Base exception for all engine errors."""
    pass


class ConfigurationError(CuFraisseError):
    """Invalid or missing configuration."""
    pass


class StructuralError(CuFraisseError):
    """Domain, codomain or shape mismatch between semigroups and morphisms."""
    pass


class PreconditionError(CuFraisseError):
    """An operation was called outside its documented preconditions."""
    pass


class RepresentationError(CuFraisseError):
    """A value falls outside the exactly representable class."""
    pass


class DiagnosticError(CuFraisseError):
    """A verification could not be completed within the available data.

    `detail` names the failing finite set, demand or diagram.
    """

    def __init__(self, message: str, detail: Optional[Dict[str, Any]] = None) -> None:
        super().__init__(message)
        self.detail: Dict[str, Any] = detail or {}


class BudgetExhausted(CuFraisseError):
    """A bounded search ran out of budget without a witness."""

    def __init__(self, message: str, bound: int, detail: Optional[Dict[str, Any]] = None) -> None:
        super().__init__(message)
        self.bound: int = bound
        self.detail: Dict[str, Any] = detail or {}


class ManifestError(CuFraisseError):
    """Malformed run manifest."""

    def __init__(self, message: str, line: int = 0, column: int = 0) -> None:
        super().__init__(f"{message} (line {line}, column {column})" if line else message)
        self.line: int = line
        self.column: int = column
