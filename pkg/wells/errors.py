"""Shared error types for wellgap.

Every failure a caller can act on is a ``WellGapError``: configuration text
that does not parse, values that break a model invariant, and solver
breakdowns (singular pencils, fully deflated overlaps, calibration that does
not converge).
"""

from __future__ import annotations

from typing import Any


class WellGapError(Exception):
    """Base exception for all wellgap errors."""

    def __init__(
        self,
        message: str,
        source_module: str = "",
        details: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(message)
        self.error_type = self.__class__.__name__
        self.message = message
        self.source_module = source_module
        self.details = details or {}

    def to_dict(self) -> dict[str, Any]:
        """Serialize error for logging."""
        return {
            "error_type": self.error_type,
            "message": self.message,
            "source_module": self.source_module,
            "details": self.details,
        }


class ConfigurationError(WellGapError):
    """Configuration text is malformed (bad syntax, unknown key, bad literal)."""

    def __init__(
        self,
        message: str,
        source_module: str = "",
        line_number: int | None = None,
        config_key: str = "",
        **kwargs: Any,
    ) -> None:
        super().__init__(message, source_module=source_module, **kwargs)
        self.line_number = line_number
        self.config_key = config_key

    def to_dict(self) -> dict[str, Any]:
        data = super().to_dict()
        data["line_number"] = self.line_number
        data["config_key"] = self.config_key
        return data


class ValidationError(WellGapError):
    """A value violates a domain invariant."""

    def __init__(
        self,
        message: str,
        source_module: str = "",
        field_name: str = "",
        expected: str = "",
        received: str = "",
        validation_rule: str = "",
        **kwargs: Any,
    ) -> None:
        super().__init__(message, source_module=source_module, **kwargs)
        self.field_name = field_name
        self.expected = expected
        self.received = received
        self.validation_rule = validation_rule

    def to_dict(self) -> dict[str, Any]:
        data = super().to_dict()
        data.update(
            field_name=self.field_name,
            expected=self.expected,
            received=self.received,
            validation_rule=self.validation_rule,
        )
        return data


class InvalidInstanceError(ValidationError):
    """Wells, centers or states that cannot belong to one consistent instance."""


class SolverError(WellGapError):
    """A numerical solver could not produce a result."""


class SingularPencilError(SolverError):
    """The generalized eigenproblem admits no finite eigenvalues after deflation."""

    def __init__(
        self,
        message: str,
        source_module: str = "",
        stage: int = 0,
        **kwargs: Any,
    ) -> None:
        super().__init__(message, source_module=source_module, **kwargs)
        self.stage = stage


class DegenerateOverlapError(SolverError):
    """Every direction of the overlap matrix was deflated."""


class IncompatibleMethodError(SolverError):
    """The requested method cannot handle this instance (well count or qubit cap)."""

    def __init__(
        self,
        message: str,
        source_module: str = "",
        method: str = "",
        **kwargs: Any,
    ) -> None:
        super().__init__(message, source_module=source_module, **kwargs)
        self.method = method


class CalibrationError(SolverError):
    """Well-depth calibration failed to reach its tolerance."""

    def __init__(
        self,
        message: str,
        source_module: str = "",
        residual: float = float("nan"),
        iterations: int = 0,
        **kwargs: Any,
    ) -> None:
        super().__init__(message, source_module=source_module, **kwargs)
        self.residual = residual
        self.iterations = iterations
