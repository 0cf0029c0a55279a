"""Exception hierarchy.

Everything raised on purpose derives from :class:`ModelError`. The CLI maps
:class:`InputError` subclasses to exit code 1 and all others to exit code 2.
"""

from __future__ import annotations


class ModelError(Exception):
    """Base class for every error raised by this package."""


class InputError(ModelError):
    """Bad user input: usage, syntax, schema or scenario validation."""


class UsageError(InputError):
    pass


class ParseError(InputError):
    """Malformed or schema-violating scenario/params file."""

    def __init__(self, message: str, *, path: str | None = None, field: str | None = None,
                 line: int | None = None, column: int | None = None) -> None:
        self.path = path
        self.field = field
        self.line = line
        self.column = column
        where = []
        if path:
            where.append(str(path))
        if line is not None:
            where.append(f"line {line}, column {column}")
        if field:
            where.append(f"field {field!r}")
        prefix = ": ".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)


class ScenarioError(InputError):
    """A scenario failed validation; ``violations`` lists every problem found."""

    def __init__(self, violations: list[str]) -> None:
        self.violations = list(violations)
        super().__init__("invalid scenario: " + "; ".join(self.violations))


class ParameterError(ModelError, ValueError):
    """A model parameter lies outside its domain."""


class ConfigurationError(ModelError):
    """Cognition parameters incompatible with a growth curve."""

    def __init__(self, message: str, month: float | None = None) -> None:
        self.month = month
        super().__init__(message)


class ScaleError(ModelError):
    """Requested enumeration is too large for brute force."""


class ShapeError(ModelError):
    """A curve lacks the shape an operation requires (interior peak, single crossing)."""

    def __init__(self, message: str, crossings: list[float] | None = None) -> None:
        self.crossings = list(crossings) if crossings is not None else []
        super().__init__(message)


class OutOfRangeError(ModelError):
    """Complexity value cannot be mapped onto the baseline's ascending branch."""

    def __init__(self, message: str, value: float, low: float, high: float) -> None:
        self.value = value
        self.low = low
        self.high = high
        super().__init__(message)


class AboveRangeError(OutOfRangeError):
    pass


class BelowRangeError(OutOfRangeError):
    pass


class ConvergenceError(ModelError):
    """An iterative solver hit its iteration limit."""


class CalibrationError(ConvergenceError):
    def __init__(self, message: str, residuals: dict[str, float] | None = None) -> None:
        self.residuals = dict(residuals or {})
        super().__init__(message)


class BracketError(CalibrationError):
    """Target outside what the parameter bracket can attain."""

    def __init__(self, message: str, attained: tuple[float, float]) -> None:
        self.attained = attained
        super().__init__(message)
