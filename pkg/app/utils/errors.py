"""
Error types for the forcing workbench.

Failures caused by bad arguments derive from ValueError so callers that only
know the standard library still catch them.
"""


class WorkbenchError(Exception):
    """Base class for every error raised by the workbench."""


class ConfigError(WorkbenchError, ValueError):
    """Malformed or inconsistent run configuration."""


class InvalidConditionError(WorkbenchError, ValueError):
    """A value violates the invariants of its condition type."""


class EnumerationOverflowError(WorkbenchError):
    """A truncated universe is larger than the configured cap."""

    def __init__(self, size, cap):
        self.size = size
        self.cap = cap
        super().__init__(f"Universe of {size} conditions exceeds the enumeration cap of {cap}")


class _ClauseError(WorkbenchError, ValueError):
    def __init__(self, clause, message=None):
        self.clause = clause
        super().__init__(message or clause)


class AmalgamationPreconditionError(_ClauseError):
    """The amalgamation inputs do not satisfy its precondition."""


class LiftPreconditionError(_ClauseError):
    """The lifting inputs do not satisfy its precondition."""


class MalformedDError(_ClauseError):
    """A product condition claimed to lie in the dense set D does not."""


class NotSeparableError(WorkbenchError, ValueError):
    """The first condition already extends the second."""


class SeparationContradictionError(WorkbenchError):
    """The separation case analysis reached an impossible state."""


class WitnessPreconditionError(WorkbenchError, ValueError):
    """The chosen index occurs in a side set it must avoid."""


class DenseSetViolationError(WorkbenchError):
    """A dense set's strengthening procedure did not land inside the set."""

    def __init__(self, name, message=None):
        self.name = name
        super().__init__(message or f"Dense set '{name}' failed to produce an extension")


class EnvironmentCoverageError(WorkbenchError, KeyError):
    """An index is not covered by the function environment."""

    def __str__(self):
        return str(self.args[0]) if self.args else ""


class UnsupportedModeError(WorkbenchError, ValueError):
    """The operation is not defined for the requested side-condition mode."""
