"""Shared exception types."""


class PartialSatError(Exception):
    """Base class for all library errors."""


class ParseError(PartialSatError):
    """Raised on malformed formula or assignment text."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column


class InconsistentAssignmentError(PartialSatError):
    """Raised when an assignment would bind some atom to both polarities."""


class ResourceLimitError(PartialSatError):
    """Raised when a computation exceeds its configured budget.

    Deliberately distinct from any boolean result: a blown budget is
    never reported as "false".
    """
