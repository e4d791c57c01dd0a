"""
Exceptions raised by confsched.

The CLI maps input problems to exit status 1 and internal invariant
violations to exit status 2.
"""

from typing import Optional


class ConfschedError(Exception):
    """Base class for all confsched errors."""


class InvalidDateError(ConfschedError, ValueError):
    """A calendar date is out of range or cannot be parsed."""


class EmptyInputError(ConfschedError, ValueError):
    """An operation that needs at least one value got none."""


class UnrankableConferenceError(ConfschedError):
    """A conference has no dated event visible at the requested date."""

    def __init__(self, conf_key: str, message: Optional[str] = None):
        self.conf_key = conf_key
        super().__init__(message or f"Conference {conf_key} has no visible dated event")


class InsufficientDataError(ConfschedError, ValueError):
    """Too few observations for a statistical test."""


class IngestError(ConfschedError):
    """An input file contains a malformed or conflicting row."""

    def __init__(self, path: str, line_no: int, reason: str):
        self.path = path
        self.line_no = line_no
        self.reason = reason
        super().__init__(f"{path}:{line_no}: {reason}")


class FormatError(ConfschedError):
    """A run, qrels or report file does not follow its grammar."""

    def __init__(self, path: str, line_no: int, reason: str):
        self.path = path
        self.line_no = line_no
        self.reason = reason
        super().__init__(f"{path}:{line_no}: {reason}")


class ConfigError(ConfschedError):
    """The run configuration is missing a key or holds an invalid value."""


class InvariantViolation(ConfschedError):
    """An internal consistency check failed."""
