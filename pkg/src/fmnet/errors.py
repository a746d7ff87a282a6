"""Exception types shared across the package."""

from __future__ import annotations


class FmnetError(Exception):
    """Base class for all package-specific errors."""


class InputSyntaxError(FmnetError):
    """A textual input could not be parsed.

    Carries the 1-based line number of the offending line when known.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DimacsError(InputSyntaxError):
    """Malformed DIMACS CNF input."""


class DialectError(InputSyntaxError):
    """Malformed feature-model dialect input."""


class ConstraintError(FmnetError):
    """A cross-tree constraint cannot be turned into clauses without
    introducing auxiliary variables."""


class VoidModelError(FmnetError):
    """The formula admits no configuration at all; analysis refuses it."""


class EnumerationLimitError(FmnetError):
    """Model enumeration was requested over more variables than the cap allows."""
