"""Exception types shared across the package.

The command line tool maps these onto exit codes, so library code should
raise the most specific one that applies.
"""

from __future__ import annotations


class ParseError(ValueError):
    """Malformed input file.  Carries a 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PreconditionError(ValueError):
    """An operation was called outside its stated domain."""


class InternalCheckError(RuntimeError):
    """A quantity the theory guarantees failed to hold; indicates a bug."""
