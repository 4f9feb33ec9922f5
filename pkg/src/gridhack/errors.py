"""Exception types shared across the parser, compiler and engine."""

from __future__ import annotations


class GridhackError(Exception):
    """Base class for all package errors."""


class DesSyntaxError(GridhackError):
    """Raised by the lexer/parser on malformed des input.

    Carries enough position info to point at the offending token.
    """

    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"line {line}:{column}: {message}" if line else message)
        self.message = message
        self.line = line
        self.column = column


class CompileError(GridhackError):
    """Raised when a parsed document cannot be turned into a level blueprint."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"line {line}:{column}: {message}" if line else message)
        self.message = message
        self.line = line
        self.column = column


class PlacementError(CompileError):
    """A random placement or layout could not be satisfied within the retry caps."""


class UnknownEntityError(CompileError):
    """A monster or object reference does not resolve against the catalog."""


class EngineError(GridhackError):
    """Invalid interaction with a running world (bad action index, etc.)."""


class UnknownTaskError(GridhackError):
    """Task id not present in the registry."""


class MalformedLevel(GridhackError):
    """A box-pushing corpus level fails format validation."""

    def __init__(self, index: int, reason: str):
        super().__init__(f"level {index}: {reason}")
        self.index = index
        self.reason = reason
