"""Errors raised across the toolkit.

Problems with submitted material (program text, type definitions, goals,
requests) are InputError; blown resource caps are ResourceLimitError, so
drivers can tell "fix your input" apart from "raise the limits".
"""
from __future__ import annotations


class ToolError(Exception):
    """Base class for every deliberate error in this package."""


class InputError(ToolError):
    """A submitted program, type definition, goal or request is unusable."""


class SourcePositionError(InputError):
    """An input error at a known position in a source text."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class ProgramSyntaxError(SourcePositionError):
    pass


class TypeSyntaxError(SourcePositionError):
    pass


class GoalSyntaxError(SourcePositionError):
    pass


class ReservedNameError(SourcePositionError):
    """A reserved name ($VAR, dynamic, ...) appeared where users may not put it."""


class UndeclaredTypeError(TypeSyntaxError):
    """A type rule refers to a type name that is never defined."""


class DegenerateSignatureError(InputError):
    """The signature has no constants, so no ground terms exist."""


class ResourceLimitError(ToolError):
    """A state cap or time budget was exceeded."""


class InternalError(ToolError):
    """An internal invariant failed; indicates a bug, not bad input."""
