"""Exception hierarchy.

InputError maps to CLI exit 2; everything else that escapes a command is
a checked failure (exit 1) or a bug.
"""
from __future__ import annotations


class HodgeMCError(Exception):
    pass


class InputError(HodgeMCError, ValueError):
    """Malformed or inconsistent user input."""

    def __init__(self, msg, pointer: str = ""):
        super().__init__(msg)
        self.pointer = pointer

    def __str__(self):
        base = super().__str__()
        return f"{self.pointer}: {base}" if self.pointer else base


class PreconditionError(HodgeMCError):
    """An operation was called on data that fails its stated precondition."""


class ConstructionError(HodgeMCError):
    """A construction had no solution (with a diagnostic)."""


class InvariantViolation(HodgeMCError, AssertionError):
    """An internal identity that must hold failed. Always a bug or a broken fixture."""
