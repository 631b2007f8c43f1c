"""Exception types shared across the toolkit."""

from __future__ import annotations


class FiqhkitError(Exception):
    """Base class for all toolkit errors."""


class ParseError(FiqhkitError):
    """Raised on malformed formula text, with position and expectations."""

    def __init__(self, message: str, line: int, column: int, expected: tuple[str, ...] = ()):
        self.line = line
        self.column = column
        self.expected = expected
        detail = f"{message} at line {line}, column {column}"
        if expected:
            detail += " (expected: " + ", ".join(expected) + ")"
        super().__init__(detail)


class EvalError(FiqhkitError):
    """An assignment did not cover an atom the formula mentions."""


class GeneralFormulaError(FiqhkitError):
    """A detailed (variable-free) formula was required."""


class SubstitutionError(FiqhkitError):
    """A variable of the target formula has no binding."""


class BudgetError(FiqhkitError):
    """A configured size limit (atoms, instantiations, questions) was exceeded."""


class LoadError(FiqhkitError):
    """A data document (space, rulebase, automaton, analogy case) failed validation."""


class MatchError(FiqhkitError):
    """A question was matched against a rulebase from a different space."""


class AnalogyError(FiqhkitError):
    """The analogy preconditions do not hold (no unifier, reason not inverted)."""


class SessionError(FiqhkitError):
    """An action-sequence session was stepped illegally."""
