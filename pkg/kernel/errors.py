"""
Exception hierarchy for termlint.
"""

from typing import Optional


class TermlintError(Exception):
    """Base class for all errors raised by termlint."""


class ParseError(TermlintError):
    """Raised when program text does not match the source grammar."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        location = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"{message}{location}")


class ArityConflictError(TermlintError):
    """Raised when one name is used with two arities in the same symbol class."""


class UnsafeRuleError(TermlintError):
    """Raised when a rule is not range restricted and strict mode is on."""


class DeclarationConflictError(TermlintError):
    """Raised when a #base/#derived directive contradicts the program."""


class NotFlatError(TermlintError):
    """Raised by analyses that require a flat program."""


class NotStandardError(TermlintError):
    """Raised when a disjunctive or negated rule reaches a standard-only operation."""


class ResourceCapError(TermlintError):
    """Raised when a configured size budget trips; the result is inconclusive."""


class GroundingLimitError(ResourceCapError):
    """Raised when bounded grounding would exceed its instance cap."""


class StableModelCapError(ResourceCapError):
    """Raised when a ground program has too many atoms for brute-force enumeration."""


class NameCollisionError(TermlintError):
    """Raised when a freshly minted predicate name already exists."""
