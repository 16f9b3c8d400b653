"""Exception hierarchy shared by every module."""

from __future__ import annotations


class SemiratError(Exception):
    """Base class for all errors raised by this package."""


class InvalidSpec(SemiratError, ValueError):
    pass


class FileFormatError(SemiratError, ValueError):
    pass


class NotNormal(SemiratError, ValueError):
    pass


class BudgetExceeded(SemiratError):
    """A computation would exceed its configured cost budget.

    ``estimate`` is the projected cost, ``budget`` the allowed one, and
    ``cursor`` an optional resumption point for long scans.
    """

    def __init__(self, message: str, estimate: int | None = None,
                 budget: int | None = None, cursor=None):
        super().__init__(message)
        self.estimate = estimate
        self.budget = budget
        self.cursor = cursor


class CeilingExceeded(BudgetExceeded):
    pass


class OverflowGuard(SemiratError, OverflowError):
    pass


class ConductorMismatch(SemiratError, ValueError):
    pass


class CharacterTableError(SemiratError, RuntimeError):
    pass


class WordSyntaxError(SemiratError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position
