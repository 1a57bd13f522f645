"""Exception types shared across the package."""

from __future__ import annotations


class TodaLabError(Exception):
    """Base class for package errors."""


class ValidationError(TodaLabError, ValueError):
    """Invalid argument, configuration key, or precondition violation."""


class PoleError(TodaLabError, ArithmeticError):
    """Evaluation landed on (or too close to) a pole of a phase factor.

    Poles are physically meaningful (candidate bound states), so callers may
    catch this and report a tagged pole result instead of a value.
    """

    def __init__(self, message: str, *, where: str | None = None):
        super().__init__(message)
        self.where = where


class NumericalError(TodaLabError, RuntimeError):
    """A numerical procedure (Newton iteration, root finder) failed."""


class StepFailure(NumericalError):
    """Time step could not be completed; carries a dump of the failing state."""

    def __init__(self, message: str, *, state_dump: dict | None = None):
        super().__init__(message)
        self.state_dump = state_dump or {}
