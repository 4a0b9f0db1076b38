"""Exception types shared across the package."""

from __future__ import annotations


class DomainError(ValueError):
    """An argument is outside the mathematical domain of the operation."""


class InsufficientPrecisionError(ValueError):
    """The supplied precision budget cannot deliver the requested accuracy.

    Carries ``required_digits``, the minimum working precision that would
    have been accepted, so callers can rebuild a budget and retry.
    """

    def __init__(self, message: str, required_digits: int):
        super().__init__(message)
        self.required_digits = required_digits


class TruncationBoundError(ArithmeticError):
    """A truncation/tail bound cannot be met with the given parameters."""


class FitError(RuntimeError):
    """A regression or model fit has no usable data."""
