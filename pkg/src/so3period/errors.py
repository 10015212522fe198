"""Exception types shared across the package."""

from __future__ import annotations


class MalformedDiagram(ValueError):
    """A PD code or link file violates its structural invariants."""


class TooManyCrossings(RuntimeError):
    """A (possibly cabled) diagram exceeds the configured crossing cap."""

    def __init__(self, crossings: int, cap: int):
        super().__init__(f"diagram has {crossings} crossings, cap is {cap}")
        self.crossings = crossings
        self.cap = cap


class NotDivisible(ArithmeticError):
    """Raised by exact integer division when some coefficient has a remainder."""


class NonIntegralExponent(ArithmeticError):
    """A bracket-to-Jones conversion produced a fractional power of s."""


class IntegralityViolation(RuntimeError):
    """An invariant that must have integer coefficients does not.

    This always indicates a bug in the computation, never bad input.
    """
