"""Exception types shared across cyclewalk."""

from __future__ import annotations


class DomainError(ValueError):
    """A parameter lies outside the domain an operation accepts."""


class ComputationError(RuntimeError):
    """A numerical procedure failed to produce a usable result."""


class FitError(ComputationError):
    """Least-squares fit failed; carries the best parameters seen so far.

    Attributes
    ----------
    best : ScalingFit or None
        Lowest-residual iterate found before giving up.
    """

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best
