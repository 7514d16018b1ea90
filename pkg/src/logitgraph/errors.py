"""Exception types shared across the package."""

from __future__ import annotations


class InvalidInputError(ValueError):
    """An argument violates a documented precondition (shape, range, finiteness)."""


class ParseError(InvalidInputError):
    """A serialized file or string does not match its declared schema.

    The message names the offending path inside the document, e.g.
    ``payoffs[0]: length 3 != expected 4``.
    """


class NotOnGraphError(InvalidInputError):
    """A point claimed to lie on an equilibrium graph fails its residual check."""


class ConvergenceError(RuntimeError):
    """An iterative solve did not reach the requested tolerance.

    Carries the best iterate seen (``best``), its residual, and the number of
    iterations spent, so callers can inspect or restart.
    """

    def __init__(self, message, best=None, residual=None, iterations=None):
        super().__init__(message)
        self.best = best
        self.residual = residual
        self.iterations = iterations


class PathFailureError(ConvergenceError):
    """Path tracing stalled; ``partial_trace`` holds everything solved so far."""

    def __init__(self, message, partial_trace=None, **kwargs):
        super().__init__(message, **kwargs)
        self.partial_trace = partial_trace
