"""Exception hierarchy shared by every module."""

from __future__ import annotations


class EquilistError(Exception):
    """Base class for all package errors."""


class InvalidInstance(EquilistError):
    """Malformed graph, list assignment, coloring or argument."""


class IllegalMove(EquilistError):
    """A recoloring move whose target class is not available to the vertex."""


class NotAccessible(EquilistError):
    """A color from which no light color can be reached."""


class UnsupportedParameter(EquilistError):
    """The color budget is outside the range the solver handles (r < 9)."""


class HypothesisViolated(EquilistError):
    """Maximum degree exceeds the color budget."""


class InternalInvariantViolation(EquilistError):
    """A structural guarantee failed during extension.

    On graphs of class B this indicates a bug. Off the class it is the
    expected failure mode. ``state`` and ``trace`` are attached so the
    offending configuration can be inspected or replayed.
    """

    def __init__(self, message: str, state=None, trace=None, check: str | None = None):
        super().__init__(message)
        self.state = state
        self.trace = list(trace) if trace is not None else []
        self.check = check
