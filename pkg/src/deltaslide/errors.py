"""Exception hierarchy shared by every module."""

from __future__ import annotations


class DeltaSlideError(Exception):
    """Base class for domain errors (CLI exit status 1)."""


class InvalidElements(DeltaSlideError, ValueError):
    pass


class EmptyFamily(DeltaSlideError, ValueError):
    pass


class GroundOverlap(DeltaSlideError, ValueError):
    pass


class InvalidArity(DeltaSlideError, ValueError):
    pass


class CoLoopDeletion(DeltaSlideError, ValueError):
    pass


class NotADeltaMatroid(DeltaSlideError, ValueError):
    pass


class NotBinary(DeltaSlideError, ValueError):
    pass


class EmptySetNotFeasible(DeltaSlideError, ValueError):
    pass


class NotBlockDiagonal(DeltaSlideError, ValueError):
    pass


class NoOddBlock(DeltaSlideError, ValueError):
    pass


class NonAdjacentEnds(DeltaSlideError, ValueError):
    pass


class TooLarge(DeltaSlideError, ValueError):
    pass


class LimitExceeded(DeltaSlideError, RuntimeError):
    pass


class ParseError(ValueError):
    """Malformed text input; ``line`` and ``column`` are 1-based."""

    def __init__(self, line: int, column: int, message: str):
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"line {line}, column {column}: {message}")


class NotSymmetric(DeltaSlideError, ValueError):
    pass
