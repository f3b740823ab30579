"""Exception hierarchy shared by every module."""

from __future__ import annotations

from collections.abc import Sequence
from typing import Any


class QueuePosetError(Exception):
    """Base class for all library errors."""


class CycleError(QueuePosetError, ValueError):
    """The generating relations contain a directed cycle."""

    def __init__(self, cycle: Sequence[Any]) -> None:
        self.cycle = tuple(cycle)
        path = " -> ".join(map(str, (*self.cycle, self.cycle[0]))) if self.cycle else "?"
        super().__init__(f"relations contain a cycle: {path}")


class EmptyPosetError(QueuePosetError, ValueError):
    pass


class NotALinearExtension(QueuePosetError, ValueError):
    """An ordering is not a permutation of the ground set or breaks a relation."""

    def __init__(self, message: str, pair: tuple[Any, Any] | None = None) -> None:
        self.pair = pair
        super().__init__(message)


class NotTwoDimensional(QueuePosetError):
    """The incomparability graph has no transitive orientation."""


class WidthExceeded(QueuePosetError):
    pass


class MissingBounds(QueuePosetError):
    """The poset lacks a unique minimum or a unique maximum."""


class InvalidDiagram(QueuePosetError, ValueError):
    pass


class AugmentationFailed(QueuePosetError):
    pass


class InvalidLevels(QueuePosetError, ValueError):
    pass


class NotBipartition(QueuePosetError, ValueError):
    pass


class TooLarge(QueuePosetError, ValueError):
    pass


class ParseError(QueuePosetError, ValueError):
    """Malformed input; ``where`` names the offending line or field."""

    def __init__(self, message: str, where: str | None = None) -> None:
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)
