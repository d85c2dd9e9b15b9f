"""Error taxonomy shared by the library and the CLI.

Every error carries an ``exit_code`` so the CLI can map failures to stable,
distinct process statuses:

    1  usage / bad input
    2  horizon exceeded
    3  search cap exceeded
    4  unsupported word class
    5  theorem violation (must never fire; indicates an implementation bug)
"""

from __future__ import annotations


class AntipowError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class UsageError(AntipowError):
    """Malformed input, bad argument, or violated call precondition."""

    exit_code = 1


class ParseError(UsageError):
    """Morphism text did not parse; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at character {position})")
        self.position = position


class EmptyRangeError(UsageError):
    """Factor request with i > j."""


class InsufficientDataError(UsageError):
    """Prefix too short for the requested probe."""


class InvalidGeneratorError(UsageError):
    """Morphism is not prolongable at 0 (image of 0 must start with 0)."""


class HorizonExceededError(AntipowError):
    """A search or read needed letters beyond the stream's horizon cap."""

    exit_code = 2

    def __init__(self, message: str, stage: str | None = None):
        super().__init__(message if stage is None else f"{stage}: {message}")
        self.stage = stage


class PowerOverflowError(HorizonExceededError):
    """Morphism power would exceed the uniformity guard r**alpha <= 2**20."""


class CapExceededError(AntipowError):
    """Exhaustive search hit its cap; reports the largest value tried."""

    exit_code = 3

    def __init__(self, message: str, largest_tried: int):
        super().__init__(message)
        self.largest_tried = largest_tried


class UnsupportedClassError(AntipowError):
    """Operation requires a word class the classifier ruled out."""

    exit_code = 4


class TheoremViolationError(AntipowError):
    """A machine-checked theorem invariant failed.

    Firing falsifies the implementation, not the theorem, so the message
    carries full forensics (frame dump, candidate blocks, bound values).
    """

    exit_code = 5

    def __init__(self, message: str, forensics: dict | None = None):
        super().__init__(message)
        self.forensics = forensics or {}


class ClassificationInconsistencyError(TheoremViolationError):
    """Classifier-guaranteed structure is absent (e.g. neither marker occurs)."""
