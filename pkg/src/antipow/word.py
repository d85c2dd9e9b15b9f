"""Finite binary words, lazily extended infinite words, and occurrence search.

Positions on the public surface are 1-based throughout: [i, j] is the factor
from position i to position j inclusive, matching the usual combinatorics
convention. Internal arrays are 0-based numpy uint8 buffers of 0/1 values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import _kernels
from .errors import (
    EmptyRangeError,
    HorizonExceededError,
    InsufficientDataError,
    UsageError,
)

DEFAULT_HORIZON = 1 << 24


def _coerce_letters(source) -> np.ndarray:
    if isinstance(source, FiniteWord):
        return source.data
    if isinstance(source, str):
        arr = np.frombuffer(source.encode("ascii"), dtype=np.uint8) - ord("0")
    elif isinstance(source, (bytes, bytearray)):
        arr = np.frombuffer(bytes(source), dtype=np.uint8)
        if arr.size and arr.max() > 1:
            arr = arr - ord("0")
    else:
        arr = np.asarray(source, dtype=np.uint8)
    if arr.size and (arr.min() < 0 or arr.max() > 1):
        raise UsageError("word letters must all be 0 or 1")
    arr = np.ascontiguousarray(arr, dtype=np.uint8)
    arr.setflags(write=False)
    return arr


class FiniteWord:
    """Immutable finite word over {0,1}, stored as a uint8 array."""

    __slots__ = ("_data", "_bytes")

    def __init__(self, source):
        self._data = _coerce_letters(source)
        self._bytes: Optional[bytes] = None

    @property
    def data(self) -> np.ndarray:
        return self._data

    @property
    def text(self) -> str:
        return (self._data + ord("0")).tobytes().decode("ascii")

    def tobytes(self) -> bytes:
        if self._bytes is None:
            self._bytes = self._data.tobytes()
        return self._bytes

    def __len__(self) -> int:
        return int(self._data.shape[0])

    def __eq__(self, other) -> bool:
        if isinstance(other, str):
            other = FiniteWord(other)
        if not isinstance(other, FiniteWord):
            return NotImplemented
        return self.tobytes() == other.tobytes()

    def __hash__(self) -> int:
        return hash(self.tobytes())

    def __repr__(self) -> str:
        if len(self) <= 40:
            return f"FiniteWord({self.text!r})"
        return f"FiniteWord({self.text[:37]!r}..., length={len(self)})"

    def __str__(self) -> str:
        return self.text

    def __add__(self, other: "FiniteWord") -> "FiniteWord":
        return FiniteWord(np.concatenate([self._data, FiniteWord(other)._data]))


def swap_letters(w: FiniteWord) -> FiniteWord:
    """Rename the letters 0 <-> 1."""
    return FiniteWord(1 - w.data)


class WordStream:
    """A lazily extended prefix of an infinite word with 1-based access.

    The cached prefix grows monotonically and never past ``horizon_cap``;
    any read beyond the cap raises rather than silently truncating.
    """

    def __init__(
        self,
        letter_rule: Callable[[int], int] | None = None,
        horizon_cap: int = DEFAULT_HORIZON,
        name: str = "",
    ):
        if horizon_cap < 1:
            raise UsageError("horizon_cap must be positive")
        self._rule = letter_rule
        self.horizon_cap = int(horizon_cap)
        self.name = name
        self._prefix = np.zeros(0, dtype=np.uint8)

    def __len__(self) -> int:
        return int(self._prefix.shape[0])

    def _grow(self, target: int) -> np.ndarray:
        if self._rule is None:
            raise UsageError("stream has no letter rule")
        cur = self._prefix
        n0 = cur.shape[0]
        ext = np.fromiter(
            (self._rule(i) for i in range(n0 + 1, target + 1)), np.uint8, target - n0
        )
        return np.concatenate([cur, ext])

    def require(self, n: int) -> None:
        """Extend the cached prefix to at least n letters."""
        if n <= len(self):
            return
        if n > self.horizon_cap:
            raise HorizonExceededError(
                f"letter {n} requested, horizon cap is {self.horizon_cap}"
            )
        target = min(self.horizon_cap, max(n, 2 * len(self), 1024))
        grown = self._grow(target)
        grown = np.ascontiguousarray(grown[: self.horizon_cap], dtype=np.uint8)
        if grown.shape[0] < n:
            raise HorizonExceededError(
                f"generator stopped at {grown.shape[0]} letters, {n} requested"
            )
        grown.setflags(write=False)
        self._prefix = grown

    def prefix_array(self, n: int) -> np.ndarray:
        """Read-only view of the first n letters (0-based array)."""
        self.require(n)
        return self._prefix[:n]

    def letter(self, i: int) -> int:
        if i < 1:
            raise UsageError(f"positions are 1-based, got {i}")
        self.require(i)
        return int(self._prefix[i - 1])

    def factor(self, i: int, j: int) -> FiniteWord:
        if i < 1:
            raise UsageError(f"positions are 1-based, got i={i}")
        if i > j:
            raise EmptyRangeError(f"empty range [i={i}, j={j}]")
        self.require(j)
        return FiniteWord(self._prefix[i - 1 : j])


@dataclass(frozen=True)
class OccurrenceList:
    """Ascending 1-based start positions of pattern within a scanned window."""

    pattern: FiniteWord
    positions: tuple[int, ...]
    scanned_up_to: int

    def __len__(self) -> int:
        return len(self.positions)


def factor(W: WordStream, i: int, j: int) -> FiniteWord:
    """The factor [i, j] of W, 1-based inclusive."""
    return W.factor(i, j)


def is_unbordered(w: FiniteWord) -> bool:
    """True iff no proper nonempty prefix of w is also a suffix."""
    w = FiniteWord(w)
    n = len(w)
    if n == 0:
        raise UsageError("is_unbordered is undefined for the empty word")
    if n == 1:
        return True
    return _kernels._py_window_unbordered(w.data, 0, n)


def occurrences(W: WordStream, w: FiniteWord, scan_limit: int) -> OccurrenceList:
    """All occurrences of w that fit inside [1, scan_limit]."""
    w = FiniteWord(w)
    if len(w) < 1:
        raise UsageError("pattern must be nonempty")
    if scan_limit > W.horizon_cap:
        raise HorizonExceededError(
            f"scan_limit {scan_limit} exceeds horizon cap {W.horizon_cap}"
        )
    text = W.prefix_array(scan_limit)
    pos0 = _kernels.find_all(text, w.data)
    return OccurrenceList(
        pattern=w,
        positions=tuple(int(p) + 1 for p in pos0),
        scanned_up_to=scan_limit,
    )


def find_occurrence(
    W: WordStream, w: FiniteWord, min_start: int = 1, stage: str | None = None
) -> int:
    """First 1-based occurrence of w at a position >= min_start.

    Extends the stream geometrically as needed; raises a horizon error naming
    the stage when the cap is reached without a hit.
    """
    w = FiniteWord(w)
    m = len(w)
    if m < 1:
        raise UsageError("pattern must be nonempty")
    if min_start < 1:
        min_start = 1
    target = min(W.horizon_cap, max(min_start + m - 1, 2 * len(W), 4096))
    while True:
        text = W.prefix_array(target)
        p0 = _kernels.find_first(text, w.data, min_start - 1)
        if p0 >= 0:
            return p0 + 1
        if target >= W.horizon_cap:
            raise HorizonExceededError(
                f"no occurrence of length-{m} pattern at position >= {min_start} "
                f"within horizon {W.horizon_cap}",
                stage=stage,
            )
        target = min(W.horizon_cap, 2 * target)


def eventually_periodic_probe(
    prefix: FiniteWord, max_period: int, min_tail: int
) -> Optional[tuple[int, int]]:
    """Smallest (preperiod, period <= max_period) making the prefix eventually
    periodic over a tail of at least min_tail letters, or None.

    "Smallest" is lexicographic: minimal preperiod first, then minimal period.
    """
    prefix = FiniteWord(prefix)
    x = prefix.data
    n = x.shape[0]
    if max_period < 1 or min_tail < 1:
        raise UsageError("max_period and min_tail must be positive")
    if n < min_tail + 2 * max_period:
        raise InsufficientDataError(
            f"prefix length {n} < min_tail + 2*max_period = {min_tail + 2 * max_period}"
        )
    best: Optional[tuple[int, int]] = None
    for per in range(1, max_period + 1):
        mism = np.nonzero(x[: n - per] != x[per:])[0]
        preperiod = 0 if mism.size == 0 else int(mism[-1]) + 1
        if n - preperiod >= min_tail:
            cand = (preperiod, per)
            if best is None or cand < best:
                best = cand
    return best
