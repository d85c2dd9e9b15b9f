"""Binary uniform morphisms: parsing, application, powers, fixed points,
the aperiodicity/recurrence classifier, and exact factor-set enumeration.

A morphism is given by the images A = mu(0) and B = mu(1) of common length
r >= 2. Generators must be prolongable at 0 (A starts with 0), so the fixed
point W = mu^omega(0) exists and every prefix mu^n(0) is a prefix of W.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    ClassificationInconsistencyError,
    InvalidGeneratorError,
    ParseError,
    PowerOverflowError,
    UnsupportedClassError,
    UsageError,
)
from .word import DEFAULT_HORIZON, FiniteWord, WordStream

POWER_GUARD = 1 << 20

REASON_NONE = "none"
REASON_EQUAL_IMAGES = "equal-images"
REASON_WORD_0000 = "exceptional-word-0000"
REASON_WORD_0111 = "exceptional-word-0111"
REASON_WORD_0101 = "exceptional-word-0101"
REASON_ALL_ONES = "all-ones-image"


@dataclass(frozen=True)
class UniformMorphism:
    image_of_0: FiniteWord
    image_of_1: FiniteWord

    def __post_init__(self):
        a, b = self.image_of_0, self.image_of_1
        if len(a) != len(b):
            raise UsageError(f"images must have equal length, got {len(a)} and {len(b)}")
        if len(a) < 2:
            raise UsageError(f"uniformity parameter r must be >= 2, got {len(a)}")

    @property
    def r(self) -> int:
        return len(self.image_of_0)

    @property
    def text(self) -> str:
        return f"0:{self.image_of_0.text},1:{self.image_of_1.text}"

    def image_table(self) -> np.ndarray:
        """2 x r array: row a is the image of letter a."""
        return np.stack([self.image_of_0.data, self.image_of_1.data])

    def is_prolongable(self) -> bool:
        return int(self.image_of_0.data[0]) == 0

    def swapped(self) -> "UniformMorphism":
        """The same rule after renaming the letters 0 <-> 1."""
        from .word import swap_letters

        return UniformMorphism(
            image_of_1=swap_letters(self.image_of_0),
            image_of_0=swap_letters(self.image_of_1),
        )

    def __repr__(self) -> str:
        return f"UniformMorphism({self.text!r})"


@dataclass(frozen=True)
class Classification:
    aperiodic: bool
    uniformly_recurrent: bool
    reason: str

    def to_json(self) -> dict:
        return {
            "aperiodic": self.aperiodic,
            "uniformly_recurrent": self.uniformly_recurrent,
            "reason": self.reason,
        }


@dataclass(frozen=True)
class FactorSet:
    length: int
    members: frozenset

    def texts(self) -> list[str]:
        return sorted(w.text for w in self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, w) -> bool:
        return FiniteWord(w) in self.members


def parse_morphism(text: str) -> UniformMorphism:
    """Parse the wire format "0:A,1:B", e.g. "0:01,1:10"."""
    s = text.strip()

    def expect(pos: int, token: str) -> int:
        if not s.startswith(token, pos):
            raise ParseError(f"expected {token!r}", pos)
        return pos + len(token)

    def letters(pos: int, terminator: str | None) -> tuple[str, int]:
        start = pos
        while pos < len(s) and s[pos] in "01":
            pos += 1
        if pos == start:
            raise ParseError("expected a 0/1 image", pos)
        if terminator is None:
            if pos != len(s):
                raise ParseError("unexpected trailing input", pos)
        return s[start:pos], pos

    pos = expect(0, "0:")
    a, pos = letters(pos, ",")
    pos = expect(pos, ",")
    pos = expect(pos, "1:")
    b, pos = letters(pos, None)
    return UniformMorphism(FiniteWord(a), FiniteWord(b))


def apply(mu: UniformMorphism, w: FiniteWord) -> FiniteWord:
    """Letterwise image: |result| = r * |w|."""
    w = FiniteWord(w)
    if len(w) == 0:
        return w
    return FiniteWord(mu.image_table()[w.data].reshape(-1))


def power(mu: UniformMorphism, alpha: int) -> UniformMorphism:
    """The morphism mu^alpha, uniform with parameter r**alpha."""
    if alpha < 1:
        raise UsageError(f"alpha must be >= 1, got {alpha}")
    if mu.r**alpha > POWER_GUARD:
        raise PowerOverflowError(
            f"r**alpha = {mu.r}**{alpha} exceeds the guard {POWER_GUARD}"
        )
    a, b = FiniteWord("0"), FiniteWord("1")
    for _ in range(alpha):
        a, b = apply(mu, a), apply(mu, b)
    return UniformMorphism(a, b)


class MorphicStream(WordStream):
    """The fixed point mu^omega(0) as a lazily extended stream."""

    def __init__(self, mu: UniformMorphism, horizon_cap: int = DEFAULT_HORIZON):
        if not mu.is_prolongable():
            raise InvalidGeneratorError(
                f"morphism {mu.text} is not prolongable at 0; "
                "its letter-swapped form may be (see UniformMorphism.swapped)"
            )
        super().__init__(horizon_cap=horizon_cap, name=mu.text)
        self.morphism = mu
        self._images = mu.image_table()
        self._prefix = np.array([0], dtype=np.uint8)

    def _grow(self, target: int) -> np.ndarray:
        cur = self._prefix
        while cur.shape[0] < target:
            cur = self._images[cur].reshape(-1)
            if cur.shape[0] >= self.horizon_cap:
                cur = cur[: self.horizon_cap]
                break
        return cur

    def classification(self) -> Classification:
        return classify(self.morphism)


def fixed_point(mu: UniformMorphism, horizon_cap: int = DEFAULT_HORIZON) -> MorphicStream:
    return MorphicStream(mu, horizon_cap=horizon_cap)


def letter_at(mu: UniformMorphism, i: int) -> int:
    """Letter i of the fixed point by digit recursion, without expansion.

    letter(i) is read off the image of letter(ceil(i/r)) at offset
    ((i-1) mod r) + 1; the chain bottoms out at letter(1) = 0.
    """
    if not mu.is_prolongable():
        raise InvalidGeneratorError(f"morphism {mu.text} is not prolongable at 0")
    if i < 1:
        raise UsageError(f"positions are 1-based, got {i}")
    r = mu.r
    offsets = []
    while i > 1:
        offsets.append((i - 1) % r)
        i = (i + r - 1) // r
    images = mu.image_table()
    letter = 0
    for off in reversed(offsets):
        letter = int(images[letter, off])
    return letter


def classify(mu: UniformMorphism) -> Classification:
    """Aperiodicity and uniform recurrence of the fixed point.

    W is aperiodic iff mu(0) != mu(1) and W is none of 0000..., 0111...,
    0101...; membership in the three exceptional words is decided by the
    length-2r prefix A + mu(A_2), which pins the images exactly. W is
    uniformly recurrent iff it is 0000... or mu(1) != 11...1.
    """
    if not mu.is_prolongable():
        raise InvalidGeneratorError(
            f"morphism {mu.text} is not prolongable at 0; "
            "its letter-swapped form may be (see UniformMorphism.swapped)"
        )
    a, b = mu.image_of_0.data, mu.image_of_1.data
    r = mu.r
    images = mu.image_table()
    prefix2r = np.concatenate([a, images[a[1]]])

    all_zero = bool(np.all(a == 0))
    all_ones_image = bool(np.all(b == 1))

    if np.array_equal(a, b):
        aperiodic = False
        reason = REASON_EQUAL_IMAGES
    elif all_zero:
        aperiodic = False
        reason = REASON_WORD_0000
    elif prefix2r[0] == 0 and np.all(prefix2r[1:] == 1):
        aperiodic = False
        reason = REASON_WORD_0111
    elif np.array_equal(prefix2r, np.arange(2 * r) % 2):
        aperiodic = False
        reason = REASON_WORD_0101
    else:
        aperiodic = True
        reason = REASON_NONE

    uniformly_recurrent = all_zero or not all_ones_image
    if aperiodic and not uniformly_recurrent:
        reason = REASON_ALL_ONES
    return Classification(aperiodic, uniformly_recurrent, reason)


def _pairs_of(arr: np.ndarray) -> set[tuple[int, int]]:
    return {(int(arr[i]), int(arr[i + 1])) for i in range(arr.shape[0] - 1)}


@lru_cache(maxsize=None)
def _factor_arrays(mu: UniformMorphism, L: int) -> tuple[frozenset, int]:
    """Closure step: (frozenset of length-L factor byte strings, depth)."""
    images = mu.image_table()
    r = mu.r
    if L == 1:
        letters = {0}
        while True:
            new = set(letters)
            for x in letters:
                new.update(int(v) for v in images[x])
            if new == letters:
                break
            letters = new
        return frozenset(bytes([v]) for v in sorted(letters)), 1
    if L == 2:
        pairs = _pairs_of(mu.image_of_0.data)
        while True:
            new = set(pairs)
            for x, y in pairs:
                new |= _pairs_of(np.concatenate([images[x], images[y]]))
            if new == pairs:
                break
            pairs = new
        return frozenset(bytes(p) for p in sorted(pairs)), 1
    cover = (L - 2) // r + 2  # ceil((L-1)/r) + 1, strictly below L for L >= 3
    shorter, depth = _factor_arrays(mu, cover)
    out = set()
    for vb in shorter:
        v = np.frombuffer(vb, dtype=np.uint8)
        img = images[v].reshape(-1)
        ib = img.tobytes()
        for p in range(len(ib) - L + 1):
            out.add(ib[p : p + L])
    return frozenset(out), depth + 1


def _window_bytes(text: np.ndarray, L: int) -> set[bytes]:
    if text.shape[0] < L:
        return set()
    win = np.lib.stride_tricks.sliding_window_view(text, L)
    uniq = np.unique(win, axis=0)
    return {row.tobytes() for row in uniq}


def factor_set(mu: UniformMorphism, L: int) -> FactorSet:
    """Exactly the length-L factors of the fixed point.

    Length-2 factors come from a pair closure under images (straddling pairs
    included); longer lengths are windows of mu applied to factors of the
    covering length, recursively. Every member is additionally confirmed to
    occur in an explicit prefix before being reported.
    """
    if L < 1:
        raise UsageError(f"factor length must be >= 1, got {L}")
    cls = classify(mu)
    if not cls.uniformly_recurrent:
        raise UnsupportedClassError(
            f"factor_set requires a uniformly recurrent fixed point; {mu.text} "
            f"classifies as reason={cls.reason}"
        )
    members, depth = _factor_arrays(mu, L)

    # confirmation scan: closure members must be visible in a real prefix
    stream = MorphicStream(mu)
    scan = min(stream.horizon_cap, max(mu.r * depth * L, 4 * L))
    cap = min(stream.horizon_cap, max(1 << 16, 64 * mu.r * depth * L))
    while True:
        seen = _window_bytes(stream.prefix_array(scan), L)
        if members <= seen:
            break
        if scan >= cap:
            missing = sorted(members - seen)[:4]
            raise ClassificationInconsistencyError(
                f"factor closure produced {len(members - seen)} member(s) of "
                f"length {L} not observed in a {scan}-letter prefix of {mu.text}: "
                + ", ".join(FiniteWord(np.frombuffer(m, dtype=np.uint8)).text for m in missing)
            )
        scan = min(cap, 2 * scan)

    words = frozenset(FiniteWord(np.frombuffer(m, dtype=np.uint8)) for m in members)
    return FactorSet(length=L, members=words)
