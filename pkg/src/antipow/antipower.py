"""Anti-power detection: the definitional check, the gamma function, and
witness verification.

A k-anti-power is a word of length k*m whose k contiguous length-m blocks are
pairwise distinct. gamma(W, i, k) is the smallest m making [i, i+km-1] a
k-anti-power.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import _kernels
from .errors import CapExceededError, UsageError
from .word import FiniteWord, WordStream

TAG_DEFINITIONAL = "definitional"
TAG_THEOREM2 = "theorem2"
TAG_THEOREM4 = "theorem4"
_TAGS = (TAG_DEFINITIONAL, TAG_THEOREM2, TAG_THEOREM4)


@dataclass(frozen=True)
class AntiPowerWitness:
    """Self-verifying evidence: k pairwise-distinct length-m blocks at start."""

    start: int
    k: int
    block_length: int
    blocks: tuple[FiniteWord, ...]
    construction_tag: str = TAG_DEFINITIONAL
    candidate_c: Optional[int] = None

    def __post_init__(self):
        if self.start < 1:
            raise UsageError(f"witness start must be >= 1, got {self.start}")
        if self.k < 1 or self.block_length < 1:
            raise UsageError("witness k and block_length must be >= 1")
        if len(self.blocks) != self.k:
            raise UsageError(f"expected {self.k} blocks, got {len(self.blocks)}")
        if self.construction_tag not in _TAGS:
            raise UsageError(f"unknown construction tag {self.construction_tag!r}")
        if self.candidate_c is not None and not 0 <= self.candidate_c <= 10:
            raise UsageError(f"candidate_c must lie in 0..10, got {self.candidate_c}")

    def to_json(self) -> dict:
        return {
            "start": self.start,
            "k": self.k,
            "block_length": self.block_length,
            "c": self.candidate_c,
            "blocks": [b.text for b in self.blocks],
            "tag": self.construction_tag,
        }


def is_k_anti_power(w: FiniteWord, k: int) -> bool:
    """True iff w splits into k pairwise-distinct blocks of equal length."""
    w = FiniteWord(w)
    if k < 1:
        raise UsageError(f"k must be >= 1, got {k}")
    if len(w) % k != 0:
        raise UsageError(f"k={k} does not divide the word length {len(w)}")
    m = len(w) // k
    if m == 0:
        return k == 1
    return _kernels.blocks_distinct(w.data, 0, k, m)


def _blocks_at(text, start0: int, k: int, m: int) -> tuple[FiniteWord, ...]:
    return tuple(
        FiniteWord(text[start0 + j * m : start0 + (j + 1) * m]) for j in range(k)
    )


def _default_cap(W: WordStream, k: int) -> int:
    # the theorem4 construction bounds gamma by (c1+2)*r*k for classified
    # uniformly recurrent aperiodic morphic words; no default exists outside
    # that class.
    from .construct import recurrence_constant
    from .morphism import MorphicStream

    if isinstance(W, MorphicStream):
        cls = W.classification()
        if cls.aperiodic and cls.uniformly_recurrent:
            return recurrence_constant(W.morphism).C * k
        raise UsageError(
            f"no default m_cap: stream {W.name!r} classifies as reason={cls.reason}; "
            "pass m_cap explicitly"
        )
    raise UsageError("no default m_cap for a non-morphic stream; pass m_cap explicitly")


def gamma(
    W: WordStream, i: int, k: int, m_cap: int | None = None
) -> tuple[int, AntiPowerWitness]:
    """Smallest m <= m_cap with [i, i+km-1] a k-anti-power, plus its witness.

    The search is exhaustive from m = 1 upward. When m_cap is omitted it
    defaults to the guaranteed bound (c1+2)*r*k, available exactly for
    classified uniformly recurrent aperiodic morphic streams.
    """
    if i < 1:
        raise UsageError(f"start position must be >= 1, got {i}")
    if k < 1:
        raise UsageError(f"k must be >= 1, got {k}")
    if m_cap is None:
        m_cap = _default_cap(W, k)
    if m_cap < 1:
        raise UsageError(f"m_cap must be >= 1, got {m_cap}")
    start0 = i - 1
    for m in range(1, m_cap + 1):
        text = W.prefix_array(start0 + k * m)
        if _kernels.blocks_distinct(text, start0, k, m):
            witness = AntiPowerWitness(
                start=i,
                k=k,
                block_length=m,
                blocks=_blocks_at(text, start0, k, m),
                construction_tag=TAG_DEFINITIONAL,
            )
            return m, witness
    raise CapExceededError(
        f"no m <= {m_cap} makes [{i}, i+{k}m-1] a {k}-anti-power", largest_tried=m_cap
    )


def verify_witness(W: WordStream, witness: AntiPowerWitness) -> bool:
    """Replay all witness invariants against W, letter for letter.

    Distinctness is checked by exhaustive pairwise exact comparison; nothing
    here depends on hashing.
    """
    m = witness.block_length
    k = witness.k
    if any(len(b) != m for b in witness.blocks):
        return False
    seen = set()
    for b in witness.blocks:
        key = b.tobytes()
        if key in seen:
            return False
        seen.add(key)
    span = W.factor(witness.start, witness.start + k * m - 1)
    for j, b in enumerate(witness.blocks):
        if span.data[j * m : (j + 1) * m].tobytes() != b.tobytes():
            return False
    return True
