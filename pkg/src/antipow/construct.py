"""Constructive procedures: spaced unbordered factors, the five-anti-power
frame construction, the recurrence constant c1, and the linear-block-length
k-anti-power builder for uniform-morphic words.

Every search is deterministic (earliest position satisfying the stated
inequality), so witnesses are reproducible across runs and platforms. All
theorem-backed invariants are machine-checked on every run; a failure raises
a theorem-violation error with forensics, since it would falsify the
implementation rather than the theorem.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from . import _kernels
from .antipower import TAG_THEOREM2, TAG_THEOREM4, AntiPowerWitness, verify_witness
from .errors import (
    ClassificationInconsistencyError,
    HorizonExceededError,
    TheoremViolationError,
    UnsupportedClassError,
    UsageError,
)
from .morphism import MorphicStream, UniformMorphism, classify, factor_set, fixed_point
from .word import FiniteWord, WordStream, find_occurrence

SPACED_T = 100  # the five-anti-power frame constants are tuned to t = 100
_MARKERS = ("001", "110")
_C1_SEARCH_CAP = 512


@dataclass(frozen=True)
class SpacedFactor:
    w: FiniteWord
    ell: int
    t: int
    first_occurrence: int


@dataclass(frozen=True)
class OccurrencePattern:
    i1: int
    i2: int
    i3: int
    i4: int
    d1: int
    d2: int


@dataclass(frozen=True)
class FrameParameters:
    j0: int
    j1: int
    j2: int
    D: int

    def to_json_with(self, pattern: OccurrencePattern, ell: int) -> dict:
        return {
            "i1": pattern.i1,
            "i2": pattern.i2,
            "i3": pattern.i3,
            "i4": pattern.i4,
            "d1": pattern.d1,
            "d2": pattern.d2,
            "j0": self.j0,
            "j1": self.j1,
            "j2": self.j2,
            "D": self.D,
            "ell": ell,
        }


@dataclass(frozen=True)
class RecurrenceConstant:
    c1: int
    marker: FiniteWord
    C: int

    def to_json(self) -> dict:
        return {"c1": self.c1, "marker": self.marker.text, "C": self.C}


@dataclass(frozen=True)
class FiveAntiPowerResult:
    witness: AntiPowerWitness
    spaced: SpacedFactor
    pattern: OccurrencePattern
    frame: FrameParameters
    collisions: tuple[tuple[int, int, int], ...]  # (a, b, c) with block a = block b

    def to_json(self) -> dict:
        return {
            "witness": self.witness.to_json(),
            "frame": self.frame.to_json_with(self.pattern, self.spaced.ell),
        }


def _require_morphic_class(W: WordStream, need_recurrent: bool, op: str) -> None:
    if isinstance(W, MorphicStream):
        cls = W.classification()
        if not cls.aperiodic:
            raise UnsupportedClassError(
                f"{op} requires an aperiodic word; {W.name} classifies as "
                f"reason={cls.reason}"
            )
        if need_recurrent and not cls.uniformly_recurrent:
            raise UnsupportedClassError(
                f"{op} requires a uniformly recurrent word; {W.name} classifies "
                f"as reason={cls.reason}"
            )


def find_spaced_factor(W: WordStream, t: int) -> SpacedFactor:
    """An unbordered factor of length > t, together with its first occurrence.

    Deterministic scan: lengths ell = t+1, t+2, ... in order; for each ell the
    first 64*ell start positions are examined, and a second sweep with a
    4096*ell budget runs before giving up. The word returned at position p is
    genuinely first: an earlier occurrence would itself be an unbordered
    window and would have been found first.
    """
    if t < 0:
        raise UsageError(f"t must be >= 0, got {t}")
    _require_morphic_class(W, need_recurrent=False, op="find_spaced_factor")
    ell_limit = t + 256
    for budget in (64, 4096):
        for ell in range(t + 1, ell_limit + 1):
            last_start = min(budget * ell, W.horizon_cap - ell + 1)
            if last_start < 1:
                continue
            text = W.prefix_array(last_start + ell - 1)
            p0 = _kernels.first_unbordered(text, ell, last_start - 1)
            if p0 >= 0:
                return SpacedFactor(
                    w=FiniteWord(text[p0 : p0 + ell]),
                    ell=ell,
                    t=t,
                    first_occurrence=p0 + 1,
                )
    # failure diagnostic: the largest unbordered length actually present
    probe_len = min(W.horizon_cap, 4096 * (t + 1))
    text = W.prefix_array(probe_len)
    largest = 0
    for ell in range(min(t, 256), 0, -1):
        if _kernels.first_unbordered(text, ell, probe_len - ell) >= 0:
            largest = ell
            break
    raise HorizonExceededError(
        f"no unbordered factor of length > {t} found (largest unbordered "
        f"length seen: {largest})",
        stage="spaced-factor",
    )


def find_occurrence_pattern(W: WordStream, sf: SpacedFactor) -> OccurrencePattern:
    """Four occurrences of sf.w in the arithmetic layout of the theorem.

    Stages (each takes the earliest qualifying occurrence):
      d1: second occurrence of w at distance >= ell + 1000 from the first;
      d2: occurrence of the widened factor [p, p+d1+ell-1] at distance >= 10*d1;
      i1: occurrence of [p, p+d2+d1+ell-1] starting at position >= d2+1.
    Then i2 = i1+d1, i3 = i1+d2, i4 = i1+d2+d1.
    """
    _require_morphic_class(W, need_recurrent=True, op="find_occurrence_pattern")
    if sf.t != SPACED_T:
        raise UsageError(
            f"occurrence patterns are tuned to t = {SPACED_T}, got a spaced "
            f"factor with t = {sf.t}"
        )
    p, ell = sf.first_occurrence, sf.ell
    q = find_occurrence(W, sf.w, min_start=p + ell + 1000, stage="d1")
    d1 = q - p
    x1 = W.factor(p, p + d1 + ell - 1)
    p_prime = find_occurrence(W, x1, min_start=p + 10 * d1, stage="d2")
    d2 = p_prime - p
    x2 = W.factor(p, p + d2 + d1 + ell - 1)
    i1 = find_occurrence(W, x2, min_start=d2 + 1, stage="i1")
    pattern = OccurrencePattern(
        i1=i1, i2=i1 + d1, i3=i1 + d2, i4=i1 + d2 + d1, d1=d1, d2=d2
    )
    _replay_pattern_invariants(W, sf, pattern)
    return pattern


def _replay_pattern_invariants(
    W: WordStream, sf: SpacedFactor, pat: OccurrencePattern
) -> None:
    ell = sf.ell
    checks = {
        "d1 >= ell + 1000": pat.d1 >= ell + 1000,
        "d2 >= 10*d1": pat.d2 >= 10 * pat.d1,
        "i1 >= d2": pat.i1 >= pat.d2,
        "i2-i1 = i4-i3 = d1": pat.i2 - pat.i1 == pat.d1 and pat.i4 - pat.i3 == pat.d1,
        "i3-i1 = d2": pat.i3 - pat.i1 == pat.d2,
    }
    for pos in (pat.i1, pat.i2, pat.i3, pat.i4):
        checks[f"w occurs at {pos}"] = W.factor(pos, pos + ell - 1) == sf.w
    failed = [name for name, ok in checks.items() if not ok]
    if failed:
        raise TheoremViolationError(
            "occurrence pattern invariants failed: " + "; ".join(failed),
            forensics={"pattern": pat, "spaced": sf},
        )


def build_frame(pattern: OccurrencePattern, ell: int) -> FrameParameters:
    """j1/j2/D/j0 from the pattern; j2 is bumped by one to make j2-j1 even."""
    j1 = pattern.i1 + ell + 500
    j2 = pattern.i3 + ell + 500
    if (j2 - j1) % 2 != 0:
        j2 += 1
    D = (j2 - j1) // 2
    j0 = j1 - D
    if j0 < 1:
        raise TheoremViolationError(
            f"frame start j0 = {j0} is not positive",
            forensics={"pattern": pattern, "j1": j1, "j2": j2, "D": D},
        )
    return FrameParameters(j0=j0, j1=j1, j2=j2, D=D)


def _check_copy_margins(
    W: WordStream, sf: SpacedFactor, pat: OccurrencePattern, frame: FrameParameters
) -> None:
    # each of the first four c=0 blocks must contain its copy of w more than
    # 100 letters away from both block endpoints
    ell, D, j0 = sf.ell, frame.D, frame.j0
    bad = []
    for b, pos in enumerate((pat.i1, pat.i2, pat.i3, pat.i4), start=1):
        block_start = j0 + (b - 1) * D
        block_end = j0 + b * D - 1
        lead = pos - block_start
        trail = block_end - (pos + ell - 1)
        if lead <= 100 or trail <= 100:
            bad.append((b, lead, trail))
    if bad:
        raise TheoremViolationError(
            f"copy-of-w margins below 101 in c=0 blocks: {bad}",
            forensics={"pattern": pat, "frame": frame, "ell": ell},
        )


def five_anti_power(W: WordStream) -> FiveAntiPowerResult:
    """The full five-anti-power construction with frame and audit trail.

    Scans candidates c = 0..10 in order and returns the first whose five
    blocks [j0+(i-1)(D+c), j0+i(D+c)-1] are pairwise distinct. The counting
    argument (each pair of block indices can collide for at most one c) is
    replayed across all 11 candidates on every run.
    """
    sf = find_spaced_factor(W, SPACED_T)
    pattern = find_occurrence_pattern(W, sf)
    frame = build_frame(pattern, sf.ell)
    _check_copy_margins(W, sf, pattern, frame)

    j0, D = frame.j0, frame.D
    text = W.prefix_array(j0 - 1 + 5 * (D + 10))
    collisions = []
    chosen: Optional[int] = None
    for c in range(11):
        m = D + c
        base = j0 - 1
        pairs_here = []
        for a in range(1, 5):
            for b in range(a + 1, 6):
                block_a = text[base + (a - 1) * m : base + a * m]
                block_b = text[base + (b - 1) * m : base + b * m]
                if np.array_equal(block_a, block_b):
                    pairs_here.append((a, b, c))
        collisions.extend(pairs_here)
        if not pairs_here and chosen is None:
            chosen = c

    pair_counts: dict[tuple[int, int], int] = {}
    for a, b, _ in collisions:
        pair_counts[(a, b)] = pair_counts.get((a, b), 0) + 1
    repeated = {pair: n for pair, n in pair_counts.items() if n > 1}
    if repeated:
        raise TheoremViolationError(
            f"counting argument failed: pairs colliding for more than one c: {repeated}",
            forensics={"frame": frame, "collisions": collisions},
        )
    if chosen is None:
        raise TheoremViolationError(
            "all 11 candidates have a colliding pair",
            forensics={
                "frame": frame,
                "pattern": pattern,
                "collisions": collisions,
            },
        )

    m = D + chosen
    blocks = tuple(
        FiniteWord(text[j0 - 1 + (i - 1) * m : j0 - 1 + i * m]) for i in range(1, 6)
    )
    witness = AntiPowerWitness(
        start=j0,
        k=5,
        block_length=m,
        blocks=blocks,
        construction_tag=TAG_THEOREM2,
        candidate_c=chosen,
    )
    if not verify_witness(W, witness):
        raise TheoremViolationError(
            "constructed five-anti-power failed verification",
            forensics={"witness": witness, "frame": frame},
        )
    return FiveAntiPowerResult(
        witness=witness,
        spaced=sf,
        pattern=pattern,
        frame=frame,
        collisions=tuple(collisions),
    )


def build_five_anti_power(W: WordStream) -> AntiPowerWitness:
    """Witness form of the five-anti-power construction."""
    return five_anti_power(W).witness


@lru_cache(maxsize=None)
def recurrence_constant(mu: UniformMorphism) -> RecurrenceConstant:
    """The least L such that every length-L factor contains a chosen marker.

    Both markers 001 and 110 are symmetric candidates; for each one that
    occurs at all, the minimal L is computed over exact factor sets, and the
    marker with the smaller constant wins (ties prefer 001).
    """
    cls = classify(mu)
    if not (cls.aperiodic and cls.uniformly_recurrent):
        raise UnsupportedClassError(
            f"recurrence_constant requires an aperiodic uniformly recurrent "
            f"word; {mu.text} classifies as reason={cls.reason}"
        )
    length3 = factor_set(mu, 3)
    occurring = [m for m in _MARKERS if m in length3]
    if not occurring:
        raise ClassificationInconsistencyError(
            f"neither 001 nor 110 occurs in the fixed point of {mu.text}, "
            "contradicting its classification"
        )
    best: Optional[tuple[int, str]] = None
    for marker in occurring:
        mb = FiniteWord(marker).tobytes()
        c1 = None
        for L in range(3, _C1_SEARCH_CAP + 1):
            members = factor_set(mu, L).members
            if all(w.tobytes().find(mb) != -1 for w in members):
                c1 = L
                break
        if c1 is None:
            raise ClassificationInconsistencyError(
                f"no L <= {_C1_SEARCH_CAP} forces marker {marker} into every "
                f"factor of {mu.text}"
            )
        if best is None or c1 < best[0]:
            best = (c1, marker)
    c1, marker = best
    return RecurrenceConstant(c1=c1, marker=FiniteWord(marker), C=(c1 + 2) * mu.r)


def _alpha_for(r: int, k: int) -> int:
    """The unique alpha with r**(alpha-1) < k <= r**alpha (k >= 2)."""
    alpha = 1
    pw = r
    while pw < k:
        pw *= r
        alpha += 1
    return alpha


def build_morphic_anti_power(
    mu: UniformMorphism, i: int, k: int, stream: MorphicStream | None = None
) -> AntiPowerWitness:
    """A k-anti-power starting at position i with block length below C*k.

    Block length is m = (c1+2)*r**alpha - 1 where alpha satisfies
    r**(alpha-1) < k <= r**alpha; the k consecutive blocks are guaranteed
    pairwise distinct, and both the linear bound m < C*k and coprimality
    gcd(m, r**alpha) = 1 are machine-checked.
    """
    if i < 1:
        raise UsageError(f"start position must be >= 1, got {i}")
    if k < 1:
        raise UsageError(f"k must be >= 1, got {k}")
    cls = classify(mu)
    if not (cls.aperiodic and cls.uniformly_recurrent):
        raise UnsupportedClassError(
            f"build_morphic_anti_power requires an aperiodic uniformly "
            f"recurrent word; {mu.text} classifies as reason={cls.reason}"
        )
    W = stream if stream is not None else fixed_point(mu)

    if k == 1:
        block = W.factor(i, i)
        witness = AntiPowerWitness(
            start=i, k=1, block_length=1, blocks=(block,),
            construction_tag=TAG_THEOREM4,
        )
        return witness

    rc = recurrence_constant(mu)
    alpha = _alpha_for(mu.r, k)
    r_alpha = mu.r**alpha
    m = (rc.c1 + 2) * r_alpha - 1
    if not m < rc.C * k:
        raise TheoremViolationError(
            f"block length m = {m} does not satisfy m < C*k = {rc.C * k}",
            forensics={"c1": rc.c1, "alpha": alpha, "k": k},
        )
    if math.gcd(m, r_alpha) != 1:
        raise TheoremViolationError(
            f"m = {m} and r**alpha = {r_alpha} are not coprime",
            forensics={"c1": rc.c1, "alpha": alpha},
        )
    text = W.prefix_array(i - 1 + k * m)
    if not _kernels.blocks_distinct(text, i - 1, k, m):
        dup = _first_equal_pair(text, i - 1, k, m)
        raise TheoremViolationError(
            f"blocks {dup[0]} and {dup[1]} coincide for i={i}, k={k}, m={m} "
            f"on {mu.text}",
            forensics={"i": i, "k": k, "m": m, "alpha": alpha, "c1": rc.c1},
        )
    witness = AntiPowerWitness(
        start=i,
        k=k,
        block_length=m,
        blocks=tuple(
            FiniteWord(text[i - 1 + j * m : i - 1 + (j + 1) * m]) for j in range(k)
        ),
        construction_tag=TAG_THEOREM4,
    )
    if not verify_witness(W, witness):
        raise TheoremViolationError(
            "constructed k-anti-power failed verification",
            forensics={"witness": witness},
        )
    return witness


def _first_equal_pair(text, start0: int, k: int, m: int) -> tuple[int, int]:
    for a in range(k - 1):
        for b in range(a + 1, k):
            if np.array_equal(
                text[start0 + a * m : start0 + (a + 1) * m],
                text[start0 + b * m : start0 + (b + 1) * m],
            ):
                return a + 1, b + 1
    return (0, 0)


def default_gamma_cap(mu: UniformMorphism, k: int) -> int:
    """The default gamma search cap (c1+2)*r*k = C*k."""
    return recurrence_constant(mu).C * k
