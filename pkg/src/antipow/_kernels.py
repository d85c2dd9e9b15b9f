"""Scanning kernels: exact string matching, unbordered-window search, and
block-distinctness checks over uint8 arrays of 0/1 letters.

Two interchangeable implementations are provided. The numba backend compiles
tight loops with @njit; the numpy backend leans on vectorized comparisons and
C-speed ``bytes.find``. Selection order:

    ANTIPOW_BACKEND=numba   require numba, fail loudly if missing
    ANTIPOW_BACKEND=numpy   force the fallback
    ANTIPOW_BACKEND=auto    numba when importable, else numpy (default)

Both backends are exact. Fingerprint comparisons in the numba path are always
confirmed letter-by-letter on collision, so results never depend on hashing.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    _HAVE_NUMBA = False


# ---------------------------------------------------------------------------
# numba backend
# ---------------------------------------------------------------------------

if _HAVE_NUMBA:

    @njit(cache=True)
    def _nb_prefix_function(pat):
        m = pat.shape[0]
        pi = np.zeros(m, np.int64)
        k = 0
        for q in range(1, m):
            c = pat[q]
            while k > 0 and pat[k] != c:
                k = pi[k - 1]
            if pat[k] == c:
                k += 1
            pi[q] = k
        return pi

    @njit(cache=True)
    def _nb_find_all(text, n, pat):
        m = pat.shape[0]
        out = np.empty(max(n - m + 1, 0), np.int64)
        count = 0
        if m == 0 or n < m:
            return out[:0]
        pi = _nb_prefix_function(pat)
        k = 0
        for q in range(n):
            c = text[q]
            while k > 0 and pat[k] != c:
                k = pi[k - 1]
            if pat[k] == c:
                k += 1
            if k == m:
                out[count] = q - m + 1
                count += 1
                k = pi[k - 1]
        return out[:count]

    @njit(cache=True)
    def _nb_find_first(text, n, pat, start):
        m = pat.shape[0]
        if m == 0 or n - start < m:
            return -1
        pi = _nb_prefix_function(pat)
        k = 0
        for q in range(start, n):
            c = text[q]
            while k > 0 and pat[k] != c:
                k = pi[k - 1]
            if pat[k] == c:
                k += 1
            if k == m:
                return q - m + 1
        return -1

    @njit(cache=True)
    def _nb_first_unbordered(text, ell, max_start):
        if max_start < 0:
            return -1
        if ell == 1:
            return 0
        pi = np.zeros(ell, np.int64)
        for p in range(max_start + 1):
            # border of length 1 is the cheapest rejection
            if text[p] == text[p + ell - 1]:
                continue
            k = 0
            for q in range(1, ell):
                c = text[p + q]
                while k > 0 and text[p + k] != c:
                    k = pi[k - 1]
                if text[p + k] == c:
                    k += 1
                pi[q] = k
            if pi[ell - 1] == 0:
                return p
        return -1

    @njit(cache=True)
    def _nb_blocks_distinct(text, start, k, m):
        hashes = np.empty(k, np.uint64)
        for j in range(k):
            h = np.uint64(0xCBF29CE484222325)
            base = start + j * m
            for q in range(m):
                h = (h ^ np.uint64(text[base + q])) * np.uint64(0x100000001B3)
            hashes[j] = h
        order = np.argsort(hashes)
        for a in range(k - 1):
            ja = order[a]
            b = a + 1
            while b < k and hashes[order[b]] == hashes[ja]:
                jb = order[b]
                same = True
                for q in range(m):
                    if text[start + ja * m + q] != text[start + jb * m + q]:
                        same = False
                        break
                if same:
                    return False
                b += 1
        return True


# ---------------------------------------------------------------------------
# numpy backend
# ---------------------------------------------------------------------------


def _np_find_all(text, n, pat):
    tb = text[:n].tobytes()
    pb = pat.tobytes()
    if len(pb) == 0 or n < len(pb):
        return np.empty(0, np.int64)
    out = []
    i = tb.find(pb)
    while i != -1:
        out.append(i)
        i = tb.find(pb, i + 1)
    return np.asarray(out, dtype=np.int64)


def _np_find_first(text, n, pat, start):
    pb = pat.tobytes()
    if len(pb) == 0 or n - start < len(pb):
        return -1
    return text[:n].tobytes().find(pb, start)


def _py_window_unbordered(t, p, ell):
    pi = [0] * ell
    k = 0
    for q in range(1, ell):
        c = t[p + q]
        while k > 0 and t[p + k] != c:
            k = pi[k - 1]
        if t[p + k] == c:
            k += 1
        pi[q] = k
    return pi[ell - 1] == 0


def _np_first_unbordered(text, ell, max_start):
    if max_start < 0:
        return -1
    if ell == 1:
        return 0
    n_pos = max_start + 1
    t = text
    alive = np.ones(n_pos, dtype=bool)
    # vectorized rejection of windows with a border of length <= 8
    for b in range(1, min(ell - 1, 8) + 1):
        eq = np.ones(n_pos, dtype=bool)
        for i in range(b):
            eq &= t[i : i + n_pos] == t[ell - b + i : ell - b + i + n_pos]
        alive &= ~eq
    for p in np.flatnonzero(alive):
        if _py_window_unbordered(t, int(p), ell):
            return int(p)
    return -1


def _np_blocks_distinct(text, start, k, m):
    blocks = text[start : start + k * m].reshape(k, m)
    return np.unique(blocks, axis=0).shape[0] == k


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

_NUMPY_IMPL = {
    "find_all": _np_find_all,
    "find_first": _np_find_first,
    "first_unbordered": _np_first_unbordered,
    "blocks_distinct": _np_blocks_distinct,
}

if _HAVE_NUMBA:
    _NUMBA_IMPL = {
        "find_all": _nb_find_all,
        "find_first": _nb_find_first,
        "first_unbordered": _nb_first_unbordered,
        "blocks_distinct": _nb_blocks_distinct,
    }


def _resolve(name: str) -> str:
    if name not in ("auto", "numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}; expected auto, numba, or numpy")
    if name == "numba" and not _HAVE_NUMBA:
        raise RuntimeError("ANTIPOW_BACKEND=numba but numba is not importable")
    if name == "auto":
        return "numba" if _HAVE_NUMBA else "numpy"
    return name


_active = _resolve(os.environ.get("ANTIPOW_BACKEND", "auto").lower())


def get_backend() -> str:
    return _active


def set_backend(name: str) -> None:
    global _active
    _active = _resolve(name)


def implementations() -> dict:
    """Expose both backends side by side (tests and benchmarks)."""
    impls = {"numpy": _NUMPY_IMPL}
    if _HAVE_NUMBA:
        impls["numba"] = _NUMBA_IMPL
    return impls


def _impl():
    return _NUMBA_IMPL if _active == "numba" else _NUMPY_IMPL


def find_all(text: np.ndarray, pat: np.ndarray, limit: int | None = None) -> np.ndarray:
    """All 0-based occurrence starts of pat in text[:limit], ascending."""
    n = text.shape[0] if limit is None else min(limit, text.shape[0])
    return _impl()["find_all"](text, n, pat)


def find_first(text: np.ndarray, pat: np.ndarray, start: int = 0, limit: int | None = None) -> int:
    """First 0-based occurrence start >= start in text[:limit], or -1."""
    n = text.shape[0] if limit is None else min(limit, text.shape[0])
    return int(_impl()["find_first"](text, n, pat, start))


def first_unbordered(text: np.ndarray, ell: int, max_start: int) -> int:
    """Smallest 0-based p <= max_start with text[p:p+ell] unbordered, or -1.

    Requires len(text) >= max_start + ell.
    """
    return int(_impl()["first_unbordered"](text, ell, max_start))


def blocks_distinct(text: np.ndarray, start: int, k: int, m: int) -> bool:
    """True iff the k length-m blocks at 0-based start are pairwise distinct."""
    return bool(_impl()["blocks_distinct"](text, start, k, m))
