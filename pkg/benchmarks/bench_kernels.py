"""Benchmark the numba kernels against the pure-numpy fallbacks.

Runs each backend registered in antipow._kernels.implementations() on three
workloads that dominate real runs:

  * find_all       -- occurrence scan over a long aperiodic prefix
  * first_unbordered -- border-free window scan, worst case (periodic text,
                        every window bordered, no early exit)
  * blocks_distinct  -- gamma-style sweep over block lengths

Numba JIT compilation happens during warmup so the timed region measures
steady-state throughput only.  The dispatch layer (ANTIPOW_BACKEND) is
bypassed on purpose: raw callables from implementations() are timed.

Usage:
    python3 benchmarks/bench_kernels.py [--size 1048576] [--repeats 5]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from antipow._kernels import implementations
from antipow.morphism import fixed_point, parse_morphism


def best_of(fn, repeats: int) -> float:
    """Minimum wall time over repeats, in seconds."""
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def build_workloads(size: int):
    tm = fixed_point(parse_morphism("0:01,1:10"))
    text = tm.prefix_array(size)
    # (01)^omega: no unbordered window of length >= 3, forces a full scan
    periodic = np.tile(np.array([0, 1], dtype=np.uint8), size // 2)
    pat_short = text[157:165].copy()
    pat_long = text[157:258].copy()

    def search_short(impl):
        return impl["find_all"](text, size, pat_short)

    def search_long(impl):
        return impl["find_all"](text, size, pat_long)

    def unbordered(impl):
        return impl["first_unbordered"](periodic, 101, size - 102)

    def gamma_sweep(impl):
        hits = 0
        for m in range(1, 2049):
            hits += impl["blocks_distinct"](text, 0, 5, m)
        return hits

    return [
        (f"find_all, pattern len 8, n={size}", search_short),
        (f"find_all, pattern len 101, n={size}", search_long),
        (f"first_unbordered, ell=101, no hit, n={size}", unbordered),
        ("blocks_distinct, k=5, m=1..2048", gamma_sweep),
    ]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--size", type=int, default=1 << 20,
                        help="prefix length for the text workloads")
    parser.add_argument("--repeats", type=int, default=5,
                        help="timed runs per workload; best is reported")
    args = parser.parse_args()

    impls = implementations()
    workloads = build_workloads(args.size)

    # warmup: one untimed call per (backend, workload) pair
    for impl in impls.values():
        for _, fn in workloads:
            fn(impl)

    names = list(impls)
    width = max(len(label) for label, _ in workloads)
    header = f"{'workload':<{width}}" + "".join(f"  {n:>12}" for n in names)
    if {"numpy", "numba"} <= set(names):
        header += f"  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for label, fn in workloads:
        timed = {n: best_of(lambda i=impls[n]: fn(i), args.repeats) for n in names}
        row = f"{label:<{width}}"
        for n in names:
            row += f"  {timed[n] * 1e3:>10.2f}ms"
        if {"numpy", "numba"} <= set(names):
            row += f"  {timed['numpy'] / timed['numba']:>7.1f}x"
        print(row)


if __name__ == "__main__":
    main()
