"""Benchmark the compiled grid kernels against the NumPy fallback.

Runs grid_max_threshold and grid_min_margin on both lanes over the same
windows and reports best-of-N wall times plus the speedup. Invoke as

    python3 benchmarks/bench_kernels.py [--n 100000 1000000] [--repeat 5]
"""

import argparse
import math
import time

from unimodal_lab import _kernels_py

try:
    from unimodal_lab import _kernels
except ImportError:
    _kernels = None


def best_of(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[100_000, 1_000_000])
    ap.add_argument("--repeat", type=int, default=5)
    opts = ap.parse_args()

    if _kernels is None:
        print("compiled kernels unavailable; nothing to compare")
        return

    rows = []
    for k in (9, 24):
        lo, hi = math.pi / k, 2.0 * math.pi / k
        guard = 1e-8 * math.pi / k
        m = float(k**4 // 3)
        for n in opts.n:
            cases = [
                ("grid_max_threshold", (k, lo, hi, n, guard)),
                ("grid_min_margin", (m, k, lo, hi, n, guard)),
            ]
            for name, args in cases:
                tc = best_of(getattr(_kernels, name), args, opts.repeat)
                tp = best_of(getattr(_kernels_py, name), args, opts.repeat)
                rows.append((name, k, n, tc * 1e3, tp * 1e3, tp / tc))

    head = f"{'kernel':<22}{'k':>4}{'n':>10}{'compiled ms':>14}{'numpy ms':>12}{'speedup':>10}"
    print(head)
    print("-" * len(head))
    for name, k, n, tc, tp, sp in rows:
        print(f"{name:<22}{k:>4}{n:>10}{tc:>14.3f}{tp:>12.3f}{sp:>10.2f}x")


if __name__ == "__main__":
    main()
