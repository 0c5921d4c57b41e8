"""Benchmark the compiled vs pure-Python GF(p) panel kernels.

Usage: python benchmarks/bench_rank.py [--sizes 500,1000,2000] [--p 5]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from quadrichk.gfp import BACKEND, rank_mod_p
from quadrichk.gfp._fallback import panel_eliminate as pure_kernel

try:
    from quadrichk.gfp._speedups import panel_eliminate as compiled_kernel
except ImportError:
    compiled_kernel = None


def bench(size: int, p: int, kernel, repeats: int = 3) -> tuple[int, float]:
    rng = np.random.default_rng(12345)
    base = rng.integers(0, p, size=(size, size))
    best = float("inf")
    rank = -1
    for _ in range(repeats):
        mat = base.copy()
        t0 = time.perf_counter()
        rank = rank_mod_p(mat, p, kernel=kernel)
        best = min(best, time.perf_counter() - t0)
    return rank, best


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--sizes", default="500,1000,2000")
    parser.add_argument("--p", type=int, default=5)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    print(f"selected backend at import: {BACKEND}")
    header = f"{'size':>6} {'pure (s)':>10} {'compiled (s)':>13} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for size in sizes:
        rank_pure, t_pure = bench(size, args.p, pure_kernel)
        if compiled_kernel is not None:
            rank_c, t_c = bench(size, args.p, compiled_kernel)
            assert rank_pure == rank_c, "kernels disagree on rank"
            print(f"{size:>6} {t_pure:>10.3f} {t_c:>13.3f} {t_pure / t_c:>8.2f}x")
        else:
            print(f"{size:>6} {t_pure:>10.3f} {'n/a':>13} {'n/a':>8}")


if __name__ == "__main__":
    main()
