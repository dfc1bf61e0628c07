"""Compare the numba and numpy kernel backends on the hot paths.

Usage:
    python3 benchmarks/bench_backends.py [--pop 2000] [--d 1000] [--repeats 5]

Times the bulk PDAF profile kernel, the fused min-PDAF kernel, and one
full optimizer run, for small and large element counts.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from risbeam import AngularGrid, ArrayGeometry, GaConfig, run_cga
from risbeam._kernels import (
    available_backends,
    min_pdaf_many,
    pdaf_profile_many,
    steering_tables,
    warmup,
)

TWO_PI = 2.0 * np.pi


def best_of(repeats: int, fn) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--pop", type=int, default=2000)
    parser.add_argument("--d", type=int, default=1000)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    backends = available_backends()
    for b in backends:
        warmup(b)

    rng = np.random.default_rng(0)
    grid = AngularGrid(args.d)
    rows = []
    for m in (13, 64):
        pop = rng.uniform(0.0, TWO_PI, (args.pop, m))
        st_re, st_im = steering_tables(m, 0.5, 0.0, grid.points)
        for kernel, fn in (
            ("profile", pdaf_profile_many),
            ("min", min_pdaf_many),
        ):
            times = {
                b: best_of(args.repeats, lambda b=b: fn(pop, st_re, st_im, b))
                for b in backends
            }
            rows.append((f"{kernel} m={m} pop={args.pop} d={args.d}", times))

    ga_cfg = dict(population_size=400, generations=30, grid_d=args.d)
    for m in (13, 64):
        geom = ArrayGeometry(m, 0.5, 0.0)
        times = {
            b: best_of(
                max(1, args.repeats // 2),
                lambda b=b: run_cga(GaConfig(**ga_cfg, seed=0), geom, b),
            )
            for b in backends
        }
        rows.append((f"optimizer m={m} pop=400 gens=30", times))

    width = max(len(name) for name, _ in rows)
    header = f"{'case'.ljust(width)}  " + "  ".join(f"{b:>10}" for b in backends)
    if len(backends) == 2:
        header += f"  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, times in rows:
        line = name.ljust(width) + "  "
        line += "  ".join(f"{times[b] * 1e3:8.2f}ms" for b in backends)
        if len(backends) == 2:
            a, b = (times[x] for x in backends)
            line += f"  {b / a:7.2f}x"
        print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
