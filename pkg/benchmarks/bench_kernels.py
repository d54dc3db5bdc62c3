#!/usr/bin/env python3
"""Compare the numba kernels against the pure-numpy fallback.

Usage: python benchmarks/bench_kernels.py [--repeats N]

Runs each kernel on workloads shaped like a large replay (many windows x
delta scan x daily grid) and prints a timing table. The fallback path is
what you get with LOCKPLAN_DISABLE_NUMBA=1.
"""

import argparse
import time

import numpy as np

from lockplan import kernels


def time_fn(fn, *args, repeats):
    fn(*args)  # warm-up (numba compilation)
    best = float("inf")
    for _ in range(repeats):
        started = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - started)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeats", type=int, default=20)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    coeffs = np.array([0.006, -0.518, 16.088, -175.330, 1344.983])
    small_ts = np.arange(60, 96, dtype=np.float64)          # one delta scan
    big_ts = rng.uniform(1, 100, size=2_000_000)            # bulk replay
    design_ts = np.arange(1, 61, dtype=np.float64)

    cases = [
        ("horner 36 pts", kernels._horner_numpy,
         lambda f: f(coeffs, small_ts)),
        ("horner 2M pts", kernels._horner_numpy,
         lambda f: f(coeffs, big_ts)),
        ("design 60x5", lambda ts: kernels._design_numpy(ts, 4),
         lambda f: f(design_ts)),
    ]

    print(f"{'kernel':<16}{'numpy (ms)':>14}{'numba (ms)':>14}{'speedup':>10}")
    if not kernels.USE_NUMBA:
        print("numba path disabled (LOCKPLAN_DISABLE_NUMBA set or numba "
              "missing); only the numpy fallback is timed")
    for name, numpy_fn, run in cases:
        t_numpy = time_fn(lambda: run(numpy_fn), repeats=args.repeats)
        if kernels.USE_NUMBA:
            numba_fn = (kernels._horner_njit if "horner" in name
                        else lambda ts: kernels._design_njit(ts, 4))
            t_numba = time_fn(lambda: run(numba_fn), repeats=args.repeats)
            print(f"{name:<16}{t_numpy * 1e3:>14.4f}{t_numba * 1e3:>14.4f}"
                  f"{t_numpy / t_numba:>10.2f}x")
        else:
            print(f"{name:<16}{t_numpy * 1e3:>14.4f}{'-':>14}{'-':>10}")


if __name__ == "__main__":
    main()
