"""Timing comparison of the jit kernels against the pure-numpy fallback.

Runs the four hot kernels (common-extension table, per-row frequency
counts, windowed DTW table, coverage dynamic program) on year-scale
inputs and prints per-backend times and the speedup.  Backends are
imported directly, so the SEGSIM_NO_NUMBA dispatch flag plays no role
here.

Usage: python3 benchmarks/bench_kernels.py [--length 365] [--repeats 5]
"""

import argparse
import time

import numpy as np

from segsim._kernels import jit, plain
from segsim.fluctuation import _qualify
from segsim.rounding import quantize_hundredths


def _inputs(length, seed=0):
    rng = np.random.default_rng(seed)
    x = rng.normal(size=length)
    y = rng.normal(size=length)
    # fluctuation-like integer hundredth codes from a small alphabet so
    # the common-extension table has realistic runs
    a = quantize_hundredths(rng.integers(0, 40, size=length - 1) / 4.0)
    o = quantize_hundredths(rng.integers(0, 40, size=length - 1) / 4.0)
    lo = np.zeros(length, dtype=np.int64)
    hi = np.full(length, length - 1, dtype=np.int64)
    return x, y, a, o, lo, hi


def _best_of(repeats, fn, *args):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--length", type=int, default=365,
                        help="points per series (default 365, one year daily)")
    parser.add_argument("--repeats", type=int, default=5,
                        help="timing repeats, best is reported (default 5)")
    args = parser.parse_args()

    x, y, a, o, lo, hi = _inputs(args.length)
    lce_a = plain.lce_table(a, a)
    n = len(a)

    cases = {
        "lce_table": lambda k: k.lce_table(a, o),
        "count_ge": lambda k: k.count_ge(lce_a, n),
        "dtw_table": lambda k: k.dtw_table(x, y, lo, hi, False),
        "coverage_dp": None,  # filled in below, needs the qual table
    }

    # one qualification table, built once, as coverage_dp input
    qual, _, _ = _qualify(a, o)
    cases["coverage_dp"] = lambda k: k.coverage_dp(qual)

    print(f"kernel benchmark, length={args.length}, "
          f"best of {args.repeats} runs")
    print(f"{'kernel':<14}{'plain':>12}{'jit':>12}{'speedup':>10}")
    for name, call in cases.items():
        call(jit)  # warm: first jit call pays compilation
        t_plain = _best_of(args.repeats, call, plain)
        t_jit = _best_of(args.repeats, call, jit)
        ratio = t_plain / t_jit if t_jit > 0 else float("inf")
        print(f"{name:<14}{t_plain * 1e3:>10.3f}ms{t_jit * 1e3:>10.3f}ms"
              f"{ratio:>9.1f}x")


if __name__ == "__main__":
    main()
