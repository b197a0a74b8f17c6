#!/usr/bin/env python3
"""Benchmark the capacity-sequence kernel: numba vs pure numpy.

Workloads mirror the real dichotomy checks: the k-th capacity comparison
at step n needs the first K_n + 1 values of N(g_n, g_{n+2}) and N(1, 1),
with K_8 already over 1.2 million terms.

Run:  python benchmarks/bench_kernels.py [--repeat 5]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from staircap._kernels import HAVE_NUMBA, sorted_pair_sums
from staircap.fibonacci import odd_fib


def workload_sizes(n_values=(4, 6, 8)):
    for n in n_values:
        g0, g1, g2 = odd_fib(n), odd_fib(n + 1), odd_fib(n + 2)
        count = (g1 * g1 + 3 * g1) // 2 + 1
        yield n, g0, g2, count


def run(backend: str, repeat: int) -> None:
    print(f"--- backend: {backend} ---")
    for n, p, q, count in workload_sizes():
        best = float("inf")
        for _ in range(repeat):
            t0 = time.perf_counter()
            out = sorted_pair_sums(p, q, count, backend=backend)
            best = min(best, time.perf_counter() - t0)
        rate = count / best / 1e6
        print(f"  step n={n}: N({p},{q}) x {count:>9,} terms  "
              f"{best * 1e3:8.2f} ms  ({rate:6.1f} M terms/s)  tail={int(out[-1])}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    if HAVE_NUMBA:
        # trigger JIT outside the timed region
        sorted_pair_sums(2, 5, 100, backend="numba")
        run("numba", args.repeat)
    else:
        print("numba not importable; skipping the compiled path")
    run("numpy", args.repeat)

    # agreement spot check on the largest workload
    n, p, q, count = list(workload_sizes())[-1]
    a = sorted_pair_sums(p, q, count, backend="numpy")
    if HAVE_NUMBA:
        b = sorted_pair_sums(p, q, count, backend="numba")
        assert bool(np.array_equal(a, b)), "backends disagree"
        print("backends agree on the largest workload")


if __name__ == "__main__":
    main()
