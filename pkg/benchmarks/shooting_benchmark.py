#!/usr/bin/env python3
"""Benchmark the shooting-kernel backends (numba @njit vs pure numpy).

Runs the same mismatch sweep through both implementations, checks they agree,
and prints wall times. The numba timing is reported after a warmup call so
JIT compilation is not billed to the kernel.

Usage:
    python benchmarks/shooting_benchmark.py [--energies N] [--h H] [--x-max X]
"""

import argparse
import time

import numpy as np

from salpeter_hulthen import MassConfig, PotentialParams
from salpeter_hulthen._kernels import HAVE_NUMBA
from salpeter_hulthen.oracle import mismatch_sweep


def time_backend(backend, params, masses, energies, h, x_max, repeats=3):
    best = np.inf
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = mismatch_sweep(params, masses, energies, h=h, x_max=x_max,
                                backend=backend)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--energies", type=int, default=400)
    parser.add_argument("--h", type=float, default=0.005)
    parser.add_argument("--x-max", type=float, default=90.0)
    args = parser.parse_args()

    params = PotentialParams(0.9, 1.0, 1.0)
    masses = MassConfig.equal(1.0)
    energies = np.linspace(-1.9, -0.005, args.energies)
    steps = int(args.x_max / args.h)
    print(f"sweep: {args.energies} energies x {steps} RK4 steps "
          f"(h={args.h}, x_max={args.x_max})")

    t_np, ref = time_backend("numpy", params, masses, energies, args.h, args.x_max)
    print(f"numpy  backend: {t_np:8.3f} s")

    if not HAVE_NUMBA:
        print("numba  backend: unavailable (install numba or unset SALPETER_BACKEND)")
        return

    t0 = time.perf_counter()
    mismatch_sweep(params, masses, energies[:4], h=args.h, x_max=args.x_max,
                   backend="numba")
    warmup = time.perf_counter() - t0
    t_nb, out = time_backend("numba", params, masses, energies, args.h, args.x_max)
    agree = np.max(np.abs(out - ref))
    print(f"numba  backend: {t_nb:8.3f} s  (warmup/JIT {warmup:.2f} s)")
    print(f"speedup: {t_np / t_nb:6.1f}x   max |numba - numpy| = {agree:.3e}")


if __name__ == "__main__":
    main()
