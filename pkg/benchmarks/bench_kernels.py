"""Benchmark: numba kernel vs pure-numpy fallback for grid evaluation.

Times the transfer-matrix grid kernel over increasing grid sizes for a
few genus values and prints a comparison table.  Run directly:

    python benchmarks/bench_kernels.py [--sizes 1000,10000,100000]
"""

import argparse
import time

import numpy as np

from gmpmat import _kernels
from gmpmat.gmp import GmpCoefficients


def _sample_coeffs(g, seed=0):
    rng = np.random.default_rng(seed)
    poles = np.cumsum(rng.uniform(0.5, 2.0, g)) if g else np.empty(0)
    p = rng.uniform(0.2, 1.5, g + 1)
    q = rng.uniform(-1.2, 1.2, g + 1)
    return GmpCoefficients(tuple(poles), tuple(p), tuple(q))


def _time(fn, *args, repeats=5):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--sizes", default="1000,10000,100000")
    parser.add_argument("--genus", default="1,3")
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    genus = [int(s) for s in args.genus.split(",")]

    if not _kernels._HAVE_NUMBA:
        print("numba not importable; only the numpy path is timed")

    print(f"{'g':>3} {'n':>9} {'numpy [ms]':>12} {'numba [ms]':>12} {'speedup':>8}")
    for g in genus:
        coeffs = _sample_coeffs(g)
        p = np.asarray(coeffs.p)
        q = np.asarray(coeffs.q)
        c = np.asarray(coeffs.poles)
        for n in sizes:
            rng = np.random.default_rng(1)
            zs = (rng.uniform(-3, 3, n) + 1j * rng.uniform(0.1, 2.0, n)).astype(
                np.complex128
            )
            t_np = _time(_kernels._transfer_grid_numpy, p, q, c, zs)
            if _kernels._HAVE_NUMBA:
                _kernels._transfer_grid_jit(p, q, c, zs[:8])  # compile
                t_nb = _time(_kernels._transfer_grid_jit, p, q, c, zs)
                print(
                    f"{g:>3} {n:>9} {1e3 * t_np:>12.3f} {1e3 * t_nb:>12.3f}"
                    f" {t_np / t_nb:>8.2f}"
                )
            else:
                print(f"{g:>3} {n:>9} {1e3 * t_np:>12.3f} {'-':>12} {'-':>8}")


if __name__ == "__main__":
    main()
