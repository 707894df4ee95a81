"""Shared generators for randomized suites (all seeded, deterministic)."""

import numpy as np

from gmpmat import FiniteGapSet, GmpCoefficients


def random_gap_set(rng, g):
    """A finite gap set with g well-separated gaps."""
    # 2g + 2 edges with pairwise separation >= 0.25
    edges = np.cumsum(rng.uniform(0.25, 1.0, 2 * g + 2))
    edges = edges - edges[len(edges) // 2]
    gaps = tuple((edges[2 * j + 1], edges[2 * j + 2]) for j in range(g))
    return FiniteGapSet(edges[0], edges[-1], gaps)


def random_coeffs(rng, g=None, g_max=3):
    """A random coefficient set (not necessarily GMP: Lambda_k may be <= 0)."""
    if g is None:
        g = int(rng.integers(1, g_max + 1))
    poles = np.cumsum(rng.uniform(0.5, 2.0, g)) if g else np.empty(0)
    poles = poles - (poles[-1] / 2 if g else 0.0)
    p = rng.uniform(0.2, 1.5, g + 1)
    q = rng.uniform(-1.2, 1.2, g + 1)
    return GmpCoefficients(tuple(poles), tuple(p), tuple(q))


def random_point(rng, box=3.0, min_imag=1e-3):
    """A random point of the open upper half plane."""
    return complex(rng.uniform(-box, box), rng.uniform(min_imag, box))
