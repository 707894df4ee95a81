"""Grid-evaluation kernels for transfer matrices and discriminants.

Evaluating the one-period 2x2 product over large grids of z is the hot
inner loop of the CLI sampling commands and the benchmark.  Two
implementations are provided: a numba @njit scalar loop and a pure-numpy
vectorized fallback.  Selection: numba is used when importable unless
the environment variable GMPMAT_DISABLE_NUMBA is set to a non-empty
value other than "0".
"""

import os

import numpy as np

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via env flag instead
    _HAVE_NUMBA = False

_DISABLED = os.environ.get("GMPMAT_DISABLE_NUMBA", "0") not in ("", "0")
USE_NUMBA = _HAVE_NUMBA and not _DISABLED


def _transfer_grid_numpy(p, q, c, zs):
    """Vectorized over zs; loops only over the g+1 factors."""
    zs = np.asarray(zs, dtype=complex)
    g = len(c)
    m11 = np.ones_like(zs)
    m12 = np.zeros_like(zs)
    m21 = np.zeros_like(zs)
    m22 = np.ones_like(zs)
    for k in range(g):
        u = 1.0 / (c[k] - zs)
        pq, pp, qq = p[k] * q[k], p[k] * p[k], q[k] * q[k]
        # factor = I - u * [[pq, -pp], [qq, -pq]]
        f11, f12 = 1.0 - u * pq, u * pp
        f21, f22 = -u * qq, 1.0 + u * pq
        n11 = m11 * f11 + m12 * f21
        n12 = m11 * f12 + m12 * f22
        n21 = m21 * f11 + m22 * f21
        n22 = m21 * f12 + m22 * f22
        m11, m12, m21, m22 = n11, n12, n21, n22
    pg, qg = p[g], q[g]
    f11, f12 = 0.0, -pg
    f21 = 1.0 / pg
    f22 = (zs - pg * qg) / pg
    n11 = m11 * f11 + m12 * f21
    n12 = m11 * f12 + m12 * f22
    n21 = m21 * f11 + m22 * f21
    n22 = m21 * f12 + m22 * f22
    return n11, n12, n21, n22


def _transfer_grid_scalar(p, q, c, zs):
    g = len(c)
    n = zs.shape[0]
    out11 = np.empty(n, dtype=np.complex128)
    out12 = np.empty(n, dtype=np.complex128)
    out21 = np.empty(n, dtype=np.complex128)
    out22 = np.empty(n, dtype=np.complex128)
    pg, qg = p[g], q[g]
    for i in range(n):
        z = zs[i]
        m11 = 1.0 + 0.0j
        m12 = 0.0 + 0.0j
        m21 = 0.0 + 0.0j
        m22 = 1.0 + 0.0j
        for k in range(g):
            u = 1.0 / (c[k] - z)
            pq = p[k] * q[k]
            f11 = 1.0 - u * pq
            f12 = u * p[k] * p[k]
            f21 = -u * q[k] * q[k]
            f22 = 1.0 + u * pq
            n11 = m11 * f11 + m12 * f21
            n12 = m11 * f12 + m12 * f22
            n21 = m21 * f11 + m22 * f21
            n22 = m21 * f12 + m22 * f22
            m11, m12, m21, m22 = n11, n12, n21, n22
        fz = (z - pg * qg) / pg
        out11[i] = m12 / pg
        out12[i] = -m11 * pg + m12 * fz
        out21[i] = m22 / pg
        out22[i] = -m21 * pg + m22 * fz
    return out11, out12, out21, out22


if _HAVE_NUMBA:
    _transfer_grid_jit = njit(cache=True)(_transfer_grid_scalar)


def transfer_grid(coeffs, zs):
    """Entries (m11, m12, m21, m22) of the transfer matrix over a z grid."""
    p = np.asarray(coeffs.p, dtype=float)
    q = np.asarray(coeffs.q, dtype=float)
    c = np.asarray(coeffs.poles, dtype=float)
    zs = np.ascontiguousarray(zs, dtype=np.complex128)
    if USE_NUMBA:
        return _transfer_grid_jit(p, q, c, zs)
    return _transfer_grid_numpy(p, q, c, zs)


def discriminant_grid(coeffs, zs):
    """Trace of the transfer matrix over a z grid."""
    m11, _, _, m22 = transfer_grid(coeffs, zs)
    return m11 + m22
