"""Closed-form resolvent functions and truncation-based oracles.

The half-line resolvent values are the two roots of the quadratic

    m21 x^2 + (m22 - m11) x - m12 = 0

built from the one-period transfer matrix: x = a0^2 r_+ is the root with
positive imaginary part on the upper half plane and x = 1/r_- the other.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DomainError
from .gmp import assemble
from .transfer import transfer


@dataclass(frozen=True)
class ResolventValue:
    """Roots of the transfer quadratic at a point z.

    r_plus holds a0^2 * r_+(z), r_minus_inv holds 1/r_-(z); a0 = ||p||.
    """

    r_plus: complex
    r_minus_inv: complex
    a0: float


def _roots_at(M):
    V = M[0, 0] - M[1, 1]
    tr = M[0, 0] + M[1, 1]
    a21 = M[1, 0]
    s = np.sqrt(tr * tr - 4.0 + 0.0j)
    return V, a21, s


def resolvent_pair(coeffs, z):
    """Both resolvent roots at z with the Herglotz branch selected.

    Both square-root candidates are computed and the one with positive
    imaginary part is assigned to a0^2 r_+ (negative imaginary part to
    1/r_-).  For real z off the spectrum the branch is fixed by the limit
    from the upper half plane.
    """
    z = complex(z)
    M = transfer(coeffs, z)
    V, a21, s = _roots_at(M)
    if abs(a21) < 1e-14 * (1.0 + abs(V)):
        raise DomainError("transfer entry m21 vanishes; retry at a perturbed z")
    cand = ((V + s) / (2.0 * a21), (V - s) / (2.0 * a21))
    if cand[0].imag == cand[1].imag:
        # real z in a gap: both roots real; decide by the limit from above
        delta = 1e-9 * (1.0 + abs(z))
        Mu = transfer(coeffs, z + 1j * delta)
        Vu, a21u, su = _roots_at(Mu)
        plus_first = ((Vu + su) / (2.0 * a21u)).imag > 0
    else:
        plus_first = cand[0].imag > cand[1].imag
    if z.imag < 0:
        plus_first = not plus_first
    r_plus, r_minus_inv = (cand[0], cand[1]) if plus_first else (cand[1], cand[0])
    a0 = float(np.linalg.norm(coeffs.p))
    return ResolventValue(r_plus, r_minus_inv, a0)


def resolvent_matrix(coeffs, z):
    """2x2 matrix resolvent at z from the closed-form representation.

    Defined on the upper half plane and extended by symmetry
    R(conj(z)) = conj(R(z)).  Its inverse is [[1/r_-, a0], [a0, 1/r_+]].
    """
    z = complex(z)
    if z.imag < 0:
        return np.conj(resolvent_matrix(coeffs, z.conjugate()))
    rv = resolvent_pair(coeffs, z)
    M = transfer(coeffs, z)
    V = M[0, 0] - M[1, 1]
    a21 = M[1, 0]
    a12 = M[0, 1]
    s = 2.0 * a21 * rv.r_plus - V  # branch consistent with the r_+ selection
    if abs(s) < 1e-13:
        raise DomainError("branch degenerate: z lies on the band set")
    a0 = rv.a0
    core = np.array(
        [[-2.0 * a0 * a0 * a21, a0 * V], [a0 * V, 2.0 * a12]], dtype=complex
    ) / (2.0 * a0 * a0 * s)
    return core + np.array([[0.0, 1.0], [1.0, 0.0]]) / (2.0 * a0)


def reflectionless_check(coeffs, x, eps=1e-6):
    """Defect of the reflectionless relation 1/r_+ = a0^2 conj(r_-) at x + i*eps.

    O(eps) on band interiors; O(1) in gaps, where both roots are real.
    """
    if eps <= 0:
        raise DomainError("eps must be positive")
    rv = resolvent_pair(coeffs, float(x) + 1j * eps)
    a0sq = rv.a0 * rv.a0
    return float(abs(a0sq / rv.r_plus - a0sq / np.conj(rv.r_minus_inv)))


def truncation_resolvent_oracle(coeffs, z, n_periods=400):
    """Numerical oracle for (r_+, r_-) from banded finite sections.

    The right half-line operator is the open-boundary truncation starting
    at block 0 with cyclic vector p/||p|| on the first block; the left
    half-line operator ends at the last index with cyclic vector e_{-1}.
    """
    z = complex(z)
    if z.imag == 0:
        raise DomainError("oracle needs z off the real axis")
    op = assemble(coeffs, n_periods)
    ab = op.full_band(dtype=complex)
    hb = op.half_bandwidth
    ab[hb, :] -= z
    p = np.asarray(coeffs.p)
    a0 = float(np.linalg.norm(p))
    e0 = np.zeros(op.n, dtype=complex)
    e0[: coeffs.g + 1] = p / a0
    em1 = np.zeros(op.n, dtype=complex)
    em1[-1] = 1.0
    sols = scipy.linalg.solve_banded((hb, hb), ab, np.column_stack([e0, em1]))
    r_plus_num = e0 @ sols[:, 0]
    r_minus_num = sols[-1, 1]
    return r_plus_num, r_minus_num
