"""Transfer matrices, discriminants and residues of periodic operators.

One period of the operator is encoded in a 2x2 product of elementary
factors, one per pole plus one for infinity; the trace of the product is
the discriminant.  Two independent routes are provided: the direct
factor product and a resolvent-based construction from the single
diagonal block, which must agree identically.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .gmp import build_blocks


@dataclass(frozen=True)
class DiscriminantCoefficients:
    """Partial-fraction data of the trace: nu0*z + d0 + sum nus_k/(c_k - z)."""

    nu0: float
    d0: float
    nus: tuple

    def to_dict(self):
        return {"nu0": self.nu0, "d0": self.d0, "nus": list(self.nus)}


def factor_infinity(z, p, q):
    """Elementary factor for the pole at infinity: [[0, -p], [1/p, (z-pq)/p]]."""
    if p == 0:
        raise DomainError("factor_infinity requires p != 0")
    dtype = complex if np.iscomplexobj(z) else float
    return np.array([[0.0, -p], [1.0 / p, (z - p * q) / p]], dtype=dtype)


def _rank_one_j(p, q):
    # [p; q] [p q] j with j = [[0,-1],[1,0]]
    return np.array([[p * q, -p * p], [q * q, -p * q]])


def factor_pole(z, c, p, q):
    """Elementary factor for a finite pole: I - (1/(c-z)) [p;q][p q] j."""
    if z == c:
        raise DomainError(f"factor evaluated at its pole c = {c}")
    return np.eye(2) - _rank_one_j(p, q) / (c - z)


def transfer(coeffs, z):
    """Ordered one-period product; unimodular (det = 1) by construction."""
    for c in coeffs.poles:
        if z == c:
            raise DomainError(f"transfer matrix evaluated at pole c = {c}")
    pairs = coeffs.pairs
    M = np.eye(2, dtype=complex if np.iscomplexobj(z) else float)
    for m in range(coeffs.g):
        M = M @ factor_pole(z, coeffs.poles[m], *pairs[m])
    return M @ factor_infinity(z, *pairs[coeffs.g])


def discriminant_of(coeffs, z):
    """Trace of the one-period transfer matrix."""
    M = transfer(coeffs, z)
    return M[0, 0] + M[1, 1]


def lambda_k(coeffs, k):
    """Negative residue of the discriminant at pole c_k, in closed form.

    The product formula replaces the k-th elementary factor by the
    rank-one matrix [p;q][p q] j of the (k-1)-th coefficient pair.
    """
    g = coeffs.g
    if not 1 <= k <= g:
        raise DomainError(f"k must be in 1..{g}")
    ck = coeffs.poles[k - 1]
    pairs = coeffs.pairs
    M = np.eye(2)
    for m in range(k - 1):
        M = M @ factor_pole(ck, coeffs.poles[m], *pairs[m])
    M = M @ _rank_one_j(*pairs[k - 1])
    for m in range(k, g):
        M = M @ factor_pole(ck, coeffs.poles[m], *pairs[m])
    M = M @ factor_infinity(ck, *pairs[g])
    return -(M[0, 0] + M[1, 1])


def lambda_k_residue(coeffs, k, h_rel=1e-6):
    """Numeric residue oracle: limit of (c_k - z) * trace at z -> c_k.

    One-sided limit at z = c_k + h with one Richardson extrapolation step
    to remove the O(h) error of the simple pole.
    """
    g = coeffs.g
    if not 1 <= k <= g:
        raise DomainError(f"k must be in 1..{g}")
    ck = coeffs.poles[k - 1]
    h = h_rel * (1.0 + abs(ck))

    def f(step):
        z = ck + step
        return (ck - z) * discriminant_of(coeffs, z)

    return 2.0 * f(h / 2.0) - f(h)


def discriminant_coeffs(coeffs):
    """Partial-fraction coefficients of the discriminant.

    nu0 = 1/p_g, d0 = -q_g - nu0 * sum_{j<g} p_j q_j, and the residue
    weights are the Lambda_k.  The reconstruction
    nu0*z + d0 + sum nus_k/(c_k - z) equals the trace pointwise.
    """
    g = coeffs.g
    p, q = np.asarray(coeffs.p), np.asarray(coeffs.q)
    nu0 = 1.0 / p[g]
    d0 = -q[g] - nu0 * float(np.dot(p[:g], q[:g]))
    nus = tuple(lambda_k(coeffs, k) for k in range(1, g + 1))
    return DiscriminantCoefficients(nu0, d0, nus)


def transfer_from_resolvent(coeffs, z):
    """Second route: transfer matrix from resolvent entries of one block B.

    With R(z,x,y) = <(B - z)^{-1} x, y> for x, y in {p, e_g}, the matrix

        (1/R(z,p,g)) [[R_pp R_gg - R_pg^2, -R_pp], [R_gg, -1]]

    coincides with the factor product.
    """
    _, B = build_blocks(coeffs)
    g = coeffs.g
    p = np.asarray(coeffs.p, dtype=complex)
    delta_g = np.zeros(g + 1, dtype=complex)
    delta_g[g] = 1.0
    shifted = B.astype(complex) - z * np.eye(g + 1)
    try:
        sol = np.linalg.solve(shifted, np.column_stack([p, delta_g]))
    except np.linalg.LinAlgError:
        raise DomainError("B - z is singular") from None
    xp, xd = sol[:, 0], sol[:, 1]
    Rpp = p @ xp
    Rpg = xp[g]
    Rgg = xd[g]
    if abs(Rpg) < 1e-14 * (1.0 + abs(Rpp) + abs(Rgg)):
        raise DomainError("R(z, p, g) vanishes; retry at a perturbed z")
    return (
        np.array([[Rpp * Rgg - Rpg * Rpg, -Rpp], [Rgg, -1.0]], dtype=complex) / Rpg
    )


def _mirror_factor_infinity(z, p, q):
    if p == 0:
        raise DomainError("mirror factor requires p != 0")
    dtype = complex if np.iscomplexobj(z) else float
    return np.array([[0.0, -1.0 / p], [p, (z - p * q) / p]], dtype=dtype)


def _mirror_factor_pole(z, c, p, q):
    if z == c:
        raise DomainError(f"factor evaluated at its pole c = {c}")
    return np.eye(2) - _rank_one_j(q, p) / (c - z)


def mirror_transfer(coeffs, z):
    """Transfer matrix of the left half-line resolvent.

    Product runs in reverse order with the roles of p and q swapped in
    the pole factors; entrywise it relates to the direct transfer matrix
    by m11 = m11^-, m22 = m22^-, m12 = -m21^-, m21 = -m12^-.
    """
    for c in coeffs.poles:
        if z == c:
            raise DomainError(f"transfer matrix evaluated at pole c = {c}")
    pairs = coeffs.pairs
    g = coeffs.g
    M = _mirror_factor_infinity(z, *pairs[g])
    for m in range(g - 1, -1, -1):
        M = M @ _mirror_factor_pole(z, coeffs.poles[m], *pairs[m])
    return M
