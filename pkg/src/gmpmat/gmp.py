"""Block operators of class A and GMP membership tests.

A class-A operator is a (g+1)-block Jacobi matrix with diagonal blocks

    B = strict_upper(q p^T) + lower_with_diag(p q^T) + diag(c_1..c_g, 0)

and off-diagonal blocks A = e_g p^T (only the last row nonzero).  The
one-block-periodic case is generated by a single coefficient pair
(p, q) in R^{g+1} together with the ordered pole list C.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DomainError


@dataclass(frozen=True)
class GmpCoefficients:
    """Generating data of a one-block-periodic class-A operator.

    ``poles`` holds the g distinct reals c_1..c_g; ``p`` and ``q`` are the
    length g+1 generating vectors.  Requires p[g] > 0.  The sign ambiguity
    (p_j, q_j) -> (-p_j, -q_j) for j < g is fixed by storing p_j >= 0
    (and q_j >= 0 whenever p_j = 0).
    """

    poles: tuple
    p: tuple
    q: tuple

    def __post_init__(self):
        poles = tuple(float(c) for c in self.poles)
        p = [float(v) for v in self.p]
        q = [float(v) for v in self.q]
        g = len(poles)
        if len(p) != g + 1 or len(q) != g + 1:
            raise DomainError(f"p and q must have length g+1 = {g + 1}")
        if len(set(poles)) != g:
            raise DomainError("poles must be distinct")
        if p[g] <= 0:
            raise DomainError("p_g must be positive")
        for j in range(g):
            if p[j] < 0 or (p[j] == 0 and q[j] < 0):
                p[j], q[j] = -p[j], -q[j]
        object.__setattr__(self, "poles", poles)
        object.__setattr__(self, "p", tuple(p))
        object.__setattr__(self, "q", tuple(q))

    @property
    def g(self):
        return len(self.poles)

    @property
    def pairs(self):
        """The scalar pairs (p_j, q_j), j = 0..g."""
        return list(zip(self.p, self.q))

    def to_dict(self):
        return {"poles": list(self.poles), "p": list(self.p), "q": list(self.q)}

    @classmethod
    def from_dict(cls, d):
        return cls(tuple(d.get("poles", [])), tuple(d["p"]), tuple(d["q"]))


@dataclass(frozen=True)
class BandedOperator:
    """Real symmetric banded matrix in LAPACK lower-band storage.

    ``lower[d, i]`` holds entry (i+d, i) for 0 <= d <= half_bandwidth.
    """

    n: int
    half_bandwidth: int
    lower: np.ndarray
    block_offset: int = 0

    def entry(self, i, j):
        d = abs(i - j)
        if d > self.half_bandwidth:
            return 0.0
        return self.lower[d, min(i, j)]

    def to_dense(self):
        hb = self.half_bandwidth
        M = np.zeros((self.n, self.n))
        for d in range(hb + 1):
            diag = self.lower[d, : self.n - d]
            M += np.diag(diag, -d)
            if d:
                M += np.diag(diag, d)
        return M

    def full_band(self, dtype=float):
        """(2*hb+1, n) band storage for scipy.linalg.solve_banded."""
        hb = self.half_bandwidth
        ab = np.zeros((2 * hb + 1, self.n), dtype=dtype)
        for d in range(hb + 1):
            ab[hb + d, : self.n - d] = self.lower[d, : self.n - d]
            if d:
                ab[hb - d, d:] = self.lower[d, : self.n - d]
        return ab

    def eigenvalues(self):
        return scipy.linalg.eig_banded(
            self.lower, lower=True, eigvals_only=True
        )


def build_blocks(coeffs):
    """The (g+1) x (g+1) blocks (A, B) of the periodic operator."""
    p = np.asarray(coeffs.p)
    q = np.asarray(coeffs.q)
    g = coeffs.g
    A = np.zeros((g + 1, g + 1))
    A[g, :] = p
    B = np.triu(np.outer(q, p), 1) + np.tril(np.outer(p, q))
    B += np.diag(list(coeffs.poles) + [0.0])
    return A, B


def assemble(coeffs, n_periods):
    """Finite section with n_periods blocks and open (zero) boundary."""
    if n_periods < 1:
        raise DomainError("n_periods must be >= 1")
    g = coeffs.g
    w = g + 1
    n = w * n_periods
    A, B = build_blocks(coeffs)
    lower = np.zeros((w + 1, n))
    for d in range(w + 1):
        for i in range(d, n):
            j = i - d
            bi, bj = i // w, j // w
            if bi == bj:
                lower[d, j] = B[i % w, j % w]
            elif bi == bj + 1 and j % w == g:
                # sub-diagonal block A^T = p e_g^T: nonzero column g
                lower[d, j] = A[g, i % w]
    return BandedOperator(n=n, half_bandwidth=w, lower=lower)


def lambda_positivity_test(coeffs):
    """GMP membership via positivity of all residues Lambda_k.

    Returns (is_gmp, lambdas); vacuously true for g = 0.
    """
    from .transfer import lambda_k  # deferred to avoid an import cycle

    lambdas = np.array([lambda_k(coeffs, k) for k in range(1, coeffs.g + 1)])
    return bool(np.all(lambdas > 0)), lambdas


def check_shifted_inverse_structure(coeffs, k, n_periods=40, tol=1e-8):
    """Numerical check that S^{-k} (c_k - A)^{-1} S^k is again of class A.

    Inverts the finite section, shifts indices by k and verifies the
    class-A sparsity and sign pattern on rows at least 2(g+1) blocks away
    from the truncation boundary: zero beyond bandwidth g+1, and on the
    outermost diagonal zero except at the p_g positions (row index g
    modulo g+1), which must be positive.
    """
    g = coeffs.g
    if not 1 <= k <= g:
        raise DomainError(f"k must be in 1..{g}")
    w = g + 1
    ck = coeffs.poles[k - 1]
    M = assemble(coeffs, n_periods).to_dense()
    margin = 2 * w * w
    evals, evecs = np.linalg.eigh(M)
    dist = np.abs(ck - evals)
    hit = dist < 1e-9 * (1.0 + abs(ck))
    if np.any(hit):
        # open boundaries can pin spurious eigenvalues exactly on c_k;
        # boundary-localized hits carry no interior weight and are
        # deflated, interior hits make the shift genuinely singular
        lo, hi = margin, M.shape[0] - margin
        if np.max(np.abs(evecs[lo:hi, hit])) > 1e-8:
            raise DomainError(f"c_k - A numerically singular at pole {ck}")
    weights = np.where(hit, 0.0, 1.0 / np.where(hit, 1.0, ck - evals))
    inv = (evecs * weights) @ evecs.T
    R = inv[k:, k:]  # index shift by k
    m = R.shape[0]
    scale = 1.0 + np.max(np.abs(R))
    for i in range(margin, m - margin):
        for j in range(margin, m - margin):
            d = j - i
            if abs(d) > w and abs(R[i, j]) > tol * scale:
                return False
            if d == w:
                if i % w == g:
                    if R[i, j] <= tol * scale:
                        return False
                elif abs(R[i, j]) > tol * scale:
                    return False
    return True
