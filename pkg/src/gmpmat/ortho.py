"""Constructive oracle: multiplication matrices over rational bases.

Orthonormalizing a family of rational functions against a discrete
measure and writing the multiplication-by-x operator in the resulting
basis reproduces the characteristic matrix shapes: tridiagonal for
monomials, five-diagonal with an alternating outer diagonal for the
Laurent family, and the banded class-A block pattern for the rational
family with poles C.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

_KINDS = ("monomial", "smp", "gmp")


@dataclass(frozen=True)
class DiscreteMeasure:
    """Finite positive measure: tuple of (support point, weight) atoms."""

    atoms: tuple

    def __post_init__(self):
        atoms = tuple((float(x), float(w)) for x, w in self.atoms)
        object.__setattr__(self, "atoms", atoms)
        xs = [x for x, _ in atoms]
        if len(set(xs)) != len(xs):
            raise DomainError("support points must be distinct")
        if any(w <= 0 for _, w in atoms):
            raise DomainError("weights must be positive")

    @property
    def support(self):
        return np.array([x for x, _ in self.atoms])

    @property
    def weights(self):
        return np.array([w for _, w in self.atoms])

    @classmethod
    def from_csv(cls, path):
        data = np.loadtxt(path, delimiter=",", ndmin=2)
        return cls(tuple((row[0], row[1]) for row in data))


@dataclass(frozen=True)
class RationalFamily:
    """Basis family: monomials, the Laurent (SMP) family, or the GMP family.

    ``orientation`` controls the order of the reciprocal functions inside
    a GMP super-block: "paper" descends from (c_g - x)^-m to
    (c_1 - x)^-m, "reversed" ascends.
    """

    kind: str
    poles: tuple = ()
    orientation: str = "paper"

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise DomainError(f"kind must be one of {_KINDS}")
        poles = tuple(float(c) for c in self.poles)
        object.__setattr__(self, "poles", poles)
        if self.kind == "monomial" and poles:
            raise DomainError("monomial family has no poles")
        if self.kind == "smp" and poles != (0.0,):
            raise DomainError("smp family has the single pole 0")
        if self.kind == "gmp" and len(set(poles)) != len(poles):
            raise DomainError("poles must be distinct")
        if self.orientation not in ("paper", "reversed"):
            raise DomainError("orientation must be 'paper' or 'reversed'")

    @property
    def block_size(self):
        if self.kind == "monomial":
            return 1
        if self.kind == "smp":
            return 2
        return len(self.poles) + 1


def family_function(fam, n, x):
    """Value of the n-th family function at x (x must avoid the poles)."""
    x = np.asarray(x, dtype=float)
    if fam.kind == "monomial":
        return x**n
    if fam.kind == "smp":
        if n == 0:
            return np.ones_like(x)
        if n % 2 == 0:
            return x ** (n // 2)
        m = (n + 1) // 2
        if np.any(x == 0):
            raise DomainError("evaluation at the pole 0")
        return (-1.0) ** m / x**m
    # gmp: 1, then super-blocks (c_g-x)^-m .. (c_1-x)^-m, x^m
    g = len(fam.poles)
    if n == 0:
        return np.ones_like(x)
    m = (n - 1) // (g + 1) + 1
    r = (n - 1) % (g + 1)
    if r == g:
        return x**m
    idx = (g - 1 - r) if fam.orientation == "paper" else r
    c = fam.poles[idx]
    if np.any(x == c):
        raise DomainError(f"evaluation at the pole {c}")
    return (c - x) ** (-m)


def multiplication_matrix(measure, fam, n_funcs):
    """Matrix of multiplication by x in the orthonormalized family basis.

    QR with one reorthogonalization pass orthonormalizes the first
    n_funcs family functions in L2 of the measure.  Raises on rank
    deficiency (reporting the failing index) and warns when the
    conditioning of the raw family exceeds 1e12.
    """
    xs, ws = measure.support, measure.weights
    if n_funcs > len(xs):
        raise DomainError("n_funcs exceeds the number of atoms")
    sw = np.sqrt(ws)
    F = np.column_stack([sw * family_function(fam, n, xs) for n in range(n_funcs)])
    Q1, R1 = np.linalg.qr(F)
    Q, R2 = np.linalg.qr(Q1)  # one reorthogonalization pass
    R = R2 @ R1
    diag = np.abs(np.diag(R))
    bad = np.where(diag <= 1e-13 * np.max(diag))[0]
    if bad.size:
        raise DomainError(
            f"family is linearly dependent on the support at index {bad[0]}"
        )
    if diag.max() / diag.min() > 1e12:
        warnings.warn(
            "ill-conditioned family: condition estimate exceeds 1e12",
            RuntimeWarning,
            stacklevel=2,
        )
    signs = np.sign(np.diag(R))
    Q = Q * signs
    M = Q.T @ (xs[:, None] * Q)
    return 0.5 * (M + M.T)


def structure_report(M, fam, tol=1e-8):
    """Classify M against the expected pattern and list violations.

    Returns {"pattern": name, "bandwidth": b, "violations": [...]} where
    each violation is (i, j, value, reason).  Patterns: "jacobi"
    (tridiagonal, positive off-diagonal), "smp" (five-diagonal, outer
    diagonal alternating zero / positive), "class-A" (bandwidth g+1,
    outer diagonal zero except positive entries on one block position).
    """
    M = np.asarray(M)
    n = M.shape[0]
    scale = tol * (1.0 + np.max(np.abs(M)))
    w = fam.block_size
    violations = []
    for i in range(n):
        for j in range(i + w + 1, n):
            if abs(M[i, j]) > scale:
                violations.append((i, j, float(M[i, j]), "outside bandwidth"))
    outer = np.array([M[i, i + w] for i in range(n - w)])
    if fam.kind == "monomial":
        pattern = "jacobi"
        for i in range(n - 1):
            if M[i, i + 1] <= scale:
                violations.append(
                    (i, i + 1, float(M[i, i + 1]), "off-diagonal not positive")
                )
    else:
        pattern = "smp" if fam.kind == "smp" else "class-A"
        # nonzero outer entries live on a single residue class mod the
        # block size; detect the class, then enforce it
        classes = [
            np.max(np.abs(outer[r::w])) if outer[r::w].size else 0.0 for r in range(w)
        ]
        live = int(np.argmax(classes))
        for i in range(len(outer)):
            if i % w == live:
                if outer[i] <= scale:
                    violations.append(
                        (i, i + w, float(outer[i]), "outer entry not positive")
                    )
            elif abs(outer[i]) > scale:
                violations.append(
                    (i, i + w, float(outer[i]), "outer entry not zero")
                )
    return {"pattern": pattern, "bandwidth": w, "violations": violations}
