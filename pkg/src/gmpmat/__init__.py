"""Spectral theory of periodic GMP matrices.

Finite gap sets and their rational discriminants, class-A block
operators, transfer-matrix and residue algebra, closed-form resolvents,
the operator identity Delta(A) = S^{g+1} + S^{-(g+1)}, the algebraic
isospectral manifold, and a Gram-Schmidt multiplication-matrix oracle.
"""

from .discriminant import (
    FiniteGapSet,
    RationalDiscriminant,
    ahlfors_eval,
    bands,
    eval_discriminant,
    solve_discriminant,
)
from .errors import ConvergenceError, DomainError
from .gmp import (
    BandedOperator,
    GmpCoefficients,
    assemble,
    build_blocks,
    check_shifted_inverse_structure,
    lambda_positivity_test,
)
from .isospectral import (
    forced_tail,
    jacobi_band_edges,
    jacobi_coeffs,
    jacobi_transfer,
    magic_verify,
    manifold_residual,
    project_to_manifold,
    spectrum_truncation,
    trace_torus,
)
from .ortho import (
    DiscreteMeasure,
    RationalFamily,
    family_function,
    multiplication_matrix,
    structure_report,
)
from .resolvent import (
    ResolventValue,
    reflectionless_check,
    resolvent_matrix,
    resolvent_pair,
    truncation_resolvent_oracle,
)
from .transfer import (
    DiscriminantCoefficients,
    discriminant_coeffs,
    discriminant_of,
    factor_infinity,
    factor_pole,
    lambda_k,
    lambda_k_residue,
    mirror_transfer,
    transfer,
    transfer_from_resolvent,
)

__version__ = "0.1.0"
