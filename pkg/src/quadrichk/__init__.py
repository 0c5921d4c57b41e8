"""Exact Hilbert-Kunz computations for quadric hypersurface rings.

Frobenius pushforward decompositions, graded colengths, density functions,
HK multiplicities and F-thresholds for R_{p,n+1} = k[x_0..x_{n+1}]/(sum x_i^2),
cross-validated against a brute-force GF(p) Macaulay-matrix rank oracle.
"""

from .density import (
    DensityProfile,
    DensityValue,
    HKBracket,
    N3IntervalTree,
    ehk,
    ehk_infinity,
    f_infinity,
    f_n3_at,
    f_p,
    f_threshold,
    l_limit_poly,
    verify_wy,
    z_limit_poly,
)
from .exact import (
    PiecewisePolynomial,
    Polynomial,
    Rational,
    binomial,
    dim_projective,
    dim_quadric,
    dim_spinor,
    integrate,
    sec_tan_coefficient,
    spinor_rank,
)
from .frobenius import (
    Decomposition,
    IntBracket,
    OutOfScopeError,
    PairTable,
    QuadricContext,
    TransferMatrix,
    decompose,
    decompose_n3,
    decompose_s1,
    graded_length,
    l_coefficients,
    l_eval,
    occurs_line,
    occurs_spinor,
    pair_table,
    total_colength,
    transfer_matrix,
    z_coefficients,
    z_eval,
)
from .oracle import (
    CeilingExceededError,
    oracle_graded_length,
    oracle_total_colength,
)

__version__ = "0.1.0"

__all__ = [
    "CeilingExceededError",
    "Decomposition",
    "DensityProfile",
    "DensityValue",
    "HKBracket",
    "IntBracket",
    "N3IntervalTree",
    "OutOfScopeError",
    "PairTable",
    "PiecewisePolynomial",
    "Polynomial",
    "QuadricContext",
    "Rational",
    "TransferMatrix",
    "binomial",
    "decompose",
    "decompose_n3",
    "decompose_s1",
    "dim_projective",
    "dim_quadric",
    "dim_spinor",
    "ehk",
    "ehk_infinity",
    "f_infinity",
    "f_n3_at",
    "f_p",
    "f_threshold",
    "graded_length",
    "integrate",
    "l_coefficients",
    "l_eval",
    "l_limit_poly",
    "occurs_line",
    "occurs_spinor",
    "oracle_graded_length",
    "oracle_total_colength",
    "pair_table",
    "sec_tan_coefficient",
    "spinor_rank",
    "total_colength",
    "transfer_matrix",
    "verify_wy",
    "z_coefficients",
    "z_eval",
    "z_limit_poly",
]
