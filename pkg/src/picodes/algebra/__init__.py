"""Field, polynomial, and exact linear algebra primitives."""

from .field import (
    GuaranteeViolation,
    LinearForm,
    PrimeField,
    UnsupportedRegimeError,
    ValidationError,
    factorize,
    field_ops,
    is_prime,
)
from .poly import (
    Poly,
    degree,
    lagrange_interpolate,
    poly_add,
    poly_compose_linear,
    poly_crt,
    poly_derivative,
    poly_divmod,
    poly_eval,
    poly_eval_many,
    poly_from_roots,
    poly_gcd,
    poly_mod,
    poly_mul,
    poly_neg,
    poly_scale,
    poly_sub,
    poly_xgcd,
    trim,
)
from .bivar import BivarPoly, lagrange_bivariate, weighted_monomial_count, weighted_monomials
from .linalg import (
    echelon,
    in_row_span,
    kernel_basis,
    mod_matmul,
    rank_mod,
    solve_linear,
    storage_dtype,
)
from .polymatrix import (
    PolyMatrix,
    binomial_row,
    matrix_poly_power,
    numeric_matrix_power_sequence,
)

__all__ = [
    "BivarPoly",
    "GuaranteeViolation",
    "LinearForm",
    "Poly",
    "PolyMatrix",
    "PrimeField",
    "UnsupportedRegimeError",
    "ValidationError",
    "binomial_row",
    "degree",
    "echelon",
    "factorize",
    "field_ops",
    "in_row_span",
    "is_prime",
    "kernel_basis",
    "lagrange_bivariate",
    "lagrange_interpolate",
    "matrix_poly_power",
    "mod_matmul",
    "numeric_matrix_power_sequence",
    "poly_add",
    "poly_compose_linear",
    "poly_crt",
    "poly_derivative",
    "poly_divmod",
    "poly_eval",
    "poly_eval_many",
    "poly_from_roots",
    "poly_gcd",
    "poly_mod",
    "poly_mul",
    "poly_neg",
    "poly_scale",
    "poly_sub",
    "poly_xgcd",
    "rank_mod",
    "solve_linear",
    "storage_dtype",
    "trim",
    "weighted_monomial_count",
    "weighted_monomials",
]
