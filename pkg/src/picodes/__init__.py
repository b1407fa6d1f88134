"""Polynomial ideal codes over prime fields with two list decoders.

A code here encodes a polynomial of degree below k as its residues modulo
n pairwise-coprime monic degree-s polynomials.  Five moduli families are
provided (plain evaluation points, multiplier orbits, additive orbits,
repeated roots, and affine-map orbits), together with a Johnson-radius
interpolation decoder and a linear-algebraic decoder that reaches beyond
it when the folding parameter is large.
"""

from .algebra import (
    BivarPoly,
    GuaranteeViolation,
    LinearForm,
    PrimeField,
    UnsupportedRegimeError,
    ValidationError,
)
from .codes import (
    FamilySpec,
    PolyIdealCode,
    affine_orbit_length,
    brute_force_list,
    build_code,
    check_family_params,
    check_received,
    hamming_agreement,
    pick_evaluation_points,
)
from .operators import (
    ActionTerm,
    ExtendReport,
    ExtensionMatrix,
    Operator,
    OperatorFamily,
    build_operator_family,
    diag_matrix,
    ideal_generator,
    operator_encode,
    pic_to_lelo,
    verify_diag_mds,
    verify_linear_extendibility,
)
from .johnson import (
    JohnsonParams,
    interpolate_johnson_Q,
    johnson_params,
    list_decode_johnson,
    y_roots,
)
from .capacity import (
    STRATEGIES,
    CompositionScheme,
    DecodeResult,
    build_scheme,
    constraint_matrix,
    derive_h,
    interpolate_linear_Q,
    list_decode_capacity,
    reconstruct_space,
)
from .channel import CHANNEL_KINDS, ChannelModel, corrupt_codeword
from .rng import SplitMix64

__version__ = "0.1.0"

__all__ = [
    "ActionTerm",
    "BivarPoly",
    "CHANNEL_KINDS",
    "ChannelModel",
    "CompositionScheme",
    "DecodeResult",
    "ExtendReport",
    "ExtensionMatrix",
    "FamilySpec",
    "GuaranteeViolation",
    "JohnsonParams",
    "LinearForm",
    "Operator",
    "OperatorFamily",
    "PolyIdealCode",
    "PrimeField",
    "STRATEGIES",
    "SplitMix64",
    "UnsupportedRegimeError",
    "ValidationError",
    "affine_orbit_length",
    "brute_force_list",
    "build_code",
    "build_operator_family",
    "build_scheme",
    "check_family_params",
    "check_received",
    "constraint_matrix",
    "corrupt_codeword",
    "derive_h",
    "diag_matrix",
    "hamming_agreement",
    "ideal_generator",
    "interpolate_johnson_Q",
    "interpolate_linear_Q",
    "johnson_params",
    "list_decode_capacity",
    "list_decode_johnson",
    "operator_encode",
    "pic_to_lelo",
    "pick_evaluation_points",
    "reconstruct_space",
    "verify_diag_mds",
    "verify_linear_extendibility",
    "y_roots",
]
