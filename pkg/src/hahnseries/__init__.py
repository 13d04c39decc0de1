"""Exact arithmetic for generalised power series over (Z^n, <_lex) and the
linear recurrence relations that determine them."""

from .fields import (
    CoefficientAutomorphism,
    FieldContext,
    FieldElement,
    apply_rho,
    f_add,
    f_eq,
    f_inv,
    f_mul,
    f_sub,
    format_element,
    parse_element,
)
from .hankel import (
    Fail,
    FullUpTo,
    HankelMatrix,
    Ok,
    RankProfile,
    StabilizedAt,
    build_hankel,
    exact_rank,
    progression_check,
    rank_profile,
)
from .lattice import (
    UnitriangularMap,
    apply_map,
    compose_maps,
    exp_add,
    exp_neg,
    in_positive_orthant,
    invert_map,
    lex_compare,
)
from .lifts import (
    ExponentCharacter,
    canonical_lift,
    char_eval,
    internal_twist,
    lift_on_sequence,
    twist_on_sequence,
)
from .recurrence import (
    Inconclusive,
    LinearRecurrence,
    Member,
    NonMember,
    NoneFound,
    Rational,
    Reconstruction,
    VerificationReport,
    associated_sequence,
    associated_series,
    bm_minimal,
    fit_multivariate,
    indicator_recurrence,
    inverse_witness,
    membership_check,
    product_recurrence,
    rationality_pipeline,
    reconstruct,
    verify,
)
from .series import (
    ALL,
    Box,
    Cone,
    Contained,
    FiniteSeries,
    FiniteSet,
    PositiveOrthant,
    TruncatedSeries,
    Violation,
    coefficient_at_lex,
    expand_unit_quotient,
    s_add,
    s_mul,
    s_scale,
    support_within,
    valuation,
)

__version__ = "0.1.0"

__all__ = [
    "ALL",
    "Box",
    "CoefficientAutomorphism",
    "Cone",
    "Contained",
    "ExponentCharacter",
    "Fail",
    "FieldContext",
    "FieldElement",
    "FiniteSeries",
    "FiniteSet",
    "FullUpTo",
    "HankelMatrix",
    "Inconclusive",
    "LinearRecurrence",
    "Member",
    "NonMember",
    "NoneFound",
    "Ok",
    "PositiveOrthant",
    "RankProfile",
    "Rational",
    "Reconstruction",
    "StabilizedAt",
    "TruncatedSeries",
    "UnitriangularMap",
    "VerificationReport",
    "Violation",
    "apply_map",
    "apply_rho",
    "associated_sequence",
    "associated_series",
    "bm_minimal",
    "build_hankel",
    "canonical_lift",
    "char_eval",
    "coefficient_at_lex",
    "compose_maps",
    "exact_rank",
    "exp_add",
    "exp_neg",
    "expand_unit_quotient",
    "f_add",
    "f_eq",
    "f_inv",
    "f_mul",
    "f_sub",
    "fit_multivariate",
    "format_element",
    "in_positive_orthant",
    "indicator_recurrence",
    "internal_twist",
    "inverse_witness",
    "invert_map",
    "lex_compare",
    "lift_on_sequence",
    "membership_check",
    "parse_element",
    "product_recurrence",
    "progression_check",
    "rank_profile",
    "rationality_pipeline",
    "reconstruct",
    "s_add",
    "s_mul",
    "s_scale",
    "support_within",
    "twist_on_sequence",
    "valuation",
    "verify",
]
