"""Geometric constants of two-dimensional normed spaces.

Compute the skew James-type value and its relatives (James constant,
von Neumann-Jordan-type and Zbaganu suprema, convexity modulus, ...) on
polygonal, p-norm and quadrant-hybrid planes, and certify the inequalities
that relate them.
"""

from .constants import (
    ConstantRequest,
    ConstantValue,
    c_t_constant,
    constant_record,
    convexity_coefficient,
    delta_profile,
    g_constant,
    gao_skew,
    james_constant,
    james_type,
    james_type_family,
    lyj_constant,
    modulus_of_convexity,
    skew_james,
    skew_james_family,
    thm33_bound,
    uniformly_nonsquare,
    von_neumann_jordan,
    zbaganu,
)
from .geometry import (
    BUILTIN_IDS,
    HexagonNorm,
    NormCheckReport,
    NormSpace,
    PNormSpace,
    PolytopalNorm,
    QuadrantHybridNorm,
    Vec2,
    builtin_space,
    euclidean,
    load_space,
    space_from_spec,
    sphere_point,
    validate_norm,
)
from .means import format_t, generalized_mean, parse_t
from .search import SearchConfig, SearchResult, constrained_infimum, pair_maximize
from .verify import (
    CLAIM_IDS,
    Certificate,
    check_corollary31,
    check_prop31_convexity,
    check_prop34,
    check_remark32,
    check_theorem31,
    check_thm32,
    check_thm33,
    default_spaces,
    run_claims,
)

__version__ = "0.1.0"

__all__ = [
    "BUILTIN_IDS",
    "CLAIM_IDS",
    "Certificate",
    "ConstantRequest",
    "ConstantValue",
    "HexagonNorm",
    "NormCheckReport",
    "NormSpace",
    "PNormSpace",
    "PolytopalNorm",
    "QuadrantHybridNorm",
    "SearchConfig",
    "SearchResult",
    "Vec2",
    "builtin_space",
    "c_t_constant",
    "check_corollary31",
    "check_prop31_convexity",
    "check_prop34",
    "check_remark32",
    "check_theorem31",
    "check_thm32",
    "check_thm33",
    "constant_record",
    "constrained_infimum",
    "convexity_coefficient",
    "default_spaces",
    "delta_profile",
    "euclidean",
    "format_t",
    "g_constant",
    "gao_skew",
    "generalized_mean",
    "james_constant",
    "james_type",
    "james_type_family",
    "load_space",
    "lyj_constant",
    "modulus_of_convexity",
    "pair_maximize",
    "parse_t",
    "run_claims",
    "skew_james",
    "skew_james_family",
    "space_from_spec",
    "sphere_point",
    "thm33_bound",
    "uniformly_nonsquare",
    "validate_norm",
    "von_neumann_jordan",
    "zbaganu",
]
