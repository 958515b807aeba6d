"""Exact workbench for vector invariants of matrix groups in arbitrary characteristic."""

from .errors import CapExceeded, CharacteristicMismatch, DimensionError, GroupSpecError, ParseError
from .field import Scalar
from .filtration import (
    GLWeight,
    HullElement,
    check_hull_coverage,
    filtration_level,
    h_value,
    phi_leading,
    phi_prime,
    product_rule_check,
    t_weight_decompose,
    y_prime_basis,
)
from .groups import (
    BlockUnipotent,
    Diagonal,
    Generated,
    GroupSpec,
    Rooted,
    classical_generators,
    invariant_monomials,
    is_invariant,
    minimal_monomial_generators,
    orbit_chern,
)
from .linalg import SpanBasis, span_member
from .matrix_ring import (
    BiTableau,
    MinorSpec,
    RingCtx,
    act_column,
    bitableau_poly,
    column_reduce_u,
    embed_j,
    factor_functional,
    is_standard,
    minor,
    u_invariant_generators,
)
from .poly import Poly, VarId, parse_poly, poly_pow, poly_substitute
from .polarization import (
    MembershipCertificate,
    ModuleSpan,
    delta_power_level,
    is_member,
    module_span,
    p_root_level,
    polarized_component,
)

__all__ = [
    "BiTableau",
    "BlockUnipotent",
    "CapExceeded",
    "CharacteristicMismatch",
    "Diagonal",
    "DimensionError",
    "GLWeight",
    "Generated",
    "GroupSpec",
    "GroupSpecError",
    "HullElement",
    "MembershipCertificate",
    "MinorSpec",
    "ModuleSpan",
    "ParseError",
    "Poly",
    "RingCtx",
    "Rooted",
    "Scalar",
    "SpanBasis",
    "VarId",
    "act_column",
    "bitableau_poly",
    "check_hull_coverage",
    "classical_generators",
    "column_reduce_u",
    "delta_power_level",
    "embed_j",
    "factor_functional",
    "filtration_level",
    "h_value",
    "invariant_monomials",
    "is_invariant",
    "is_member",
    "is_standard",
    "minimal_monomial_generators",
    "minor",
    "module_span",
    "orbit_chern",
    "p_root_level",
    "parse_poly",
    "phi_leading",
    "phi_prime",
    "polarized_component",
    "poly_pow",
    "poly_substitute",
    "product_rule_check",
    "span_member",
    "t_weight_decompose",
    "u_invariant_generators",
    "y_prime_basis",
]

__version__ = "0.1.0"
