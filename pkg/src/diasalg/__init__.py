"""Exact computations for diassociative algebras: centers, derived
subalgebras, second cohomology, multipliers, covers and Z*."""

from .kernel import GF, QQ, FieldSpec, Matrix, Subspace
from .algebra import (
    LEFT, RIGHT, DiasAlgebra, ValidationReport, center, derived_subalgebra, direct_sum,
    is_central_ideal, quotient_algebra, validate_axioms,
)
from .cohomology import (
    CocyclePair, CohomologySpace, delta_map, extension_cocycle, h2, inf1, inf2, res, tra,
    verify_five_term,
)
from .extensions import (
    construct_cover, extension_from_cocycle, extensions_equivalent, is_unicentral, multiplier,
    stem_center_projection, theorem49_report, verify_stallings, z_star,
)
from .catalog import corpus, random_two_step

__version__ = "0.1.0"

__all__ = [
    "GF", "QQ", "FieldSpec", "Matrix", "Subspace",
    "LEFT", "RIGHT", "DiasAlgebra", "ValidationReport", "center", "derived_subalgebra",
    "direct_sum", "is_central_ideal", "quotient_algebra", "validate_axioms",
    "CocyclePair", "CohomologySpace", "delta_map", "extension_cocycle", "h2", "inf1", "inf2",
    "res", "tra", "verify_five_term",
    "construct_cover", "extension_from_cocycle", "extensions_equivalent", "is_unicentral",
    "multiplier", "stem_center_projection", "theorem49_report", "verify_stallings", "z_star",
    "corpus", "random_two_step",
]
