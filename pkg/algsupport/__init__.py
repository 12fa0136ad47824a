"""
algsupport

Exact polyhedral and algebraic computations on the supports of Laurent series
solving polynomial equations, in characteristic zero and in characteristic p.
"""

from .binom_ideal import DicksonResult, buchberger_bm, decompose, dickson_decompose, dickson_oracle
from .charp import ASRoot, FiniteField, FqElem, LaurentPoly, as_root, field_family_check
from .constants import Branch, Comparison, FaceKind, FamilyKind, Provenance, Verdict
from .exceptions import (
    AlgSupportError,
    FixtureMismatchError,
    NotInClassError,
    OrderError,
    PreconditionError,
    SchemaError,
    ValidationError,
)
from .gapcheck import GapReport, gap_verify, graded_expand, in_omega, nu_omega
from .geom import Cone, dual, faces, hilbert_basis, in_interior_of_union, intersect
from .numbers import QuadraticValue, RatVec, quad, vec
from .orders import WeightOrder, compare, is_positive, is_well_ordered, refine_weight
from .support import (
    NormalizationResult,
    PTailFamily,
    RayFamily,
    SemigroupFamily,
    SupportSpec,
    TauResult,
    non_polyhedral_diagnostic,
    normalize,
    t_sigma,
    tau,
    tau_prime,
    tau_result,
    tau_tilde,
)

__version__ = "0.1.0"
__all__ = [
    "ASRoot",
    "AlgSupportError",
    "Branch",
    "Comparison",
    "Cone",
    "DicksonResult",
    "FaceKind",
    "FamilyKind",
    "FiniteField",
    "FixtureMismatchError",
    "FqElem",
    "GapReport",
    "LaurentPoly",
    "NormalizationResult",
    "NotInClassError",
    "OrderError",
    "PTailFamily",
    "PreconditionError",
    "Provenance",
    "QuadraticValue",
    "RatVec",
    "RayFamily",
    "SchemaError",
    "SemigroupFamily",
    "SupportSpec",
    "TauResult",
    "ValidationError",
    "Verdict",
    "WeightOrder",
    "as_root",
    "buchberger_bm",
    "compare",
    "decompose",
    "dickson_decompose",
    "dickson_oracle",
    "dual",
    "faces",
    "field_family_check",
    "gap_verify",
    "graded_expand",
    "hilbert_basis",
    "in_interior_of_union",
    "in_omega",
    "intersect",
    "is_positive",
    "is_well_ordered",
    "non_polyhedral_diagnostic",
    "normalize",
    "nu_omega",
    "quad",
    "refine_weight",
    "t_sigma",
    "tau",
    "tau_prime",
    "tau_result",
    "tau_tilde",
    "vec",
]
