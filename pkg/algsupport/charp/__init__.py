"""
Characteristic-p coefficient arithmetic and Artin-Schreier roots
"""

from .artin_schreier import (
    ASRoot,
    as_constant_root,
    as_negative_root,
    as_positive_root,
    as_residual,
    as_root,
    as_split,
    substitute_scaled_root,
)
from .families import FieldFamilyReport, field_family_check
from .field import CONWAY, FiniteField, FqElem
from .laurent import LaurentPoly, evaluate, from_terms

__all__ = [
    "ASRoot",
    "CONWAY",
    "FieldFamilyReport",
    "FiniteField",
    "FqElem",
    "LaurentPoly",
    "as_constant_root",
    "as_negative_root",
    "as_positive_root",
    "as_residual",
    "as_root",
    "as_split",
    "evaluate",
    "field_family_check",
    "from_terms",
    "substitute_scaled_root",
]
