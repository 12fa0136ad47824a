"""
Constants and enums for algsupport
"""

from enum import Enum


class Comparison(Enum):
    """Outcome of comparing two points under a weight order"""
    LESS = -1
    EQUAL = 0
    GREATER = 1


class Branch(Enum):
    """Which Artin-Schreier root to build"""
    PLUS = "plus"
    MINUS = "minus"
    AUTO = "auto"


class Verdict(Enum):
    """Outcome of the truncation diagnostic"""
    NON_STABILIZING = "non-stabilizing"
    STABILIZED = "stabilized"
    INCONCLUSIVE = "inconclusive"


class Provenance(Enum):
    """Where an expected fixture value comes from"""
    PAPER = "PAPER"
    DERIVED = "DERIVED"
    TRIVIAL = "TRIVIAL"


class FamilyKind(Enum):
    """Kinds of finitely presented support families"""
    POINT = "point"
    RAY = "ray"
    SEMIGROUP = "semigroup"
    PTAIL = "ptail"


class FaceKind(Enum):
    """Face dimension class used by normalization witnesses"""
    EDGE = "edge"
    FACET = "facet"


# Primes with a bundled irreducible polynomial table
SUPPORTED_PRIMES = (2, 3, 5, 7)
MAX_EXTENSION_DEGREE = 4

DEFAULT_DEPTH = 5
DEFAULT_LEVELS = 5


class Command(Enum):
    """CLI subcommands"""
    CONE = "cone"
    DICKSON = "dickson"
    TAU = "tau"
    NORMALIZE = "normalize"
    ASROOT = "asroot"
    GAP = "gap"
    DIAGNOSE = "diagnose"
    PLOT = "plot"
    CHECK_EXAMPLE = "check-example"
