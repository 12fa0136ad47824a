"""
Weight orders on Q^n

A weight order compares points by the lexicographic order of their dot products with a
sequence of weight vectors. Weights are rational, or lie in one real quadratic field.
"""

import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, List, Sequence, Tuple

import sympy

from .constants import Comparison
from .exceptions import OrderError, ValidationError
from .geom import Cone, _rank
from .numbers import QuadraticValue, RatVec, Scalar, dot, sign

if TYPE_CHECKING:
    from .support import SupportSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WeightOrder:
    """Lex product of weight vectors (u_1, ..., u_s)"""
    weights: Tuple[RatVec, ...]
    total_on_lattice: bool = field(init=False, compare=False)

    def __post_init__(self) -> None:
        weights = tuple(RatVec(w) for w in self.weights)
        if not weights:
            raise ValidationError("a weight order needs at least one weight")
        n = len(weights[0])
        if any(len(w) != n for w in weights):
            raise ValidationError("all weights must have the same dimension")
        if any(w.is_zero() for w in weights):
            raise ValidationError("zero weight vector")
        fields = {w.quad_field for w in weights} - {None}
        if len(fields) > 1:
            raise ValidationError(f"weights from several quadratic fields: {sorted(fields)}")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "total_on_lattice", _split_rank(weights) == n)

    @classmethod
    def of(cls, *weights: Sequence[Any]) -> "WeightOrder":
        return cls(tuple(RatVec(w) for w in weights))

    @property
    def n(self) -> int:
        return len(self.weights[0])

    def is_total(self) -> bool:
        return self.total_on_lattice

    def key(self, point: Sequence[Any]) -> Tuple[Scalar, ...]:
        return tuple(dot(w, point) for w in self.weights)

    def sign_of(self, point: Sequence[Any]) -> int:
        """Sign of the point relative to the origin: -1, 0 or 1"""
        for w in self.weights:
            s = sign(dot(w, point))
            if s:
                return s
        return 0

    def reduced(self) -> "WeightOrder":
        """Drop weights that are constant on the common kernel of the earlier ones"""
        kept: List[RatVec] = []
        rank = 0
        for w in self.weights:
            r = _split_rank(tuple(kept) + (w,))
            if r > rank:
                kept.append(w)
                rank = r
        return WeightOrder(tuple(kept))


def _split_rows(weights: Sequence[RatVec]) -> List[RatVec]:
    rows: List[RatVec] = []
    for w in weights:
        a, b = w.rational_parts()
        rows.append(a)
        if not b.is_zero():
            rows.append(b)
    return rows


def _split_rank(weights: Sequence[RatVec]) -> int:
    """Q-rank of the rational parts of the weights; the order is total on Q^n iff it equals n"""
    if not weights:
        return 0
    return _rank(_split_rows(weights), len(weights[0]))


def compare(o: WeightOrder, a: Sequence[Any], b: Sequence[Any]) -> Comparison:
    s = o.sign_of(RatVec(a) - RatVec(b))
    return Comparison(s)


def is_positive(o: WeightOrder, c: Cone) -> bool:
    """Whether every generator of the cone is >= 0 under the order"""
    return all(o.sign_of(g) >= 0 for g in c.generators)


def refine_weight(w: Sequence[Any]) -> WeightOrder:
    """Total order refining <=_w, positive on the first orthant"""
    w = RatVec(w)
    if w.is_zero():
        raise ValidationError("cannot refine the zero weight")
    if any(sign(x) < 0 for x in w):
        raise ValidationError(f"weight {w!r} is not in the first orthant")
    weights = [w]
    rank = _split_rank(weights)
    for i in range(len(w)):
        if rank == len(w):
            break
        e = RatVec.unit(len(w), i)
        r = _split_rank(weights + [e])
        if r > rank:
            weights.append(e)
            rank = r
    return WeightOrder(tuple(weights))


def _sym(x: Scalar) -> sympy.Expr:
    if isinstance(x, QuadraticValue):
        return sympy.Rational(x.a.numerator, x.a.denominator) + sympy.Rational(
            x.b.numerator, x.b.denominator
        ) * sympy.sqrt(x.D)
    return sympy.Rational(x.numerator, x.denominator)


def refines(fine: WeightOrder, coarse: WeightOrder) -> bool:
    """Whether every strict comparison of coarse is kept by fine"""
    if fine.n != coarse.n:
        return False
    f = fine.reduced().weights
    c = coarse.reduced().weights
    if len(f) < len(c):
        return False
    for i in range(len(c)):
        basis = sympy.Matrix([[_sym(x) for x in w] for w in c[: i + 1]]).T
        target = sympy.Matrix([_sym(x) for x in f[i]])
        try:
            sol, params = basis.gauss_jordan_solve(target)
        except ValueError:
            return False
        if params.shape[0] or not sympy.simplify(sol[i, 0]).is_positive:
            return False
    return True


def is_well_ordered(o: WeightOrder, s: "SupportSpec") -> bool:
    """Family-by-family well-ordering decision for a finitely presented support"""
    if not o.is_total():
        raise OrderError("the order is not total on Q^n")
    if o.n != s.n:
        raise ValidationError(f"order on Q^{o.n} applied to a support in Q^{s.n}")
    for ray in s.rays:
        if o.sign_of(ray.step) <= 0:
            return False
    for sg in s.semigroups:
        if any(o.sign_of(g) <= 0 for g in sg.gens if not g.is_zero()):
            return False
    for tail in s.ptails:
        if o.sign_of(tail.dir) <= 0:
            return False
        if tail.drift is not None and o.sign_of(tail.drift) <= 0:
            return False
    return True
