"""
Artin-Schreier equations T^p - T = a over Laurent polynomials in characteristic p

The right-hand side is split by a total weight order into a negative part, solved by the
finite p-th root formula, and a nonnegative part, solved by the Frobenius geometric
series. Both solutions are truncated; the residual T^p - T - a of every returned root is
computed exactly and handed back with it.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

from ..constants import DEFAULT_DEPTH, Branch
from ..exceptions import OrderError, PreconditionError, ValidationError
from ..numbers import RatVec
from ..orders import WeightOrder
from .field import FiniteField, FqElem
from .laurent import LaurentPoly

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ASRoot:
    """A truncated root, its exact residual and the size of the full root set"""
    root: LaurentPoly
    residual: LaurentPoly
    root_set_size: int
    depth: int


def _require_charp(a: LaurentPoly) -> FiniteField:
    if a.field is None:
        raise ValidationError("Artin-Schreier equations need a field of positive characteristic")
    return a.field


def _check_order(a: LaurentPoly, order: WeightOrder) -> None:
    if not order.is_total():
        raise OrderError("splitting needs an order that is total on Q^n")
    if order.n != a.n:
        raise ValidationError(f"order on Q^{order.n} for a polynomial in {a.n} variables")


def as_residual(root: LaurentPoly, a: LaurentPoly) -> LaurentPoly:
    """root^p - root - a"""
    return root.frobenius() - root - a


def as_split(a: LaurentPoly, order: WeightOrder) -> Tuple[LaurentPoly, LaurentPoly]:
    """(a_plus, a_minus): terms with exponent >= 0 and < 0 under the order"""
    _check_order(a, order)
    a_minus = a.select(lambda e: order.sign_of(e) < 0)
    a_plus = a.select(lambda e: order.sign_of(e) >= 0)
    return a_plus, a_minus


def as_negative_root(
    a_minus: LaurentPoly, depth: int = DEFAULT_DEPTH, order: Optional[WeightOrder] = None
) -> LaurentPoly:
    """sum over terms c*x^q of sum_{i=1..depth} c^(1/p^i) x^(q/p^i)"""
    _require_charp(a_minus)
    if depth < 1:
        raise ValidationError("depth must be at least 1")
    if order is not None:
        _check_order(a_minus, order)
        bad = [e for e in a_minus.exponents() if order.sign_of(e) >= 0]
        if bad:
            raise PreconditionError(f"exponents {bad!r} are not negative under the order")
    elif any(e.is_zero() for e in a_minus.exponents()):
        raise PreconditionError("constant term in the negative part")
    root = LaurentPoly.zero(a_minus.n, a_minus.field)
    current = a_minus
    for _ in range(depth):
        current = current.pth_root()
        root = root + current
    return root


def as_positive_root(
    a_plus: LaurentPoly, depth: int = DEFAULT_DEPTH, order: Optional[WeightOrder] = None
) -> LaurentPoly:
    """-(a + a^p + ... + a^(p^depth))"""
    _require_charp(a_plus)
    if depth < 0:
        raise ValidationError("depth must be nonnegative")
    if any(e.is_zero() for e in a_plus.exponents()):
        raise PreconditionError("constant term in the positive part: use as_constant_root")
    if order is not None:
        _check_order(a_plus, order)
        bad = [e for e in a_plus.exponents() if order.sign_of(e) <= 0]
        if bad:
            raise PreconditionError(f"exponents {bad!r} are not positive under the order")
    root = LaurentPoly.zero(a_plus.n, a_plus.field)
    power = a_plus
    for _ in range(depth + 1):
        root = root - power
        power = power.frobenius()
    return root


def as_constant_root(c: FqElem) -> Optional[FqElem]:
    """Some r in F_q with r^p - r = c, or None"""
    for r in c.field.elements():
        if r.frobenius() - r == c:
            return r
    return None


def as_root(
    a: LaurentPoly,
    order: WeightOrder,
    branch: Branch = Branch.AUTO,
    depth: int = DEFAULT_DEPTH,
) -> ASRoot:
    """Truncated root of T^p - T = a along the chosen branch.

    The constant term is solved in the field, negative terms by iterated p-th
    roots and positive terms by iterated Frobenius. The other p - 1 roots are
    this one plus the elements of F_p.

    Args:
        a: right-hand side over a field of positive characteristic.
        order: total order on Q^n deciding the sign of each exponent.
        branch: ``AUTO`` handles both signs; ``PLUS`` and ``MINUS`` insist
            that ``a`` has terms of one sign only.
        depth: number of iterations per term.

    Returns:
        The root with its exact residual root^p - root - a.

    Raises:
        ValidationError: ``a`` is over Q, or ``order`` has the wrong dimension.
        OrderError: ``order`` is not total.
        PreconditionError: ``a`` has terms outside the requested branch, or
            its constant term is not of the form r^p - r in the field.
    """
    field = _require_charp(a)
    a_plus, a_minus = as_split(a, order)
    if branch == Branch.MINUS and a_plus:
        raise PreconditionError("the minus branch needs every exponent negative under the order")
    if branch == Branch.PLUS and a_minus:
        raise PreconditionError("the plus branch needs every exponent nonnegative under the order")
    zero = RatVec.zero(a.n)
    constant = a_plus.coefficient(zero)
    root = LaurentPoly.zero(a.n, field)
    if not constant.is_zero():  # type: ignore[union-attr]
        r = as_constant_root(constant)  # type: ignore[arg-type]
        if r is None:
            raise PreconditionError(f"{constant!r} is not of the form r^p - r in {field!r}")
        root = root + LaurentPoly.monomial(zero, r, field)
        a_plus = a_plus.select(lambda e: not e.is_zero())
    if a_minus:
        root = root + as_negative_root(a_minus, depth, order)
    if a_plus:
        root = root + as_positive_root(a_plus, depth, order)
    residual = as_residual(root, a)
    logger.debug("Artin-Schreier root with %d terms, residual %d terms", len(root), len(residual))
    return ASRoot(root, residual, field.p, depth)


def substitute_scaled_root(root: LaurentPoly, alpha: RatVec) -> LaurentPoly:
    """T = x^alpha * u: turn a root u of the reduced equation back into T"""
    return root.shift(alpha)
