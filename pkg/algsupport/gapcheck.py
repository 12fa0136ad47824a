"""
Monomial valuations, initial forms and the level-gap bound for algebraic series

A weight w grades a truncated series by the levels w . alpha of its exponents. For a root
of a polynomial of degree d whose coefficients have exponents of level at most nu,
consecutive nonzero levels k(i) < k(i+1) satisfy k(i+1)/k(i) <= nu + d.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .charp.laurent import LaurentPoly, evaluate
from .exceptions import PreconditionError, ValidationError
from .numbers import RatVec, Scalar, dot, sign
from .support import SupportSpec, tau_prime

logger = logging.getLogger(__name__)


def _weight(g: LaurentPoly, w: Sequence[Any]) -> RatVec:
    w = RatVec(w)
    if len(w) != g.n:
        raise ValidationError(f"weight of dimension {len(w)} for a polynomial in {g.n} variables")
    return w


def nu_omega(g: LaurentPoly, w: Sequence[Any]) -> Scalar:
    """Smallest level of an exponent of g"""
    w = _weight(g, w)
    if g.is_zero():
        raise ValidationError("the zero polynomial has infinite valuation")
    return min(dot(w, e) for e in g.exponents())


def in_omega(g: LaurentPoly, w: Sequence[Any]) -> LaurentPoly:
    """Sum of the terms of g of smallest level"""
    low = nu_omega(g, w)
    return g.select(lambda e: dot(w, e) == low)


@dataclass(frozen=True)
class GradedExpansion:
    weight: RatVec
    pieces: Tuple[Tuple[Scalar, LaurentPoly], ...]

    @property
    def levels(self) -> List[Scalar]:
        return [k for k, _ in self.pieces]

    def reassemble(self) -> LaurentPoly:
        first = self.pieces[0][1]
        total = LaurentPoly.zero(first.n, first.field)
        for _, piece in self.pieces:
            total = total + piece
        return total


def graded_expand(
    series: LaurentPoly, w: Sequence[Any], spec: Optional[SupportSpec] = None
) -> GradedExpansion:
    """Group the terms of a truncated series by level, levels increasing"""
    w = _weight(series, w)
    if series.is_zero():
        raise ValidationError("cannot grade the zero series")
    if spec is not None:
        tau0, _ = tau_prime(spec)
        if w.is_zero() or not all(c.holds(w) for c in tau0):
            raise PreconditionError(f"some level of the support is infinite for the weight {w!r}")
    groups: Dict[Scalar, List[Tuple[RatVec, Any]]] = {}
    for e, c in series:
        groups.setdefault(dot(w, e), []).append((e, c))
    pieces = tuple(
        (level, LaurentPoly(series.n, tuple(terms), series.field))
        for level, terms in sorted(groups.items(), key=lambda item: item[0])
    )
    return GradedExpansion(w, pieces)


def rescale(series: LaurentPoly, alpha: Sequence[Any]) -> LaurentPoly:
    """Multiply by x^alpha, moving every level by w . alpha"""
    return series.shift(alpha)


def check_ratios(
    levels: Sequence[Any], K: Any
) -> Tuple[List[Optional[Fraction]], bool, Optional[int]]:
    """Ratios of consecutive levels against the bound K; a zero level has no ratio"""
    values = [Fraction(k) for k in levels]
    if any(k < 0 for k in values):
        raise ValidationError("negative level: rescale the series by a monomial first")
    ratios: List[Optional[Fraction]] = []
    first_violation = None
    for i, (a, b) in enumerate(zip(values, values[1:])):
        if a == 0:
            ratios.append(None)
            continue
        r = b / a
        ratios.append(r)
        if first_violation is None and sign(r - Fraction(K)) > 0:
            first_violation = i
    return ratios, first_violation is None, first_violation


@dataclass(frozen=True)
class GapReport:
    d: int
    nu: Fraction
    K: Fraction
    ratios: Tuple[Optional[Fraction], ...]
    verdict: bool
    first_violation: Optional[int]
    residual_valuation: Optional[Fraction]
    levels: Tuple[Fraction, ...]


def gap_verify(
    series: LaurentPoly,
    coeffs: Sequence[LaurentPoly],
    w: Sequence[Any],
    guaranteed_level: Optional[Any] = None,
) -> GapReport:
    """Check k(i+1)/k(i) <= nu + d on a truncated root of sum a_i T^i.

    Args:
        series: truncated root, nonzero.
        coeffs: a_0..a_d; trailing zeros are ignored.
        w: rational weight of the same dimension as ``series``.
        guaranteed_level: level up to which the truncation is known to agree
            with the true root; defaults to the last level of ``series``.

    Returns:
        d, nu, the bound K = nu + d, the level ratios with the verdict and the
        first violating index, and the valuation of the residual.

    Raises:
        ValidationError: irrational or mis-sized weight, zero series, or
            every coefficient zero.
        PreconditionError: the residual does not vanish above the guaranteed
            level, so ``series`` is not a root up to there.
    """
    w = _weight(series, w)
    if not w.is_rational():
        raise ValidationError("the gap check needs a rational weight")
    if series.is_zero():
        raise ValidationError("the zero series has no levels")
    nonzero = [i for i, a in enumerate(coeffs) if a]
    if not nonzero:
        raise ValidationError("the zero polynomial has every series as a root")
    d = nonzero[-1]
    nu = max(Fraction(dot(w, e)) for a in coeffs for e in a.exponents())
    K = nu + d
    expansion = graded_expand(series, w)
    levels = [Fraction(k) for k in expansion.levels]
    ratios, verdict, first_violation = check_ratios(levels, K)

    residual = evaluate(coeffs, series)
    residual_valuation = None if residual.is_zero() else Fraction(nu_omega(residual, w))
    bound = Fraction(guaranteed_level) if guaranteed_level is not None else levels[-1]
    if residual_valuation is not None and residual_valuation <= bound:
        raise PreconditionError(
            f"residual has valuation {residual_valuation}, not above the guaranteed level {bound}"
        )
    logger.info("gap check: d=%d nu=%s K=%s verdict=%s", d, nu, K, verdict)
    return GapReport(d, nu, K, tuple(ratios), verdict, first_violation, residual_valuation, tuple(levels))
