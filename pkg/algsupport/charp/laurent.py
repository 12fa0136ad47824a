"""
Laurent polynomials with rational exponents

Coefficients are Fractions (characteristic zero, ``field is None``) or elements of one
finite field. Terms are kept sorted by exponent with zero coefficients dropped.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from ..exceptions import ValidationError
from ..numbers import RatVec
from .field import FiniteField, FqElem

Coeff = Union[Fraction, FqElem]
Term = Tuple[RatVec, Coeff]


def _is_zero(c: Coeff) -> bool:
    return c.is_zero() if isinstance(c, FqElem) else c == 0


@dataclass(frozen=True)
class LaurentPoly:
    """Finite sum of c * x^q with q in Q^n"""
    n: int
    terms: Tuple[Term, ...] = ()
    field: Optional[FiniteField] = None

    def __post_init__(self) -> None:
        collected: Dict[RatVec, Coeff] = {}
        for exp, coeff in self.terms:
            exp = RatVec(exp)
            if len(exp) != self.n or not exp.is_rational():
                raise ValidationError(f"exponent {exp!r} is not a rational vector of length {self.n}")
            coeff = self._coerce(coeff)
            collected[exp] = collected[exp] + coeff if exp in collected else coeff
        kept = tuple(sorted((e, c) for e, c in collected.items() if not _is_zero(c)))
        object.__setattr__(self, "terms", kept)

    def _coerce(self, c: Any) -> Coeff:
        if self.field is None:
            if isinstance(c, FqElem) or isinstance(c, bool):
                raise ValidationError(f"coefficient {c!r} outside Q")
            return Fraction(c)
        if isinstance(c, FqElem):
            if c.field != self.field:
                raise ValidationError(f"coefficient from {c.field!r} in a polynomial over {self.field!r}")
            return c
        if isinstance(c, int) and not isinstance(c, bool):
            return self.field.element(c)
        raise ValidationError(f"coefficient {c!r} is not in {self.field!r}")

    @classmethod
    def zero(cls, n: int, field: Optional[FiniteField] = None) -> "LaurentPoly":
        return cls(n, (), field)

    @classmethod
    def monomial(
        cls, exp: Sequence[Any], coeff: Any = 1, field: Optional[FiniteField] = None
    ) -> "LaurentPoly":
        exp = RatVec(exp)
        return cls(len(exp), ((exp, coeff),), field)

    @classmethod
    def from_dict(
        cls, n: int, terms: Dict[Sequence[Any], Any], field: Optional[FiniteField] = None
    ) -> "LaurentPoly":
        return cls(n, tuple((RatVec(e), c) for e, c in terms.items()), field)

    @property
    def characteristic(self) -> int:
        return self.field.p if self.field is not None else 0

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Term]:
        return iter(self.terms)

    def exponents(self) -> List[RatVec]:
        return [e for e, _ in self.terms]

    def coefficient(self, exp: Sequence[Any]) -> Coeff:
        exp = RatVec(exp)
        for e, c in self.terms:
            if e == exp:
                return c
        return self._coerce(0)

    def constant_term(self) -> Coeff:
        return self.coefficient(RatVec.zero(self.n))

    def _check(self, other: "LaurentPoly") -> None:
        if other.n != self.n or other.field != self.field:
            raise ValidationError("polynomials over different rings or variable counts")

    def _lift(self, other: Any) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        return LaurentPoly(self.n, ((RatVec.zero(self.n), other),), self.field)

    def __add__(self, other: Any) -> "LaurentPoly":
        o = self._lift(other)
        return LaurentPoly(self.n, self.terms + o.terms, self.field)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.n, tuple((e, -c) for e, c in self.terms), self.field)

    def __sub__(self, other: Any) -> "LaurentPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other: Any) -> "LaurentPoly":
        return self._lift(other) - self

    def __mul__(self, other: Any) -> "LaurentPoly":
        o = self._lift(other)
        products = [(a + b, c * d) for a, c in self.terms for b, d in o.terms]
        return LaurentPoly(self.n, tuple(products), self.field)

    __rmul__ = __mul__

    def frobenius(self) -> "LaurentPoly":
        """self^p in characteristic p: coefficients to the p-th power, exponents times p"""
        p = self._require_charp()
        return LaurentPoly(self.n, tuple((e * p, c.frobenius()) for e, c in self.terms), self.field)  # type: ignore[union-attr]

    def pth_root(self) -> "LaurentPoly":
        p = self._require_charp()
        return LaurentPoly(
            self.n, tuple((e / p, c.pth_root()) for e, c in self.terms), self.field  # type: ignore[union-attr]
        )

    def _require_charp(self) -> int:
        if self.field is None:
            raise ValidationError("Frobenius needs a coefficient field of positive characteristic")
        return self.field.p

    def __pow__(self, k: int) -> "LaurentPoly":
        if not isinstance(k, int) or k < 0:
            raise ValidationError(f"exponent must be a nonnegative integer, got {k!r}")
        if k == 0:
            return LaurentPoly.monomial(RatVec.zero(self.n), 1, self.field)
        if self.field is not None and k % self.field.p == 0:
            return self.frobenius() ** (k // self.field.p)
        if len(self.terms) == 1:
            (e, c), = self.terms
            return LaurentPoly(self.n, ((e * k, c ** k),), self.field)
        result = LaurentPoly.monomial(RatVec.zero(self.n), 1, self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, exp: Sequence[Any]) -> "LaurentPoly":
        """Multiply by the monomial x^exp"""
        exp = RatVec(exp)
        return LaurentPoly(self.n, tuple((e + exp, c) for e, c in self.terms), self.field)

    def scale_exponents(self, factor: Any) -> "LaurentPoly":
        factor = Fraction(factor)
        return LaurentPoly(self.n, tuple((e * factor, c) for e, c in self.terms), self.field)

    def map_coeffs(self, fn: Callable[[Coeff], Any]) -> "LaurentPoly":
        return LaurentPoly(self.n, tuple((e, fn(c)) for e, c in self.terms), self.field)

    def select(self, keep: Callable[[RatVec], bool]) -> "LaurentPoly":
        return LaurentPoly(self.n, tuple((e, c) for e, c in self.terms if keep(e)), self.field)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            mono = "*".join(f"x{i + 1}^{v}" for i, v in enumerate(e) if v != 0)
            parts.append(f"{c!r}*{mono}" if mono else f"{c!r}")
        return " + ".join(parts)


def evaluate(coeffs: Sequence[LaurentPoly], value: LaurentPoly) -> LaurentPoly:
    """sum a_i * value^i; powers go through the Frobenius shortcut where they can"""
    result = LaurentPoly.zero(value.n, value.field)
    for i, a in enumerate(coeffs):
        if a:
            result = result + a * value ** i
    return result


def from_terms(
    n: int, terms: Iterable[Tuple[Sequence[Any], Any]], field: Optional[FiniteField] = None
) -> LaurentPoly:
    return LaurentPoly(n, tuple((RatVec(e), c) for e, c in terms), field)
