"""
Finite fields F_{p^m}

Elements are residues of polynomials over F_p modulo a fixed irreducible polynomial from
a bundled table, so serialized coefficients mean the same thing on every run.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Any, Dict, Iterator, List, Tuple

import sympy
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import (
    gf_add,
    gf_from_int_poly,
    gf_gcdex,
    gf_irreducible_p,
    gf_mul,
    gf_neg,
    gf_pow_mod,
    gf_rem,
    gf_strip,
    gf_sub,
)

from ..constants import MAX_EXTENSION_DEGREE
from ..exceptions import ValidationError

logger = logging.getLogger(__name__)

# Conway polynomials, coefficients from the constant term up
CONWAY: Dict[Tuple[int, int], Tuple[int, ...]] = {
    (2, 1): (1, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (3, 1): (1, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (5, 1): (3, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (5, 4): (2, 4, 4, 0, 1),
    (7, 1): (4, 1),
    (7, 2): (3, 6, 1),
    (7, 3): (4, 0, 6, 1),
    (7, 4): (3, 4, 5, 0, 1),
}

Dense = List[int]


@lru_cache(maxsize=None)
def _modulus(p: int, m: int) -> Tuple[int, ...]:
    """Defining polynomial, highest coefficient first (galoistools order)"""
    if (p, m) in CONWAY:
        low_first = CONWAY[(p, m)]
    elif m == 1:
        low_first = (0, 1)
    else:
        raise ValidationError(
            f"no defining polynomial for F_{p}^{m}: degrees up to {MAX_EXTENSION_DEGREE} "
            "over p in (2, 3, 5, 7) are bundled"
        )
    dense = gf_from_int_poly(list(reversed(low_first)), p)
    if not gf_irreducible_p(dense, p, ZZ):
        raise ValidationError(f"bundled polynomial for F_{p}^{m} is reducible")
    return tuple(dense)


@dataclass(frozen=True)
class FiniteField:
    """F_{p^m} as F_p[t] modulo the bundled polynomial of degree m"""
    p: int
    m: int = 1

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or not sympy.isprime(self.p):
            raise ValidationError(f"p must be prime, got {self.p!r}")
        if not isinstance(self.m, int) or self.m < 1:
            raise ValidationError(f"extension degree must be a positive integer, got {self.m!r}")
        _modulus(self.p, self.m)

    @property
    def q(self) -> int:
        return self.p ** self.m

    @property
    def modulus(self) -> Dense:
        return list(_modulus(self.p, self.m))

    def _reduce(self, dense: Dense) -> Tuple[int, ...]:
        return tuple(gf_rem(gf_strip(dense), self.modulus, self.p, ZZ))

    def zero(self) -> "FqElem":
        return FqElem(self, ())

    def one(self) -> "FqElem":
        return FqElem(self, (1,))

    def element(self, k: int) -> "FqElem":
        """k * 1 in the prime field"""
        return FqElem(self, self._reduce([k % self.p]))

    def from_coeffs(self, coeffs: List[int]) -> "FqElem":
        """Element c_0 + c_1 t + ... given from the constant term up"""
        if len(coeffs) > self.m:
            raise ValidationError(f"{len(coeffs)} coefficients for an element of F_{self.p}^{self.m}")
        return FqElem(self, self._reduce([c % self.p for c in reversed(coeffs)]))

    def from_index(self, i: int) -> "FqElem":
        """i-th element when elements are numbered by their base-p digits"""
        if not 0 <= i < self.q:
            raise ValidationError(f"index {i} outside 0..{self.q - 1}")
        digits = []
        for _ in range(self.m):
            digits.append(i % self.p)
            i //= self.p
        return self.from_coeffs(digits)

    def elements(self) -> Iterator["FqElem"]:
        for digits in product(range(self.p), repeat=self.m):
            yield self.from_coeffs(list(reversed(digits)))

    def __repr__(self) -> str:
        return f"F_{self.p}" if self.m == 1 else f"F_{self.p}^{self.m}"


@dataclass(frozen=True)
class FqElem:
    field: FiniteField
    value: Tuple[int, ...]

    def _other(self, other: Any) -> "FqElem":
        if isinstance(other, FqElem):
            if other.field != self.field:
                raise ValidationError(f"cannot mix {self.field!r} and {other.field!r}")
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return self.field.element(other)
        raise ValidationError(f"not an element of {self.field!r}: {other!r}")

    def _wrap(self, dense: Dense) -> "FqElem":
        return FqElem(self.field, self.field._reduce(dense))

    def __add__(self, other: Any) -> "FqElem":
        o = self._other(other)
        return self._wrap(gf_add(list(self.value), list(o.value), self.field.p, ZZ))

    __radd__ = __add__

    def __sub__(self, other: Any) -> "FqElem":
        o = self._other(other)
        return self._wrap(gf_sub(list(self.value), list(o.value), self.field.p, ZZ))

    def __rsub__(self, other: Any) -> "FqElem":
        return self._other(other) - self

    def __neg__(self) -> "FqElem":
        return self._wrap(gf_neg(list(self.value), self.field.p, ZZ))

    def __mul__(self, other: Any) -> "FqElem":
        o = self._other(other)
        return self._wrap(gf_mul(list(self.value), list(o.value), self.field.p, ZZ))

    __rmul__ = __mul__

    def inverse(self) -> "FqElem":
        if self.is_zero():
            raise ZeroDivisionError(f"zero has no inverse in {self.field!r}")
        s, _, h = gf_gcdex(list(self.value), self.field.modulus, self.field.p, ZZ)
        # h is a nonzero constant
        return self._wrap(s) * pow(int(h[0]), -1, self.field.p)

    def __truediv__(self, other: Any) -> "FqElem":
        return self * self._other(other).inverse()

    def __rtruediv__(self, other: Any) -> "FqElem":
        return self._other(other) * self.inverse()

    def __pow__(self, n: int) -> "FqElem":
        if n < 0:
            return self.inverse() ** (-n)
        if self.is_zero():
            return self.field.one() if n == 0 else self
        dense = gf_pow_mod(list(self.value), n, self.field.modulus, self.field.p, ZZ)
        return self._wrap(dense)

    def frobenius(self) -> "FqElem":
        return self ** self.field.p

    def pth_root(self) -> "FqElem":
        """Inverse of the Frobenius: x^(p^(m-1))"""
        return self ** (self.field.p ** (self.field.m - 1))

    def is_zero(self) -> bool:
        return not self.value

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, FqElem):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self == self.field.element(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def coeffs(self) -> List[int]:
        """Coordinates from the constant term up, padded to the extension degree"""
        low = [int(c) for c in reversed(self.value)]
        return low + [0] * (self.field.m - len(low))

    def index(self) -> int:
        return sum(c * self.field.p ** i for i, c in enumerate(self.coeffs()))

    def __repr__(self) -> str:
        if self.field.m == 1:
            return str(self.coeffs()[0])
        terms = [f"{c}*t^{i}" if i else str(c) for i, c in enumerate(self.coeffs()) if c]
        return " + ".join(terms) or "0"


