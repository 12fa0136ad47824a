"""
Exact scalars and vectors

Rationals are ``fractions.Fraction``; weights may additionally carry entries of one
real quadratic field Q(sqrt(D)), represented by ``QuadraticValue``.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, isqrt
from typing import Any, Iterable, Optional, Sequence, Tuple, Union

from .exceptions import ValidationError

Rational = Union[int, Fraction]


@dataclass(frozen=True, eq=False)
class QuadraticValue:
    """Exact element a + b*sqrt(D) of a real quadratic field"""
    a: Fraction
    b: Fraction
    D: int

    def __post_init__(self) -> None:
        if not isinstance(self.D, int) or self.D <= 1 or isqrt(self.D) ** 2 == self.D:
            raise ValidationError(f"D must be a positive non-square integer, got {self.D!r}")
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    def _parts(self, other: Any) -> Optional[Tuple[Fraction, Fraction]]:
        if isinstance(other, QuadraticValue):
            if other.D != self.D:
                raise ValidationError(f"cannot mix Q(sqrt({self.D})) and Q(sqrt({other.D}))")
            return other.a, other.b
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Fraction(other), Fraction(0)
        return None

    def __add__(self, other: Any) -> "Scalar":
        parts = self._parts(other)
        if parts is None:
            return NotImplemented
        return quad(self.a + parts[0], self.b + parts[1], self.D)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return quad(-self.a, -self.b, self.D)

    def __sub__(self, other: Any) -> "Scalar":
        parts = self._parts(other)
        if parts is None:
            return NotImplemented
        return quad(self.a - parts[0], self.b - parts[1], self.D)

    def __rsub__(self, other: Any) -> "Scalar":
        parts = self._parts(other)
        if parts is None:
            return NotImplemented
        return quad(parts[0] - self.a, parts[1] - self.b, self.D)

    def __mul__(self, other: Any) -> "Scalar":
        parts = self._parts(other)
        if parts is None:
            return NotImplemented
        c, d = parts
        return quad(self.a * c + self.b * d * self.D, self.a * d + self.b * c, self.D)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.D

    def conjugate(self) -> "Scalar":
        return quad(self.a, -self.b, self.D)

    def __truediv__(self, other: Any) -> "Scalar":
        parts = self._parts(other)
        if parts is None:
            return NotImplemented
        c, d = parts
        denom = c * c - d * d * self.D
        if denom == 0:
            raise ZeroDivisionError("division by zero in a quadratic field")
        a = (self.a * c - self.b * d * self.D) / denom
        b = (self.b * c - self.a * d) / denom
        return quad(a, b, self.D)

    def __rtruediv__(self, other: Any) -> "Scalar":
        parts = self._parts(other)
        if parts is None:
            return NotImplemented
        return (self.conjugate() * parts[0]) / self.norm()

    def sign(self) -> int:
        sa = _fsign(self.a)
        sb = _fsign(self.b)
        if sb == 0 or sa == sb:
            return sa if sa != 0 else sb
        if sa == 0:
            return sb
        # opposite signs: the larger square wins
        return sa if self.a * self.a > self.b * self.b * self.D else sb

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, QuadraticValue):
            return (self.a, self.b, self.D) == (other.a, other.b, other.D)
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.D))

    def __lt__(self, other: Any) -> bool:
        return sign(self - other) < 0

    def __le__(self, other: Any) -> bool:
        return sign(self - other) <= 0

    def __gt__(self, other: Any) -> bool:
        return sign(self - other) > 0

    def __ge__(self, other: Any) -> bool:
        return sign(self - other) >= 0

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * self.D ** 0.5

    def __repr__(self) -> str:
        return f"({self.a} + {self.b}*sqrt({self.D}))"


Scalar = Union[Fraction, QuadraticValue]


def quad(a: Rational, b: Rational, D: int) -> Scalar:
    """Build a + b*sqrt(D), collapsing to a Fraction when b == 0"""
    if b == 0:
        return Fraction(a)
    return QuadraticValue(Fraction(a), Fraction(b), D)


def _fsign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def to_scalar(value: Any) -> Scalar:
    """Coerce ints, Fractions, rational strings and quadratic values to a Scalar"""
    if isinstance(value, bool):
        raise ValidationError("booleans are not numbers here")
    if isinstance(value, QuadraticValue):
        return value
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except ValueError as e:
            raise ValidationError(f"not a rational number: {value!r}") from e
    raise ValidationError(f"not an exact number: {value!r}")


def sign(value: Any) -> int:
    if isinstance(value, QuadraticValue):
        return value.sign()
    return _fsign(Fraction(value))


def dot(u: Sequence[Any], v: Sequence[Any]) -> Scalar:
    if len(u) != len(v):
        raise ValidationError(f"dimension mismatch: {len(u)} vs {len(v)}")
    total: Scalar = Fraction(0)
    for x, y in zip(u, v):
        total = total + to_scalar(x) * to_scalar(y)
    return total


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b) if a and b else 0


def primitive(v: Sequence[Rational]) -> Tuple[int, ...]:
    """Primitive integer vector on the ray of a rational vector (zero stays zero)"""
    fracs = [Fraction(x) for x in v]
    den = reduce(lcm, (f.denominator for f in fracs), 1)
    ints = [int(f * den) for f in fracs]
    g = reduce(gcd, (abs(x) for x in ints), 0)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


class RatVec(tuple):
    """Exact point or direction; entries are Fractions or QuadraticValues of one field"""

    def __new__(cls, coords: Iterable[Any] = ()) -> "RatVec":
        values = tuple(to_scalar(c) for c in coords)
        fields = {v.D for v in values if isinstance(v, QuadraticValue)}
        if len(fields) > 1:
            raise ValidationError(f"entries from several quadratic fields: {sorted(fields)}")
        return super().__new__(cls, values)

    @classmethod
    def zero(cls, n: int) -> "RatVec":
        return cls([0] * n)

    @classmethod
    def unit(cls, n: int, i: int) -> "RatVec":
        return cls([1 if j == i else 0 for j in range(n)])

    @property
    def n(self) -> int:
        return len(self)

    @property
    def quad_field(self) -> Optional[int]:
        for v in self:
            if isinstance(v, QuadraticValue):
                return v.D
        return None

    def is_rational(self) -> bool:
        return self.quad_field is None

    def _check(self, other: Sequence[Any]) -> None:
        if len(other) != len(self):
            raise ValidationError(f"dimension mismatch: {len(self)} vs {len(other)}")

    def __add__(self, other: Sequence[Any]) -> "RatVec":  # type: ignore[override]
        self._check(other)
        return RatVec(a + to_scalar(b) for a, b in zip(self, other))

    def __sub__(self, other: Sequence[Any]) -> "RatVec":
        self._check(other)
        return RatVec(a - to_scalar(b) for a, b in zip(self, other))

    def __rsub__(self, other: Sequence[Any]) -> "RatVec":
        self._check(other)
        return RatVec(to_scalar(b) - a for a, b in zip(self, other))

    def __neg__(self) -> "RatVec":
        return RatVec(-a for a in self)

    def __mul__(self, scalar: Any) -> "RatVec":  # type: ignore[override]
        s = to_scalar(scalar)
        return RatVec(a * s for a in self)

    __rmul__ = __mul__  # type: ignore[assignment]

    def __truediv__(self, scalar: Any) -> "RatVec":
        s = to_scalar(scalar)
        return RatVec(a / s for a in self)

    def dot(self, other: Sequence[Any]) -> Scalar:
        return dot(self, other)

    def is_zero(self) -> bool:
        return all(v == 0 for v in self)

    def _require_rational(self) -> None:
        if not self.is_rational():
            raise ValidationError(f"{self!r} has irrational entries")

    @property
    def denominator(self) -> int:
        self._require_rational()
        return reduce(lcm, (Fraction(v).denominator for v in self), 1)

    def is_integral(self) -> bool:
        return self.is_rational() and self.denominator == 1

    def primitive(self) -> "RatVec":
        self._require_rational()
        return RatVec(primitive(self))  # type: ignore[arg-type]

    def floor(self) -> "RatVec":
        self._require_rational()
        return RatVec(Fraction(v).__floor__() for v in self)

    def rational_parts(self) -> Tuple["RatVec", "RatVec"]:
        """Split a + b*sqrt(D) entrywise into the rational vectors a and b"""
        a = []
        b = []
        for v in self:
            if isinstance(v, QuadraticValue):
                a.append(v.a)
                b.append(v.b)
            else:
                a.append(v)
                b.append(Fraction(0))
        return RatVec(a), RatVec(b)

    def as_ints(self) -> Tuple[int, ...]:
        if not self.is_integral():
            raise ValidationError(f"{self!r} is not a lattice point")
        return tuple(int(v) for v in self)

    def __repr__(self) -> str:
        return "RatVec(({}))".format(", ".join(str(v) for v in self))


def vec(*coords: Any) -> RatVec:
    """Shorthand constructor: vec(1, -1) == RatVec((1, -1))"""
    return RatVec(coords)
