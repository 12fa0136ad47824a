"""
Gröbner bases of ideals generated by pure-difference binomials and monomials

Polynomials are never stored with coefficients: a binomial U^a - U^b is the pair of
exponent vectors (a, b) with a leading, a monomial is its exponent vector. Buchberger's
algorithm keeps this shape: S-polynomials and reductions of such elements are again
binomials, monomials or zero.
"""

import heapq
import logging
from dataclasses import dataclass
from itertools import combinations, product
from math import ceil
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Set, Tuple, Union

from sympy.polys.monomials import monomial_div, monomial_divides, monomial_lcm, monomial_mul

from .exceptions import PreconditionError, ValidationError
from .geom import (
    Cone,
    LinealityQuotient,
    Shift,
    hilbert_basis,
    intersect_all,
    lattice_points,
    shift_into_intersection_many,
)
from .numbers import RatVec, dot

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]


@dataclass(frozen=True)
class TermOrder:
    """Term order on N^m given by a sort key; larger key means larger term"""
    name: str
    key: Callable[[Exponent], Tuple[int, ...]]

    def eliminates_tail(self, keep: int, m: int) -> bool:
        """Whether any term involving a variable of index >= keep beats every term without one"""
        if keep >= m:
            return True
        return self.name == "right-lex"

    def __repr__(self) -> str:
        return f"TermOrder({self.name})"


# last variable most significant
RIGHT_LEX = TermOrder("right-lex", lambda e: tuple(reversed(e)))
LEX = TermOrder("lex", lambda e: tuple(e))
GRADED_RIGHT_LEX = TermOrder("graded-right-lex", lambda e: (sum(e),) + tuple(reversed(e)))


@dataclass(frozen=True)
class Binomial:
    """U^lhs - U^rhs with lhs the leading term"""
    lhs: Exponent
    rhs: Exponent

    def __post_init__(self) -> None:
        if len(self.lhs) != len(self.rhs):
            raise ValidationError("binomial terms have different numbers of variables")
        if self.lhs == self.rhs:
            raise ValidationError("a binomial needs two distinct terms")
        if min(self.lhs + self.rhs, default=0) < 0:
            raise ValidationError("negative exponent in a binomial")

    @classmethod
    def make(cls, a: Sequence[int], b: Sequence[int], order: TermOrder = RIGHT_LEX) -> Optional["Binomial"]:
        """Orient a - b by the order, or None when the terms cancel"""
        a = tuple(a)
        b = tuple(b)
        if a == b:
            return None
        if order.key(a) > order.key(b):
            return cls(a, b)
        return cls(b, a)

    @property
    def nvars(self) -> int:
        return len(self.lhs)

    def is_relation_of(self, vectors: Sequence[Sequence[int]]) -> bool:
        """Whether sum (lhs_i - rhs_i) * v_i vanishes"""
        n = len(vectors[0]) if vectors else 0
        total = [0] * n
        for coeff, v in zip((a - b for a, b in zip(self.lhs, self.rhs)), vectors):
            for j in range(n):
                total[j] += coeff * int(v[j])
        return not any(total)

    def is_gcd_free(self) -> bool:
        return not any(a and b for a, b in zip(self.lhs, self.rhs))


Element = Union[Binomial, Exponent]


def _minimal(monomials: Iterable[Exponent]) -> Tuple[Exponent, ...]:
    unique = sorted(set(tuple(m) for m in monomials), key=lambda e: (sum(e), e))
    kept: List[Exponent] = []
    for m in unique:
        if not any(monomial_divides(k, m) for k in kept):
            kept.append(m)
    return tuple(sorted(kept))


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal given by its minimal generators"""
    generators: Tuple[Exponent, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "generators", _minimal(self.generators))

    @classmethod
    def unit(cls, m: int) -> "MonomialIdeal":
        return cls(((0,) * m,))

    def contains(self, e: Sequence[int]) -> bool:
        e = tuple(e)
        return any(monomial_divides(g, e) for g in self.generators)

    def intersection(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal(
            tuple(monomial_lcm(a, b) for a in self.generators for b in other.generators)
        )

    def __len__(self) -> int:
        return len(self.generators)


def reduce_term(
    t: Sequence[int], binomials: Sequence[Binomial], monomials: Sequence[Exponent]
) -> Optional[Exponent]:
    """Normal form of a single term: another term, or None when it lies in the monomial part"""
    t = tuple(t)
    while True:
        if any(monomial_divides(m, t) for m in monomials):
            return None
        for b in binomials:
            q = monomial_div(t, b.lhs)
            if q is not None:
                t = monomial_mul(q, b.rhs)
                break
        else:
            return t


def _split(basis: Sequence[Element]) -> Tuple[List[Binomial], List[Exponent]]:
    binomials = [e for e in basis if isinstance(e, Binomial)]
    monomials = [e for e in basis if not isinstance(e, Binomial)]
    return binomials, monomials  # type: ignore[return-value]


def normal_form(f: Element, basis: Sequence[Element], order: TermOrder = RIGHT_LEX) -> Optional[Element]:
    binomials, monomials = _split(basis)
    if not isinstance(f, Binomial):
        return reduce_term(f, binomials, monomials)
    u = reduce_term(f.lhs, binomials, monomials)
    v = reduce_term(f.rhs, binomials, monomials)
    if u is None and v is None:
        return None
    if u is None or v is None:
        return u if v is None else v
    return Binomial.make(u, v, order)


def lead(f: Element) -> Exponent:
    return f.lhs if isinstance(f, Binomial) else f


def s_polynomial(f: Element, g: Element, order: TermOrder = RIGHT_LEX) -> Optional[Element]:
    if not isinstance(f, Binomial) and not isinstance(g, Binomial):
        return None
    L = monomial_lcm(lead(f), lead(g))
    if isinstance(f, Binomial) and isinstance(g, Binomial):
        u = monomial_mul(monomial_div(L, f.lhs), f.rhs)
        v = monomial_mul(monomial_div(L, g.lhs), g.rhs)
        return Binomial.make(u, v, order)
    b = f if isinstance(f, Binomial) else g
    return monomial_mul(monomial_div(L, b.lhs), b.rhs)  # type: ignore[union-attr]


def _coprime(a: Exponent, b: Exponent) -> bool:
    return not any(x and y for x, y in zip(a, b))


def _reduce_basis(
    basis: Sequence[Element], order: TermOrder
) -> Tuple[List[Binomial], MonomialIdeal]:
    binomials, monomials = _split(basis)
    while True:
        mons = _minimal(monomials)
        binomials = [b for b in binomials if not any(monomial_divides(m, b.lhs) for m in mons)]
        binomials.sort(key=lambda b: (order.key(b.lhs), order.key(b.rhs)))
        kept: List[Binomial] = []
        for b in binomials:
            if not any(monomial_divides(k.lhs, b.lhs) for k in kept):
                kept.append(b)
        changed = False
        reduced: List[Binomial] = []
        monomials = list(mons)
        for b in kept:
            others = [k for k in kept if k is not b]
            t = reduce_term(b.rhs, others, mons)
            if t is None:
                monomials.append(b.lhs)
                changed = True
            else:
                reduced.append(Binomial(b.lhs, t))
        binomials = reduced
        if not changed:
            break
    binomials.sort(key=lambda b: (order.key(b.lhs), order.key(b.rhs)))
    return binomials, MonomialIdeal(tuple(monomials))


def buchberger_bm(
    binomials: Sequence[Binomial],
    monomials: Union[MonomialIdeal, Sequence[Exponent]],
    order: TermOrder = RIGHT_LEX,
) -> Tuple[List[Binomial], MonomialIdeal]:
    """Reduced Gröbner basis of (binomials) + (monomials), split into its binomial and monomial parts.

    Pairs are processed by the order of their lcm, and pairs with coprime
    leading terms are skipped.

    Args:
        binomials: pure differences x^lhs - x^rhs; they are reoriented under
            ``order`` and trivial ones are dropped.
        monomials: monomial generators, or an ideal already built from them.
        order: term order of the basis.

    Returns:
        The reduced binomials and the minimal monomial ideal of the basis.
    """
    gens = monomials.generators if isinstance(monomials, MonomialIdeal) else tuple(monomials)
    basis: List[Element] = []
    for b in binomials:
        oriented = Binomial.make(b.lhs, b.rhs, order)
        if oriented is not None:
            basis.append(oriented)
    basis.extend(tuple(m) for m in gens)

    queue: List[Tuple[Tuple[int, ...], int, int]] = []

    def push(i: int, j: int) -> None:
        L = monomial_lcm(lead(basis[i]), lead(basis[j]))
        heapq.heappush(queue, (order.key(L), i, j))

    for i, j in combinations(range(len(basis)), 2):
        push(i, j)
    processed = 0
    while queue:
        _, i, j = heapq.heappop(queue)
        processed += 1
        f, g = basis[i], basis[j]
        if _coprime(lead(f), lead(g)):
            continue
        s = s_polynomial(f, g, order)
        if s is None:
            continue
        h = normal_form(s, basis, order)
        if h is None:
            continue
        basis.append(h)
        for k in range(len(basis) - 1):
            push(k, len(basis) - 1)
    logger.debug("Buchberger: %d pairs, %d basis elements before reduction", processed, len(basis))
    return _reduce_basis(basis, order)


def is_groebner(binomials: Sequence[Binomial], monomials: MonomialIdeal, order: TermOrder = RIGHT_LEX) -> bool:
    """Whether every S-polynomial of the given elements reduces to zero"""
    basis: List[Element] = list(binomials) + list(monomials.generators)
    for f, g in combinations(basis, 2):
        s = s_polynomial(f, g, order)
        if s is not None and normal_form(s, basis, order) is not None:
            return False
    return True


def eliminate_tail(
    gb: Tuple[Sequence[Binomial], MonomialIdeal], keep: int, order: TermOrder = RIGHT_LEX
) -> Tuple[List[Binomial], MonomialIdeal]:
    """Contract a Gröbner basis to the first `keep` variables.

    Args:
        gb: binomial and monomial parts as returned by ``buchberger_bm``.
        keep: number of leading variables that survive.
        order: the order ``gb`` was computed for.

    Returns:
        The elements free of the trailing variables, cut to length ``keep``.

    Raises:
        PreconditionError: ``order`` is not an elimination order for the
            trailing variables.
    """
    binomials, monomials = gb
    terms = [b.lhs for b in binomials] + list(monomials.generators)
    m = len(terms[0]) if terms else keep
    if not order.eliminates_tail(keep, m):
        raise PreconditionError(f"{order!r} does not eliminate variables {keep}..{m - 1}")
    kept_b = [
        Binomial(b.lhs[:keep], b.rhs[:keep])
        for b in binomials
        if not any(b.lhs[keep:]) and not any(b.rhs[keep:])
    ]
    kept_m = tuple(e[:keep] for e in monomials.generators if not any(e[keep:]))
    return kept_b, MonomialIdeal(kept_m)


def _unit(m: int, i: int, power: int = 1) -> List[int]:
    e = [0] * m
    e[i] = power
    return e


def toric_ideal(basis: Sequence[Sequence[object]]) -> List[Binomial]:
    """Generators of the lattice ideal of Z-relations among the vectors, by elimination"""
    vectors = [RatVec(u) for u in basis]
    if any(not u.is_integral() for u in vectors):
        raise ValidationError("toric ideals need lattice vectors")
    if not vectors:
        return []
    s = len(vectors)
    n = len(vectors[0])
    m = s + n + 1
    gens: List[Binomial] = []
    for i, u in enumerate(vectors):
        ints = u.as_ints()
        a = _unit(m, i)
        b = [0] * m
        for j, x in enumerate(ints):
            if x < 0:
                a[s + j] = -x
            else:
                b[s + j] = x
        binomial = Binomial.make(a, b)
        if binomial is not None:
            gens.append(binomial)
    # w * t_1 ... t_n - 1 inverts the torus variables
    inverse = [0] * s + [1] * (n + 1)
    gens.append(Binomial.make(inverse, [0] * m))  # type: ignore[arg-type]
    gb = buchberger_bm(gens, MonomialIdeal(()))
    binomials, _ = eliminate_tail(gb, s)
    logger.debug("toric ideal of %d vectors: %d binomials", s, len(binomials))
    return binomials


@dataclass(frozen=True)
class SemigroupEncoding:
    """Semigroup ring of c intersected with Z^n as K[U_1..U_s] modulo a toric ideal"""
    cone: Cone
    basis: Tuple[RatVec, ...]
    ideal: Tuple[Binomial, ...]

    @classmethod
    def build(cls, cone: Cone) -> "SemigroupEncoding":
        basis = tuple(hilbert_basis(cone))
        return cls(cone, basis, tuple(toric_ideal(basis)))

    def point(self, exponent: Sequence[int]) -> RatVec:
        total = RatVec.zero(self.cone.n)
        for a, u in zip(exponent, self.basis):
            total = total + u * a
        return total


def _monomials_up_to(m: int, degree: int) -> Iterable[Exponent]:
    for e in product(range(degree + 1), repeat=m):
        if sum(e) <= degree:
            yield e


def hilbert_function(enc: SemigroupEncoding, degree: int) -> int:
    """Number of standard monomials of degree <= `degree` for a degree-compatible order"""
    binomials, monomials = buchberger_bm(enc.ideal, (), GRADED_RIGHT_LEX)
    leads = [b.lhs for b in binomials] + list(monomials.generators)
    return sum(
        1
        for e in _monomials_up_to(len(enc.basis), degree)
        if not any(monomial_divides(l, e) for l in leads)
    )


def semigroup_point_count(basis: Sequence[Sequence[object]], degree: int) -> int:
    """Number of distinct points sum a_i u_i with |a| <= degree"""
    vectors = [RatVec(u) for u in basis]
    n = len(vectors[0]) if vectors else 0
    points: Set[RatVec] = set()
    for e in _monomials_up_to(len(vectors), degree):
        total = RatVec.zero(n)
        for a, u in zip(e, vectors):
            total = total + u * a
        points.add(total)
    return len(points)


def minimal_monomial_generators(weights: Sequence[int], threshold: int) -> MonomialIdeal:
    """Monomials Y^a with weights . a >= threshold, from the elimination of
    (U_i V^{w_i} - Y_i, V^threshold) to K[Y]"""
    s = len(weights)
    if threshold <= 0:
        return MonomialIdeal.unit(s)
    if any(w < 0 for w in weights):
        raise ValidationError("half-space weights must be nonnegative on the cone")
    direct = [tuple(_unit(s, i)) for i, w in enumerate(weights) if w >= threshold]
    active = [i for i, w in enumerate(weights) if 0 < w < threshold]
    if not active:
        return MonomialIdeal(tuple(direct))
    k = len(active)
    m = 2 * k + 1
    gens = []
    for pos, i in enumerate(active):
        lhs = _unit(m, k + pos)
        lhs[2 * k] = weights[i]
        gens.append(Binomial.make(lhs, _unit(m, pos)))
    gb = buchberger_bm([g for g in gens if g is not None], [tuple(_unit(m, 2 * k, threshold))])
    binomials, contracted = eliminate_tail(gb, k)
    if binomials:
        logger.warning("half-space elimination left %d binomials", len(binomials))
    lifted = []
    for e in contracted.generators:
        full = [0] * s
        for pos, i in enumerate(active):
            full[i] = e[pos]
        lifted.append(tuple(full))
    return MonomialIdeal(tuple(lifted) + tuple(direct))


def _prepare(shifts: Sequence[Shift]) -> Tuple[List[Tuple[RatVec, Cone]], Cone]:
    prepared = [(RatVec(g), c) for g, c in shifts]
    if not prepared:
        raise ValidationError("no shifted cones given")
    if any(not g.is_integral() for g, _ in prepared):
        raise ValidationError("shifts must be lattice points")
    sigma = intersect_all([c for _, c in prepared])
    if not sigma.is_full_dimensional():
        raise PreconditionError("the intersection of the cones is not full dimensional")
    return prepared, sigma


def _reduced(
    prepared: Sequence[Tuple[RatVec, Cone]], sigma: Cone
) -> Tuple[LinealityQuotient, List[Tuple[RatVec, Cone]]]:
    """The same problem modulo the lineality space of sigma, where sigma is pointed"""
    q = LinealityQuotient.of(sigma)
    if q.r == 0:
        return q, []
    return q, [(q.project(g), q.reduce_cone(c)) for g, c in prepared]


def _in_all(x: Sequence[object], shifts: Sequence[Tuple[RatVec, Cone]]) -> bool:
    return all(c.contains(RatVec(x) - g) for g, c in shifts)


def minimal_modulo(points: Iterable[RatVec], sigma: Cone) -> List[RatVec]:
    """Points p with no other q in the set such that p - q lies in sigma"""
    unique = sorted(set(points))
    return [p for p in unique if not any(q != p and sigma.contains(p - q) for q in unique)]


def dickson_decompose(shifts: Sequence[Shift]) -> List[RatVec]:
    """Finite C with (intersection of gamma_j + sigma_j) ∩ Z^n = C + sigma ∩ Z^n

    Args:
        shifts: Pairs (gamma_j, sigma_j) of lattice points and cones.

    Returns:
        The minimal points C, sorted. When sigma contains a line, C holds one
        representative per class modulo the lattice points of that line space.

    Raises:
        ValidationError: No shifts, or a shift that is not a lattice point.
        PreconditionError: sigma is not full dimensional, or the shifted cones do not meet.
    """
    prepared, sigma = _prepare(shifts)
    if not sigma.strongly_convex:
        q, reduced = _reduced(prepared, sigma)
        if q.r == 0:
            return [RatVec.zero(sigma.n)]
        C = sorted(q.lift(c) for c in dickson_decompose(reduced))
        logger.debug("Dickson decomposition modulo a %d-dimensional lineality space", sigma.n - q.r)
        return C
    gamma0 = shift_into_intersection_many(prepared)
    encoding = SemigroupEncoding.build(sigma)
    s = len(encoding.basis)
    thresholds: Dict[Tuple[int, ...], int] = {}
    for gamma, cone in prepared:
        for f in cone.inequalities:
            c = ceil(dot(f, gamma - gamma0))
            if c > 0:
                thresholds[f] = max(c, thresholds.get(f, 0))
    ideal = MonomialIdeal.unit(s)
    for f, c in sorted(thresholds.items()):
        weights = [int(dot(f, u)) for u in encoding.basis]
        ideal = ideal.intersection(minimal_monomial_generators(weights, c))
    _, monomial_part = buchberger_bm(encoding.ideal, ideal)
    points = [encoding.point(e) for e in monomial_part.generators]
    C = [p + gamma0 for p in minimal_modulo(points, sigma)]
    logger.debug("Dickson decomposition: %d points over %r", len(C), sigma)
    return sorted(C)


def _oracle_at(
    prepared: Sequence[Tuple[RatVec, Cone]], gamma0: RatVec, basis: Sequence[RatVec], radius: int
) -> List[RatVec]:
    lo = [int(x) - radius for x in gamma0]
    hi = [int(x) + radius for x in gamma0]
    found = []
    for x in lattice_points(lo, hi):
        if not _in_all(x, prepared):
            continue
        point = RatVec(x)
        if not any(_in_all(point - h, prepared) for h in basis):
            found.append(point)
    return sorted(found)


def dickson_oracle(
    shifts: Sequence[Shift], radius: Optional[int] = None, max_doublings: int = 6
) -> List[RatVec]:
    """Enumeration oracle: minimal lattice points of the intersection inside growing boxes.

    Args:
        shifts: the same input as ``decompose``.
        radius: starting box radius around the common shift; by default two
            more than the spread of the gamma_j.
        max_doublings: how often the radius may double before giving up.

    Returns:
        The minimal points once two consecutive radii agree, else the last
        answer with a warning logged.
    """
    prepared, sigma = _prepare(shifts)
    if not sigma.strongly_convex:
        q, reduced = _reduced(prepared, sigma)
        if q.r == 0:
            return [RatVec.zero(sigma.n)]
        return sorted(q.lift(c) for c in dickson_oracle(reduced, radius, max_doublings))
    gamma0 = shift_into_intersection_many(prepared)
    basis = hilbert_basis(sigma)
    if radius is None:
        spread = max(
            (abs(int(x)) for g, _ in prepared for x in (g - gamma0)),
            default=0,
        )
        radius = 2 + spread
    previous = _oracle_at(prepared, gamma0, basis, radius)
    for _ in range(max_doublings):
        radius *= 2
        current = _oracle_at(prepared, gamma0, basis, radius)
        if current == previous:
            return current
        logger.debug("oracle grew to radius %d", radius)
        previous = current
    logger.warning("enumeration oracle did not stabilize at radius %d", radius)
    return previous


def certify_decomposition(shifts: Sequence[Shift], C: Sequence[RatVec]) -> bool:
    """Both inclusions: C + Hilbert basis stays inside, and the oracle finds nothing else"""
    prepared, sigma = _prepare(shifts)
    if not sigma.strongly_convex:
        q, reduced = _reduced(prepared, sigma)
        if q.r == 0:
            return len(C) == 1 and RatVec(C[0]).is_integral()
        return certify_decomposition(reduced, [q.project(c) for c in C])
    basis = hilbert_basis(sigma)
    for c in C:
        if not _in_all(c, prepared):
            return False
        if not all(_in_all(c + h, prepared) for h in basis):
            return False
    oracle = dickson_oracle(shifts)
    if sorted(C) != oracle:
        logger.warning("Gröbner path and enumeration oracle disagree: %r vs %r", list(C), oracle)
        return False
    return True


@dataclass(frozen=True)
class DicksonResult:
    C: Tuple[RatVec, ...]
    sigma: Cone
    certified: bool


def decompose(shifts: Sequence[Shift], certify: bool = True) -> DicksonResult:
    """Generalized Dickson decomposition of an intersection of shifted cones

    Args:
        shifts: Pairs (gamma_j, sigma_j); every gamma_j a lattice point.
        certify: Cross-check the Gröbner result against the enumeration oracle.

    Returns:
        DicksonResult with the minimal points C, the intersected cone sigma and
        whether the certificate held (always False when certify is off).

    Raises:
        ValidationError: Malformed shifts.
        PreconditionError: The intersection of the sigma_j is not full dimensional.
    """
    prepared, sigma = _prepare(shifts)
    C = dickson_decompose(prepared)
    certified = certify_decomposition(prepared, C) if certify else False
    return DicksonResult(tuple(C), sigma, certified)
