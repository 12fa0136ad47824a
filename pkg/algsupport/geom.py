"""
Exact rational polyhedral cones

Cones carry both representations in canonical form: extreme rays and a lineality
basis (V side), facet normals and an equation basis (H side). Every vector is a
primitive integer tuple; lists are sorted, so equal cones compare equal.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import ceil
from typing import Iterable, Iterator, List, Optional, Sequence, Set, Tuple

import sympy

try:
    from sympy.core.intfunc import igcdex
except ImportError:  # sympy < 1.13
    from sympy.core.numbers import igcdex

from .exceptions import AlgSupportError, PreconditionError, ValidationError
from .numbers import RatVec, dot, primitive, sign

logger = logging.getLogger(__name__)

IntVec = Tuple[int, ...]
Shift = Tuple[Sequence[Fraction], "Cone"]


def _to_fraction(x: sympy.Expr) -> Fraction:
    r = sympy.Rational(x)
    return Fraction(int(r.p), int(r.q))


def _matrix(rows: Sequence[Sequence[object]], n: int) -> sympy.Matrix:
    entries = []
    for row in rows:
        for x in row:
            f = Fraction(x)  # type: ignore[arg-type]
            entries.append(sympy.Rational(f.numerator, f.denominator))
    return sympy.Matrix(len(rows), n, entries)


def _rank(rows: Sequence[Sequence[object]], n: int) -> int:
    if not rows:
        return 0
    return int(_matrix(rows, n).rank())


def span_basis(vectors: Sequence[Sequence[object]], n: int) -> Tuple[IntVec, ...]:
    """Canonical basis of a rational subspace: primitive rows of the reduced echelon form"""
    vectors = [v for v in vectors if any(Fraction(x) != 0 for x in v)]  # type: ignore[arg-type]
    if not vectors:
        return ()
    reduced, _ = _matrix(vectors, n).rref()
    rows = []
    for i in range(reduced.rows):
        row = [_to_fraction(reduced[i, j]) for j in range(n)]
        if any(row):
            rows.append(primitive(row))
    return tuple(sorted(rows))


def nullspace(rows: Sequence[Sequence[object]], n: int) -> Tuple[IntVec, ...]:
    """Canonical basis of {x : r . x = 0 for every row r}"""
    rows = [r for r in rows if any(Fraction(x) != 0 for x in r)]  # type: ignore[arg-type]
    if not rows:
        return tuple(sorted(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))
    basis = _matrix(rows, n).nullspace()
    vectors = [[_to_fraction(b[j]) for j in range(n)] for b in basis]
    return span_basis(vectors, n)


def _neg(v: Sequence[int]) -> IntVec:
    return tuple(-x for x in v)


def _hcone_rays(
    inequalities: Sequence[Sequence[int]], equations: Sequence[Sequence[int]], n: int
) -> Tuple[Tuple[IntVec, ...], Tuple[IntVec, ...]]:
    """Extreme rays (orthogonal to the lineality space) and lineality basis of {A x >= 0, E x = 0}"""
    A = [tuple(a) for a in inequalities if any(a)]
    E = [tuple(e) for e in equations if any(e)]
    lineality = nullspace(A + E, n)
    base = E + list(lineality)
    free = n - _rank(base, n)
    if free <= 0:
        return (), lineality
    rays: Set[IntVec] = set()
    for subset in combinations(range(len(A)), free - 1):
        kernel = nullspace(base + [A[i] for i in subset], n)
        if len(kernel) != 1:
            continue
        for cand in (kernel[0], _neg(kernel[0])):
            if all(dot(a, cand) >= 0 for a in A):
                rays.add(primitive(cand))
    return tuple(sorted(rays)), lineality


@dataclass(frozen=True)
class Cone:
    """Rational polyhedral cone in R^n, u in cone iff f.u >= 0 for inequalities and e.u = 0"""
    n: int
    rays: Tuple[IntVec, ...]
    lineality: Tuple[IntVec, ...]
    inequalities: Tuple[IntVec, ...]
    equations: Tuple[IntVec, ...]

    @classmethod
    def from_generators(cls, generators: Iterable[Sequence[object]], n: Optional[int] = None) -> "Cone":
        gens = [RatVec(g) for g in generators]
        if n is None:
            if not gens:
                raise ValidationError("the ambient dimension is needed for an empty generator list")
            n = len(gens[0])
        if any(len(g) != n for g in gens):
            raise ValidationError(f"generators must all live in R^{n}")
        rows = [primitive(g) for g in gens if not g.is_zero()]
        facets, facet_eqs = _hcone_rays(rows, [], n)
        rays, lineality = _hcone_rays(facets, facet_eqs, n)
        return cls(n, rays, lineality, facets, facet_eqs)

    @classmethod
    def from_inequalities(
        cls,
        inequalities: Iterable[Sequence[object]],
        equations: Iterable[Sequence[object]] = (),
        n: Optional[int] = None,
    ) -> "Cone":
        ineqs = [RatVec(f) for f in inequalities]
        eqs = [RatVec(e) for e in equations]
        if n is None:
            if not ineqs and not eqs:
                raise ValidationError("the ambient dimension is needed for an empty constraint list")
            n = len((ineqs + eqs)[0])
        if any(len(v) != n for v in ineqs + eqs):
            raise ValidationError(f"constraints must all live in R^{n}")
        rays, lineality = _hcone_rays([primitive(f) for f in ineqs], [primitive(e) for e in eqs], n)
        return cls.from_generators(list(rays) + list(lineality) + [_neg(v) for v in lineality], n)

    @classmethod
    def orthant(cls, n: int) -> "Cone":
        return cls.from_generators([RatVec.unit(n, i) for i in range(n)], n)

    @classmethod
    def zero(cls, n: int) -> "Cone":
        return cls.from_generators([], n)

    @classmethod
    def full(cls, n: int) -> "Cone":
        return cls.from_inequalities([], [], n)

    @classmethod
    def halfspace(cls, normal: Sequence[object]) -> "Cone":
        normal = RatVec(normal)
        if normal.is_zero():
            raise ValidationError("a half-space needs a nonzero normal")
        return cls.from_inequalities([normal])

    @property
    def dim(self) -> int:
        return self.n - len(self.equations)

    @property
    def strongly_convex(self) -> bool:
        return not self.lineality

    def is_full_dimensional(self) -> bool:
        return not self.equations

    @property
    def generators(self) -> Tuple[RatVec, ...]:
        """V-representation: extreme rays plus both signs of the lineality basis"""
        gens = list(self.rays) + list(self.lineality) + [_neg(v) for v in self.lineality]
        return tuple(RatVec(g) for g in gens)

    @property
    def facets(self) -> Tuple[RatVec, ...]:
        """H-representation: facet normals plus both signs of the equation basis"""
        rows = list(self.inequalities) + list(self.equations) + [_neg(v) for v in self.equations]
        return tuple(RatVec(f) for f in rows)

    def contains(self, point: Sequence[object]) -> bool:
        if len(point) != self.n:
            raise ValidationError(f"point of dimension {len(point)} tested against a cone in R^{self.n}")
        return all(sign(dot(f, point)) >= 0 for f in self.inequalities) and all(
            sign(dot(e, point)) == 0 for e in self.equations
        )

    def contains_cone(self, other: "Cone") -> bool:
        return all(self.contains(g) for g in other.generators)

    def interior_point(self) -> RatVec:
        """A point of the relative interior: the sum of the extreme rays"""
        total = RatVec.zero(self.n)
        for r in self.rays:
            total = total + r
        return total

    def __repr__(self) -> str:
        return f"Cone(n={self.n}, rays={list(self.rays)}, lineality={list(self.lineality)})"


def dual(c: Cone) -> Cone:
    """The dual cone {v : v.u >= 0 for all u in c}; representations swap roles"""
    return Cone(c.n, c.inequalities, c.equations, c.rays, c.lineality)


def intersect(a: Cone, b: Cone) -> Cone:
    if a.n != b.n:
        raise ValidationError(f"cannot intersect cones in R^{a.n} and R^{b.n}")
    return Cone.from_inequalities(
        list(a.inequalities) + list(b.inequalities), list(a.equations) + list(b.equations), a.n
    )


def intersect_all(cones: Sequence[Cone]) -> Cone:
    if not cones:
        raise ValidationError("nothing to intersect")
    result = cones[0]
    for c in cones[1:]:
        result = intersect(result, c)
    return result


def cone_sum(a: Cone, b: Cone) -> Cone:
    """Minkowski sum of two cones"""
    if a.n != b.n:
        raise ValidationError(f"cannot add cones in R^{a.n} and R^{b.n}")
    return Cone.from_generators(list(a.generators) + list(b.generators), a.n)


def faces(c: Cone, d: int) -> List[Cone]:
    """All d-dimensional faces of c"""
    if not 0 <= d <= c.dim:
        raise PreconditionError(f"face dimension {d} outside 0..{c.dim}")
    lin = list(c.lineality) + [_neg(v) for v in c.lineality]
    seen: Set[Tuple[IntVec, ...]] = set()
    found = {}
    for k in range(len(c.inequalities) + 1):
        for subset in combinations(c.inequalities, k):
            tight = tuple(r for r in c.rays if all(dot(f, r) == 0 for f in subset))
            if tight in seen:
                continue
            seen.add(tight)
            face = Cone.from_generators(list(tight) + lin, c.n)
            if face.dim == d:
                found[(face.rays, face.lineality)] = face
    return [found[key] for key in sorted(found)]


def lattice_points(lo: Sequence[int], hi: Sequence[int]) -> Iterator[IntVec]:
    """All integer points of the box [lo, hi]"""
    return product(*(range(a, b + 1) for a, b in zip(lo, hi)))


def hilbert_basis(c: Cone) -> List[RatVec]:
    """Minimal generating set of the semigroup c intersected with Z^n.

    Candidates come from the box spanned by the rays and are kept greedily in
    order of a functional positive on c, so an element is dropped exactly
    when it is a sum involving an earlier one.

    Args:
        c: strongly convex cone.

    Returns:
        The basis, sorted; empty for the zero cone.

    Raises:
        PreconditionError: ``c`` contains a line.
    """
    if not c.strongly_convex:
        raise PreconditionError("the Hilbert basis needs a strongly convex cone")
    if not c.rays:
        return []
    lo = [sum(min(0, r[i]) for r in c.rays) for i in range(c.n)]
    hi = [sum(max(0, r[i]) for r in c.rays) for i in range(c.n)]
    functional = [sum(f[i] for f in c.inequalities) for i in range(c.n)]
    candidates = [x for x in lattice_points(lo, hi) if any(x) and c.contains(x)]
    candidates.sort(key=lambda x: (dot(functional, x), x))
    basis: List[IntVec] = []
    for x in candidates:
        if not any(c.contains(tuple(a - b for a, b in zip(x, h))) for h in basis):
            basis.append(x)
    logger.debug("Hilbert basis of %r has %d elements", c, len(basis))
    return [RatVec(h) for h in sorted(basis)]


def _solve(rows: Sequence[Sequence[object]], rhs: Sequence[object], n: int) -> Optional[RatVec]:
    """Unique solution of rows x = rhs, or None when inconsistent or underdetermined"""
    if _rank(rows, n) != n:
        return None
    M = _matrix(rows, n)
    b = _matrix([[v] for v in rhs], 1)
    try:
        sol, params = M.gauss_jordan_solve(b)
    except ValueError:
        return None
    if params.shape[0]:
        return None
    return RatVec(_to_fraction(sol[i, 0]) for i in range(n))


def polyhedron_vertices(shifts: Sequence[Shift]) -> List[RatVec]:
    """Vertices of the intersection of the gamma_j + sigma_j, cut down to the orthogonal
    complement of the lineality space of the intersected cone"""
    if not shifts:
        raise ValidationError("no shifted cones given")
    n = shifts[0][1].n
    sigma = intersect_all([c for _, c in shifts])
    ineqs: List[Tuple[IntVec, Fraction]] = []
    eqs: List[Tuple[IntVec, Fraction]] = []
    for gamma, c in shifts:
        gamma = RatVec(gamma)
        ineqs.extend((f, Fraction(dot(f, gamma))) for f in c.inequalities)
        eqs.extend((e, Fraction(dot(e, gamma))) for e in c.equations)
    eqs.extend((l, Fraction(0)) for l in sigma.lineality)
    eq_rows = [e for e, _ in eqs]
    d = n - _rank(eq_rows, n)
    vertices: Set[RatVec] = set()
    for subset in combinations(ineqs, d):
        rows = eq_rows + [f for f, _ in subset]
        rhs = [b for _, b in eqs] + [b for _, b in subset]
        x = _solve(rows, rhs, n)
        if x is None:
            continue
        if all(dot(f, x) >= b for f, b in ineqs) and all(dot(e, x) == b for e, b in eqs):
            vertices.add(x)
    return sorted(vertices)


def shift_into_intersection_many(shifts: Sequence[Shift]) -> RatVec:
    """Lattice gamma with the intersection of the gamma_j + sigma_j inside gamma + (intersection of sigma_j).

    Args:
        shifts: pairs (gamma_j, sigma_j) in a common dimension.

    Returns:
        gamma, checked against every vertex of the intersection.

    Raises:
        PreconditionError: the intersected cone is not full dimensional, or
            the shifted cones have no common point.
        AlgSupportError: the vertex check fails.
    """
    sigma = intersect_all([c for _, c in shifts])
    if not sigma.is_full_dimensional():
        raise PreconditionError("the intersection of the cones is not full dimensional")
    n = sigma.n
    vertices = polyhedron_vertices(shifts)
    if not vertices:
        raise PreconditionError("the shifted cones do not meet")
    x0 = vertices[0].floor()
    if not sigma.inequalities:
        return x0
    w = sigma.interior_point()
    t = 0
    for f in sigma.inequalities:
        lowest = min(Fraction(dot(f, v)) for v in vertices)
        t = max(t, ceil((Fraction(dot(f, x0)) - lowest) / Fraction(dot(f, w))))
    gamma = x0 - w * t
    for v in vertices:
        if not sigma.contains(v - gamma):
            raise AlgSupportError(f"shift certificate failed at vertex {v!r}")
    logger.debug("shift for %d cones in R^%d: %r", len(shifts), n, gamma)
    return gamma


def shift_into_intersection(
    g1: Sequence[object], c1: Cone, g2: Sequence[object], c2: Cone
) -> RatVec:
    return shift_into_intersection_many([(RatVec(g1), c1), (RatVec(g2), c2)])


def _column_echelon(rows: Sequence[Sequence[int]], n: int) -> List[List[int]]:
    """Unimodular U with rows . U lower triangular; independent rows leave zeros past their count"""
    M = [[int(x) for x in r] for r in rows]
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    for i in range(len(M)):
        for j in range(i + 1, n):
            a, b = M[i][i], M[i][j]
            if b == 0:
                continue
            s, t, g = (int(v) for v in igcdex(a, b))
            p, q = -b // g, a // g
            for X in (M, U):
                for row in X:
                    ci, cj = row[i], row[j]
                    row[i], row[j] = s * ci + t * cj, p * ci + q * cj
    return U


@dataclass(frozen=True)
class LinealityQuotient:
    """Z^n modulo the lattice points of a cone's lineality space, with coordinates in Z^r

    `project` is onto Z^r with kernel the lattice points of the lineality space; `lift`
    picks one preimage. Cones containing the lineality space descend to cones in R^r.
    """
    n: int
    r: int
    U: Tuple[IntVec, ...]
    V: Tuple[IntVec, ...]

    @classmethod
    def of(cls, cone: Cone) -> "LinealityQuotient":
        n = cone.n
        annihilator = nullspace(cone.lineality, n)
        U = _column_echelon(annihilator, n)
        inverse = sympy.Matrix(U).inv()
        V = tuple(tuple(int(inverse[i, j]) for j in range(n)) for i in range(n))
        return cls(n, len(annihilator), tuple(tuple(row) for row in U), V)

    def project(self, x: Sequence[object]) -> RatVec:
        return RatVec(sum(self.V[i][j] * Fraction(x[j]) for j in range(self.n)) for i in range(self.r))  # type: ignore[arg-type]

    def lift(self, y: Sequence[object]) -> RatVec:
        return RatVec(
            sum(self.U[j][i] * Fraction(y[i]) for i in range(self.r)) for j in range(self.n)  # type: ignore[arg-type]
        )

    def _image(self, f: Sequence[int]) -> IntVec:
        full = [sum(f[k] * self.U[k][i] for k in range(self.n)) for i in range(self.n)]
        if any(full[self.r:]):
            raise PreconditionError("the cone does not contain the lineality space being factored out")
        return tuple(full[: self.r])

    def reduce_cone(self, c: Cone) -> Cone:
        if c.n != self.n:
            raise ValidationError(f"cone in R^{c.n} reduced by a quotient of R^{self.n}")
        return Cone.from_inequalities(
            [self._image(f) for f in c.inequalities], [self._image(e) for e in c.equations], self.r
        )


def _canonical_hyperplane(v: Sequence[int]) -> IntVec:
    p = primitive(v)
    for x in p:
        if x != 0:
            return p if x > 0 else _neg(p)
    return p


def _crosses(region: Cone, h: Sequence[int]) -> bool:
    values = [dot(h, g) for g in region.generators]
    return any(v > 0 for v in values) and any(v < 0 for v in values)


def _covers(region: Cone, targets: Sequence[Cone], hyperplanes: Sequence[IntVec]) -> bool:
    if any(t.contains_cone(region) for t in targets):
        return True
    for i, h in enumerate(hyperplanes):
        if not _crosses(region, h):
            continue
        rest = hyperplanes[i + 1:]
        for normal in (h, _neg(h)):
            part = intersect(region, Cone.halfspace(normal))
            if part.dim == region.n and not _covers(part, targets, rest):
                return False
        return True
    return False


def _arrangement(cones: Sequence[Cone]) -> List[IntVec]:
    planes = {
        _canonical_hyperplane(f) for c in cones for f in list(c.inequalities) + list(c.equations)
    }
    return sorted(planes)


def in_interior_of_union(w: Sequence[object], duals: Sequence[Cone]) -> bool:
    """Whether w lies in the topological interior of the union of the cones.

    Decided locally: the tangent cones at w of the cones containing it must
    cover a whole neighbourhood, which the arrangement of their facet
    hyperplanes settles exactly.

    Args:
        w: nonzero point.
        duals: closed polyhedral cones of the same dimension as ``w``.

    Returns:
        True when some open ball around w lies inside the union.

    Raises:
        ValidationError: ``w`` is zero.
    """
    w = RatVec(w)
    if w.is_zero():
        raise ValidationError("w must be nonzero")
    tangents = []
    for c in duals:
        if not c.contains(w):
            continue
        tight = [f for f in c.inequalities if dot(f, w) == 0]
        tangents.append(Cone.from_inequalities(tight, c.equations, c.n))
    if not tangents:
        return False
    return _covers(Cone.full(len(w)), tangents, _arrangement(tangents))


def union_covers_orthant(duals: Sequence[Cone]) -> bool:
    """Whether the closed first orthant lies inside the union of the cones"""
    if not duals:
        return False
    n = duals[0].n
    return _covers(Cone.orthant(n), duals, _arrangement(duals))
