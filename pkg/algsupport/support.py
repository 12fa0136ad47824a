"""
Finitely presented supports of generalized series

A support is a finite point set plus infinite families: rays {base + k*step}, translated
semigroups base + N<gens>, and p-adic tails {base + m*drift + (1 - p^-k)*dir}. Everything
below works family by family and only ever looks at exact data.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import product
from math import ceil, floor
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Set, Tuple, Union

import sympy

try:
    from sympy.core.intfunc import igcdex
except ImportError:  # sympy < 1.13
    from sympy.core.numbers import igcdex

from .binom_ideal import dickson_decompose
from .constants import FaceKind, FamilyKind, Verdict
from .exceptions import NotInClassError, PreconditionError, ValidationError
from .geom import Cone, _solve, dual, faces, intersect, nullspace
from .numbers import RatVec, dot, lcm, primitive, sign

logger = logging.getLogger(__name__)


def _vec(v: Any) -> RatVec:
    v = RatVec(v)
    if not v.is_rational():
        raise ValidationError(f"support data must be rational, got {v!r}")
    return v


@dataclass(frozen=True)
class RayFamily:
    """{base + k*step : k in N}"""
    base: RatVec
    step: RatVec
    kind = FamilyKind.RAY

    def __post_init__(self) -> None:
        object.__setattr__(self, "base", _vec(self.base))
        object.__setattr__(self, "step", _vec(self.step))
        if len(self.base) != len(self.step):
            raise ValidationError("ray base and step have different dimensions")
        if self.step.is_zero():
            raise ValidationError("ray step must be nonzero")

    def directions(self) -> Tuple[RatVec, ...]:
        return (self.step,)

    def vectors(self) -> Tuple[RatVec, ...]:
        return (self.base, self.step)

    def sample(self, count: int) -> List[RatVec]:
        return [self.base + self.step * k for k in range(count)]

    def scaled(self, factor: Fraction) -> "RayFamily":
        return RayFamily(self.base * factor, self.step * factor)

    def translated(self, v: Sequence[Any]) -> "RayFamily":
        return RayFamily(self.base + v, self.step)


@dataclass(frozen=True)
class SemigroupFamily:
    """base + N<gens>"""
    base: RatVec
    gens: Tuple[RatVec, ...]
    kind = FamilyKind.SEMIGROUP

    def __post_init__(self) -> None:
        base = _vec(self.base)
        gens = tuple(g for g in (_vec(g) for g in self.gens) if not g.is_zero())
        if any(len(g) != len(base) for g in gens):
            raise ValidationError("semigroup generators and base have different dimensions")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "gens", tuple(sorted(set(gens))))

    def directions(self) -> Tuple[RatVec, ...]:
        return self.gens

    def vectors(self) -> Tuple[RatVec, ...]:
        return (self.base,) + self.gens

    def sample(self, count: int) -> List[RatVec]:
        points = set()
        for a in product(range(count), repeat=len(self.gens)):
            if sum(a) < count:
                points.add(self.point(a))
        return sorted(points)

    def point(self, a: Sequence[int]) -> RatVec:
        total = self.base
        for k, g in zip(a, self.gens):
            total = total + g * k
        return total

    def scaled(self, factor: Fraction) -> "SemigroupFamily":
        return SemigroupFamily(self.base * factor, tuple(g * factor for g in self.gens))

    def translated(self, v: Sequence[Any]) -> "SemigroupFamily":
        return SemigroupFamily(self.base + v, self.gens)


@dataclass(frozen=True)
class PTailFamily:
    """{base + m*drift + (1 - p^-k)*dir : m in N, k >= 1}; m is fixed to 0 without a drift"""
    base: RatVec
    dir: RatVec
    p: int
    drift: Optional[RatVec] = None
    kind = FamilyKind.PTAIL

    def __post_init__(self) -> None:
        object.__setattr__(self, "base", _vec(self.base))
        object.__setattr__(self, "dir", _vec(self.dir))
        if self.drift is not None:
            drift = _vec(self.drift)
            object.__setattr__(self, "drift", None if drift.is_zero() else drift)
        if self.dir.is_zero():
            raise ValidationError("p-adic tail direction must be nonzero")
        if not isinstance(self.p, int) or not sympy.isprime(self.p):
            raise ValidationError(f"p must be prime, got {self.p!r}")
        dims = {len(v) for v in self.vectors()}
        if len(dims) != 1:
            raise ValidationError("p-adic tail vectors have different dimensions")

    def directions(self) -> Tuple[RatVec, ...]:
        return (self.drift,) if self.drift is not None else ()

    def vectors(self) -> Tuple[RatVec, ...]:
        vs = (self.base, self.dir)
        return vs + ((self.drift,) if self.drift is not None else ())

    @property
    def limit(self) -> RatVec:
        return self.base + self.dir

    def point(self, k: int, m: int = 0) -> RatVec:
        shift = self.base + self.dir * (1 - Fraction(1, self.p ** k))
        if m and self.drift is not None:
            shift = shift + self.drift * m
        return shift

    def sample(self, count: int) -> List[RatVec]:
        drifts = range(count) if self.drift is not None else range(1)
        return sorted({self.point(k, m) for m in drifts for k in range(1, count + 1)})

    def scaled(self, factor: Fraction) -> "PTailFamily":
        drift = self.drift * factor if self.drift is not None else None
        return PTailFamily(self.base * factor, self.dir * factor, self.p, drift)

    def translated(self, v: Sequence[Any]) -> "PTailFamily":
        return PTailFamily(self.base + v, self.dir, self.p, self.drift)


Family = Union[RayFamily, SemigroupFamily, PTailFamily]


def _denominator(vectors: Iterable[RatVec]) -> int:
    return reduce(lcm, (v.denominator for v in vectors), 1)


@dataclass(frozen=True)
class SupportSpec:
    """Union of finitely many points and infinite families in Q^n, all inside (1/lattice_scale)Z^n"""
    n: int
    points: Tuple[RatVec, ...] = ()
    rays: Tuple[RayFamily, ...] = ()
    semigroups: Tuple[SemigroupFamily, ...] = ()
    ptails: Tuple[PTailFamily, ...] = ()
    lattice_scale: int = 1

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise ValidationError(f"dimension must be a positive integer, got {self.n!r}")
        if not isinstance(self.lattice_scale, int) or self.lattice_scale < 1:
            raise ValidationError(f"lattice scale must be a positive integer, got {self.lattice_scale!r}")
        object.__setattr__(self, "points", tuple(sorted({_vec(x) for x in self.points})))
        object.__setattr__(self, "rays", tuple(self.rays))
        object.__setattr__(self, "semigroups", tuple(self.semigroups))
        object.__setattr__(self, "ptails", tuple(self.ptails))
        for v in self.all_vectors():
            if len(v) != self.n:
                raise ValidationError(f"vector {v!r} does not live in Q^{self.n}")
            if self.lattice_scale % v.denominator:
                raise ValidationError(f"{v!r} is not in (1/{self.lattice_scale})Z^{self.n}")

    def all_vectors(self) -> List[RatVec]:
        vs: List[RatVec] = list(self.points)
        for fam in self.families():
            vs.extend(fam.vectors())
        return vs

    def families(self) -> List[Family]:
        return [*self.rays, *self.semigroups, *self.ptails]

    def infinite_families(self) -> List[Family]:
        return [f for f in self.families() if not (isinstance(f, SemigroupFamily) and not f.gens)]

    def is_empty(self) -> bool:
        return not self.points and not self.families()

    def is_finite(self) -> bool:
        return not self.infinite_families()

    def directions(self, with_tail_dirs: bool = False) -> List[RatVec]:
        found: List[RatVec] = []
        for fam in self.families():
            found.extend(fam.directions())
            if with_tail_dirs and isinstance(fam, PTailFamily):
                found.append(fam.dir)
        return found

    def sample_points(self, count: int = 4) -> List[RatVec]:
        pts: Set[RatVec] = set(self.points)
        for fam in self.families():
            pts.update(fam.sample(count))
        return sorted(pts)

    def scaled(self, factor: Any) -> "SupportSpec":
        factor = Fraction(factor)
        if factor <= 0:
            raise ValidationError("scale factor must be positive")
        rays = tuple(r.scaled(factor) for r in self.rays)
        sgs = tuple(s.scaled(factor) for s in self.semigroups)
        tails = tuple(t.scaled(factor) for t in self.ptails)
        points = tuple(x * factor for x in self.points)
        vectors = list(points) + [v for fam in (*rays, *sgs, *tails) for v in fam.vectors()]
        return SupportSpec(self.n, points, rays, sgs, tails, _denominator(vectors))

    def translated(self, v: Sequence[Any]) -> "SupportSpec":
        v = _vec(v)
        return SupportSpec(
            self.n,
            tuple(x + v for x in self.points),
            tuple(r.translated(v) for r in self.rays),
            tuple(s.translated(v) for s in self.semigroups),
            tuple(t.translated(v) for t in self.ptails),
            lcm(self.lattice_scale, v.denominator),
        )

    def union(self, other: "SupportSpec") -> "SupportSpec":
        if other.n != self.n:
            raise ValidationError(f"cannot join supports in Q^{self.n} and Q^{other.n}")
        return SupportSpec(
            self.n,
            self.points + other.points,
            self.rays + other.rays,
            self.semigroups + other.semigroups,
            self.ptails + other.ptails,
            lcm(self.lattice_scale, other.lattice_scale),
        )

    def with_points(self, points: Iterable[Sequence[Any]]) -> "SupportSpec":
        extra = tuple(_vec(x) for x in points)
        return SupportSpec(
            self.n,
            self.points + extra,
            self.rays,
            self.semigroups,
            self.ptails,
            lcm(self.lattice_scale, _denominator(extra)),
        )

    def with_families(
        self,
        rays: Sequence[RayFamily] = (),
        semigroups: Sequence[SemigroupFamily] = (),
        ptails: Sequence[PTailFamily] = (),
    ) -> "SupportSpec":
        families = (*rays, *semigroups, *ptails)
        scale = _denominator(v for f in families for v in f.vectors())
        extra = SupportSpec(self.n, (), tuple(rays), tuple(semigroups), tuple(ptails), scale)
        return self.union(extra)


def _direction_cone(s: SupportSpec, with_tail_dirs: bool) -> Cone:
    orthant = Cone.orthant(s.n)
    dirs = s.directions(with_tail_dirs)
    if not dirs:
        return orthant
    return intersect(orthant, dual(Cone.from_generators(dirs, s.n)))


def tau(s: SupportSpec) -> Cone:
    """Nonnegative directions in which every family is bounded below.

    Args:
        s: the support. An empty support gives the whole orthant.

    Returns:
        The cone of those directions, always inside the first orthant.
    """
    return _direction_cone(s, with_tail_dirs=False)


def tau_tilde(s: SupportSpec) -> Cone:
    """tau further cut down so that every order positive on its dual well-orders the support"""
    return _direction_cone(s, with_tail_dirs=True)


@dataclass(frozen=True)
class LinearCondition:
    """normal . w > 0 when strict, normal . w >= 0 otherwise"""
    normal: RatVec
    strict: bool

    def holds(self, w: Sequence[Any]) -> bool:
        s = sign(dot(self.normal, w))
        return s > 0 if self.strict else s >= 0


Conditions = Tuple[LinearCondition, ...]


def tau_prime(s: SupportSpec) -> Tuple[Conditions, Conditions]:
    """Condition lists for the level-finite region (a conjunction, w != 0 implied) and the
    unbounded-below region (a disjunction of strict conditions)"""
    n = s.n
    if s.ptails:
        # accumulation below a finite level in every direction
        tau0: Conditions = (LinearCondition(RatVec.zero(n), True),)
    else:
        merged: Dict[RatVec, bool] = {RatVec.unit(n, i): False for i in range(n)}
        for d in s.directions():
            merged[RatVec(primitive(d))] = True
        tau0 = tuple(LinearCondition(v, strict) for v, strict in sorted(merged.items()))
    unbounded = {RatVec(primitive(-d)) for d in s.directions()}
    tau1 = tuple(LinearCondition(v, True) for v in sorted(unbounded))
    return tau0, tau1


def _weak_cone(conditions: Conditions, n: int) -> Cone:
    return Cone.from_inequalities([c.normal for c in conditions], [], n)


def region_is_empty(conditions: Conditions, n: int) -> bool:
    """Whether no nonzero w satisfies the whole conjunction"""
    closed = _weak_cone(conditions, n)
    gens = closed.generators
    if not gens:
        return True
    return any(c.strict and not any(sign(dot(c.normal, g)) > 0 for g in gens) for c in conditions)


def closure_of_region(conditions: Conditions, n: int) -> Optional[Cone]:
    """Closure of a nonempty conjunction region (with the origin); None when the region is empty"""
    if region_is_empty(conditions, n):
        return None
    return _weak_cone(conditions, n)


def meets_unbounded_region(c: Cone, tau1: Conditions) -> bool:
    """Whether some point of the cone satisfies one of the strict conditions"""
    return any(sign(dot(cond.normal, g)) > 0 for cond in tau1 for g in c.generators)


@dataclass(frozen=True)
class TauResult:
    tau: Cone
    tau_dual: Cone
    tau0_conditions: Conditions
    tau1_conditions: Conditions
    tau_tilde: Cone

    @property
    def tau0_empty(self) -> bool:
        return region_is_empty(self.tau0_conditions, self.tau.n)


def tau_result(s: SupportSpec) -> TauResult:
    """tau, its dual, the two condition lists of tau' and tau~ in one record.

    Args:
        s: the support.

    Returns:
        Everything the ``tau`` subcommand reports.
    """
    t = tau(s)
    tau0, tau1 = tau_prime(s)
    return TauResult(t, dual(t), tau0, tau1, tau_tilde(s))


@dataclass(frozen=True)
class Threshold:
    """sup of the levels below which only finitely many support points lie"""
    t: Fraction
    attained: bool
    level_infinite: bool


def _family_threshold(fam: Family, u: RatVec) -> Optional[Threshold]:
    """Per-family threshold; None when every level has finitely many points below it"""
    if isinstance(fam, RayFamily):
        if sign(dot(u, fam.step)) == 0:
            return Threshold(Fraction(dot(u, fam.base)), True, True)
        return None
    if isinstance(fam, SemigroupFamily):
        if any(sign(dot(u, g)) == 0 for g in fam.gens):
            return Threshold(Fraction(dot(u, fam.base)), True, True)
        return None
    slope = sign(dot(u, fam.dir))
    if slope == 0:
        return Threshold(Fraction(dot(u, fam.base)), True, True)
    limit = Fraction(dot(u, fam.limit))
    # increasing towards the limit: infinitely many points below it
    return Threshold(limit, slope < 0, False)


def t_sigma(s: SupportSpec, normal: Sequence[Any]) -> Threshold:
    """Threshold of the support along a direction of tau.

    Args:
        s: the support.
        normal: nonzero vector of tau, usually the inner normal of a facet of
            tau^dual.

    Returns:
        The threshold level, whether some support point sits on it, and
        whether infinitely many do.

    Raises:
        ValidationError: ``normal`` has the wrong dimension.
        PreconditionError: ``normal`` is zero or outside tau, or the support
            is empty.
    """
    u = _vec(normal)
    if len(u) != s.n:
        raise ValidationError(f"normal of dimension {len(u)} for a support in Q^{s.n}")
    if u.is_zero():
        raise PreconditionError("the normal must be nonzero")
    if not tau(s).contains(u):
        raise PreconditionError(f"{u!r} is not in tau: the support is unbounded below in that direction")
    if s.is_empty():
        raise PreconditionError("empty support has no threshold")
    found = [th for th in (_family_threshold(f, u) for f in s.families()) if th is not None]
    if not found:
        lowest = min(Fraction(dot(u, x)) for x in _anchor_points(s))
        return Threshold(lowest, True, False)
    t = min(th.t for th in found)
    at_t = [th for th in found if th.t == t]
    return Threshold(t, all(th.attained for th in at_t), any(th.level_infinite for th in at_t))


def _anchor_points(s: SupportSpec) -> List[RatVec]:
    """Points realizing the minimum of any direction in tau over the support without tails"""
    return list(s.points) + [f.base for f in s.rays] + [f.base for f in s.semigroups]


def _below(value: Fraction, level: Fraction, strict: bool) -> bool:
    return value < level if strict else value <= level


def _tail_slice(fam: PTailFamily, u: RatVec, level: Fraction, strict: bool, m: int) -> Optional[Set[RatVec]]:
    start = Fraction(dot(u, fam.point(0, m)))
    slope = Fraction(dot(u, fam.dir))
    limit = start + slope
    if slope == 0:
        return None if _below(start, level, strict) else set()
    if slope < 0:
        # decreasing towards the limit, never reaching it
        return None if limit < level else set()
    if limit <= level:
        return None
    found = set()
    k = 1
    while True:
        x = fam.point(k, m)
        if not _below(Fraction(dot(u, x)), level, strict):
            return found
        found.add(x)
        k += 1


def _finite_part(fam: Family, u: RatVec, level: Fraction, strict: bool) -> Optional[Set[RatVec]]:
    """Points of the family below the level, or None when there are infinitely many"""
    if isinstance(fam, RayFamily):
        base = Fraction(dot(u, fam.base))
        slope = Fraction(dot(u, fam.step))
        if slope < 0:
            return None
        if slope == 0:
            return None if _below(base, level, strict) else set()
        if not _below(base, level, strict):
            return set()
        count = ceil((level - base) / slope) if strict else floor((level - base) / slope) + 1
        return {fam.base + fam.step * k for k in range(count)}
    if isinstance(fam, SemigroupFamily):
        base = Fraction(dot(u, fam.base))
        values = [Fraction(dot(u, g)) for g in fam.gens]
        if any(v < 0 for v in values):
            return None
        if not _below(base, level, strict):
            return set()
        if any(v == 0 for v in values):
            return None
        bounds = [floor((level - base) / v) for v in values]
        points = set()
        for a in product(*(range(b + 1) for b in bounds)):
            x = fam.point(a)
            if _below(Fraction(dot(u, x)), level, strict):
                points.add(x)
        return points
    if fam.drift is None:
        return _tail_slice(fam, u, level, strict, 0)
    step = Fraction(dot(u, fam.drift))
    first = _tail_slice(fam, u, level, strict, 0)
    if first is None:
        return None
    if step < 0 or (step == 0 and first):
        return None
    if step == 0:
        return set()
    found = set(first)
    m = 1
    while True:
        part = _tail_slice(fam, u, level, strict, m)
        if part is None:
            return None
        if not part:
            return found
        found |= part
        m += 1


def halfspace_count(
    s: SupportSpec, normal: Sequence[Any], level: Any, strict: bool = True
) -> Optional[int]:
    """Number of support points x with normal . x below the level; None means infinitely many.
    The normal may lie outside the first orthant."""
    u = _vec(normal)
    if len(u) != s.n:
        raise ValidationError(f"normal of dimension {len(u)} for a support in Q^{s.n}")
    level = Fraction(level)
    points = {x for x in s.points if _below(Fraction(dot(u, x)), level, strict)}
    for fam in s.families():
        part = _finite_part(fam, u, level, strict)
        if part is None:
            return None
        points |= part
    return len(points)


def common_apex(lines: Sequence[Tuple[Sequence[Any], Sequence[Any]]]) -> Optional[RatVec]:
    """The single point shared by affine lines point + R*direction, or None"""
    if not lines:
        return None
    n = len(lines[0][0])
    rows: List[Tuple[int, ...]] = []
    rhs: List[Fraction] = []
    for point, direction in lines:
        point = _vec(point)
        for r in nullspace([_vec(direction)], n):
            rows.append(r)
            rhs.append(Fraction(dot(r, point)))
    x = _solve(rows, rhs, n)
    if x is None:
        return None
    if any(Fraction(dot(r, x)) != b for r, b in zip(rows, rhs)):
        return None
    return x


def _lattice_point_on(u: Sequence[int], level: int) -> RatVec:
    """Integer x with u . x = level for a primitive integer vector u"""
    coeffs = [0] * len(u)
    g = 0
    for i, ui in enumerate(u):
        a, b, g2 = igcdex(g, int(ui))
        coeffs = [int(a) * c for c in coeffs]
        coeffs[i] = int(b)
        g = int(g2)
    if g != 1:
        raise ValidationError(f"{tuple(u)} is not primitive")
    return RatVec(c * level for c in coeffs)


@dataclass(frozen=True)
class FaceWitness:
    """An infinite family lying on apex + face, or none"""
    kind: FaceKind
    face: Cone
    apex: Optional[RatVec] = None
    family: Optional[Family] = None


@dataclass(frozen=True)
class NormalizationResult:
    C: Tuple[RatVec, ...]
    removed_points: Tuple[RatVec, ...]
    orthant_adjust: SupportSpec
    residual: SupportSpec
    face_witnesses: Tuple[FaceWitness, ...]
    sigma: Cone
    levels: Tuple[Tuple[RatVec, Fraction], ...] = field(default=())

    def in_translates(self, x: Sequence[Any]) -> bool:
        return any(self.sigma.contains(RatVec(x) - c) for c in self.C)

    def residual_contained(self) -> bool:
        """Every residual point and family base in C + sigma, every direction in sigma"""
        spec = self.residual
        bases = list(spec.points) + [f.base for f in spec.families()]
        return all(self.in_translates(b) for b in bases) and all(
            self.sigma.contains(d) for d in spec.directions()
        )


def _apex_key(weight: RatVec) -> Callable[[RatVec], Tuple[Any, ...]]:
    return lambda g: (dot(weight, g), tuple(g))


def _on_face(fam: Family, face: Cone, C: Sequence[RatVec]) -> Optional[RatVec]:
    dirs = [d for d in fam.directions() if face.contains(d)]
    if not dirs:
        return None
    for c in C:
        if face.contains(fam.base - c):
            return c
    return None


def _witnesses(
    sigma: Cone, families: Sequence[Family], C: Sequence[RatVec], key: Any
) -> List[FaceWitness]:
    kinds = [(FaceKind.EDGE, 1)]
    if sigma.n > 1:
        kinds.append((FaceKind.FACET, sigma.n - 1))
    found = []
    seen: Set[Cone] = set()
    ordered_C = sorted(C, key=key)
    for kind, d in kinds:
        for face in faces(sigma, d):
            # in the plane every facet is an edge: one witness per face
            if face in seen:
                continue
            seen.add(face)
            witness = FaceWitness(kind, face)
            for fam in families:
                apex = _on_face(fam, face, ordered_C)
                if apex is not None:
                    witness = FaceWitness(kind, face, apex, fam)
                    break
            found.append(witness)
    return found


def _nonneg(x: RatVec) -> bool:
    return all(v >= 0 for v in x)


def normalize(s: SupportSpec) -> NormalizationResult:
    """Split a support into finitely many apexes C, the points dropped below the
    thresholds, an orthant adjustment and a residual lying in C + tau^dual.

    The support is first scaled onto the lattice when its exponents have a
    common denominator above one; every returned vector is in the scaled
    coordinates, and ``levels`` records the integer threshold used on each ray
    of tau.

    Args:
        s: support without p-adic tail families.

    Returns:
        The normalization, with one face witness per face of tau^dual that a
        family or the adjustment runs along.

    Raises:
        NotInClassError: ``s`` has p-adic tail families.
        PreconditionError: tau^dual is not full dimensional and strongly
            convex, or the support is empty.
    """
    if s.ptails:
        raise NotInClassError("p-adic tail families admit no normalization")
    k = s.lattice_scale
    work = s.scaled(k) if k > 1 else s
    T = tau(work)
    sigma = dual(T)
    if not sigma.strongly_convex or not sigma.is_full_dimensional():
        raise PreconditionError("tau^dual is not a full-dimensional strongly convex cone")
    if work.is_empty():
        raise PreconditionError("empty support")

    levels: List[Tuple[RatVec, int]] = []
    for ray in T.rays:
        th = t_sigma(work, ray)
        levels.append((RatVec(ray), ceil(th.t)))

    def in_P(x: RatVec) -> bool:
        return all(dot(u, x) >= c for u, c in levels)

    shifts = [(_lattice_point_on(u.as_ints(), c), Cone.halfspace(u)) for u, c in levels]
    C = dickson_decompose(shifts)

    removed: Set[RatVec] = {x for x in work.points if not in_P(x)}
    kept_points = [x for x in work.points if in_P(x)]
    rays: List[RayFamily] = []
    for fam in work.rays:
        k0 = 0
        for u, c in levels:
            slope = dot(u, fam.step)
            gap = c - dot(u, fam.base)
            if slope > 0 and gap > 0:
                k0 = max(k0, ceil(gap / slope))
        removed.update(fam.base + fam.step * j for j in range(k0))
        rays.append(RayFamily(fam.base + fam.step * k0, fam.step))
    semigroups: List[SemigroupFamily] = []
    for fam in work.semigroups:
        bounds = []
        for g in fam.gens:
            b = 0
            for u, c in levels:
                slope = dot(u, g)
                gap = c - dot(u, fam.base)
                if slope > 0 and gap > 0:
                    b = max(b, ceil(gap / slope))
            bounds.append(b)
        inside: Set[Tuple[int, ...]] = set()
        for a in product(*(range(b + 1) for b in bounds)):
            x = fam.point(a)
            if in_P(x):
                inside.add(a)
            else:
                removed.add(x)
        for a in sorted(inside):
            lower = (a[:i] + (a[i] - 1,) + a[i + 1:] for i in range(len(a)) if a[i])
            if not any(b in inside for b in lower):
                semigroups.append(SemigroupFamily(fam.point(a), fam.gens))
    residual = SupportSpec(work.n, tuple(kept_points), tuple(rays), tuple(semigroups))

    key = _apex_key(T.interior_point())
    orthant_C = sorted((c for c in C if _nonneg(c)), key=key)
    adjust: List[RayFamily] = []
    for w in _witnesses(sigma, residual.families(), C, key):
        if w.family is not None:
            continue
        if w.kind == FaceKind.EDGE:
            r = RatVec(w.face.rays[0])
            if not _nonneg(r):
                continue
            if not orthant_C:
                logger.warning("no apex of C in the orthant for edge %r", r)
                continue
            adjust.append(RayFamily(orthant_C[0], r))
            continue
        for u, c in levels:
            if not all(dot(u, g) == 0 for g in w.face.generators):
                continue
            zeros = [i for i, x in enumerate(u) if x == 0]
            apexes = [g for g in orthant_C if dot(u, g) == c]
            if zeros and apexes:
                adjust.append(RayFamily(apexes[0], RatVec.unit(work.n, zeros[0])))
            else:
                logger.warning("facet with normal %r has no witness and no orthant adjustment", u)
            break
    adjust = sorted(set(adjust), key=lambda f: (tuple(f.base), tuple(f.step)))
    adjust_spec = SupportSpec(work.n, (), tuple(adjust))
    witnesses = _witnesses(sigma, residual.families() + list(adjust), C, key)

    if k > 1:
        back = Fraction(1, k)
        C = [c * back for c in C]
        removed = {x * back for x in removed}
        residual = residual.scaled(back)
        adjust_spec = adjust_spec.scaled(back)
        witnesses = [
            FaceWitness(
                w.kind,
                w.face,
                w.apex * back if w.apex is not None else None,
                w.family.scaled(back) if w.family is not None else None,
            )
            for w in witnesses
        ]
    logger.info("normalized support: |C|=%d, %d points removed", len(C), len(removed))
    return NormalizationResult(
        tuple(sorted(C)),
        tuple(sorted(removed)),
        adjust_spec,
        residual,
        tuple(witnesses),
        sigma,
        tuple((u, Fraction(c, k)) for u, c in levels),
    )


@dataclass(frozen=True)
class DiagnosticReport:
    lower_slopes: Tuple[Optional[Fraction], ...]
    upper_slopes: Tuple[Optional[Fraction], ...]
    verdict: Verdict
    stabilized_at: Optional[int] = None


def extremal_slopes(points: Iterable[Sequence[Any]]) -> Tuple[Optional[Fraction], Optional[Fraction]]:
    """Slopes of the rays from the lowest leftmost point to the lowest and the highest
    points of the rightmost column"""
    pts = sorted({(Fraction(x), Fraction(y)) for x, y in points})
    if not pts:
        return None, None
    x0, y0 = pts[0]
    far = pts[-1][0]
    if far == x0:
        return None, None
    column = [y for x, y in pts if x == far]
    return (min(column) - y0) / (far - x0), (max(column) - y0) / (far - x0)


def _strictly_monotone(values: Sequence[Optional[Fraction]]) -> bool:
    if any(v is None for v in values) or len(values) < 2:
        return False
    pairs = list(zip(values, values[1:]))
    return all(a < b for a, b in pairs) or all(a > b for a, b in pairs)  # type: ignore[operator]


def non_polyhedral_diagnostic(
    truncations: Sequence[Iterable[Sequence[Any]]], min_levels: int = 5
) -> DiagnosticReport:
    """Watch the extremal rays of growing truncations of a planar support.

    A strictly monotone slope sequence only counts as evidence once there are
    at least ``min_levels`` truncations; with fewer the verdict is
    ``STABILIZED`` or ``INCONCLUSIVE``, never ``NON_STABILIZING``. Three
    levels of a support that drifts forever are therefore ``INCONCLUSIVE``
    under the default, which matches the ``--levels`` default of the CLI.

    Args:
        truncations: point sets of increasing truncation level, each planar.
        min_levels: how many levels a monotone drift must span before it is
            reported as non-stabilizing.

    Returns:
        The lower and upper ray slopes per level with the verdict, plus the
        first level from which both slopes stay put when they stabilize.

    Raises:
        ValidationError: fewer than two truncations, or a non-planar point.
    """
    if len(truncations) < 2:
        raise ValidationError("the diagnostic needs at least two truncations")
    lowers: List[Optional[Fraction]] = []
    uppers: List[Optional[Fraction]] = []
    for pts in truncations:
        pts = list(pts)
        if any(len(p) != 2 for p in pts):
            raise ValidationError("the diagnostic works on planar supports only")
        lo, hi = extremal_slopes(pts)
        lowers.append(lo)
        uppers.append(hi)
    if len(truncations) >= min_levels and (_strictly_monotone(lowers) or _strictly_monotone(uppers)):
        return DiagnosticReport(tuple(lowers), tuple(uppers), Verdict.NON_STABILIZING)
    stable_from = None
    for i in range(len(lowers) - 1, 0, -1):
        if lowers[i] == lowers[i - 1] and uppers[i] == uppers[i - 1]:
            stable_from = i
        else:
            break
    if stable_from is not None:
        # levels are counted from 1
        return DiagnosticReport(tuple(lowers), tuple(uppers), Verdict.STABILIZED, stable_from + 1)
    return DiagnosticReport(tuple(lowers), tuple(uppers), Verdict.INCONCLUSIVE)
