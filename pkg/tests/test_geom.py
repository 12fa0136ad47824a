from fractions import Fraction
from functools import lru_cache
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from algsupport import Cone, PreconditionError, ValidationError, dual, faces, hilbert_basis, vec
from algsupport.geom import (
    cone_sum,
    in_interior_of_union,
    intersect,
    intersect_all,
    nullspace,
    polyhedron_vertices,
    shift_into_intersection,
    shift_into_intersection_many,
    span_basis,
    union_covers_orthant,
)
from algsupport.numbers import dot

from .conftest import cones, nonzero_vectors, shift_systems

SMALL_SHIFT_SYSTEMS = st.sampled_from([(2, 3, 2), (3, 2, 1)]).flatmap(lambda args: shift_systems(*args))


def test_orthant_is_self_dual(plane_orthant):
    assert plane_orthant.rays == ((0, 1), (1, 0))
    assert dual(plane_orthant) == plane_orthant
    assert plane_orthant.strongly_convex
    assert plane_orthant.dim == 2


def test_canonical_representation():
    c = Cone.from_generators([(2, 0), (1, 2), (1, 1)])
    assert c.rays == ((1, 0), (1, 2))
    assert c.inequalities == ((0, 1), (2, -1))
    assert Cone.from_inequalities(c.inequalities) == c


def test_dual_of_a_wedge():
    d = dual(Cone.from_generators([(1, 0), (1, 2)]))
    assert d.rays == ((0, 1), (2, -1))


def test_lineality_and_lower_dimension():
    half = Cone.halfspace((0, 1))
    assert half.lineality == ((1, 0),)
    assert not half.strongly_convex
    line = Cone.from_generators([(1, 1)])
    assert line.dim == 1
    assert line.equations == ((1, -1),)
    assert not line.is_full_dimensional()
    assert Cone.full(3).dim == 3
    assert Cone.zero(2).generators == ()


def test_contains():
    c = Cone.from_generators([(1, 0), (1, 2)])
    assert c.contains((3, 1))
    assert c.contains(c.interior_point())
    assert not c.contains((0, 1))
    with pytest.raises(ValidationError):
        c.contains((1, 1, 1))


def test_from_generators_needs_a_dimension():
    with pytest.raises(ValidationError):
        Cone.from_generators([])
    with pytest.raises(ValidationError):
        Cone.from_generators([(1, 0), (1, 0, 0)])


@given(cones())
def test_generators_pair_nonnegatively_with_the_dual(c):
    d = dual(c)
    for g in c.generators:
        assert c.contains(g)
        for h in d.generators:
            assert dot(g, h) >= 0


@given(cones())
def test_dual_is_an_involution(c):
    assert dual(dual(c)) == c
    assert Cone.from_inequalities(c.inequalities, c.equations, c.n) == c


@given(cones(max_gens=3), cones(max_gens=3))
def test_dual_of_intersection_is_sum_of_duals(a, b):
    lhs = dual(intersect(a, b))
    rhs = cone_sum(dual(a), dual(b))
    assert lhs.contains_cone(rhs)
    assert rhs.contains_cone(lhs)


def test_faces_of_the_octant():
    octant = Cone.orthant(3)
    rays = faces(octant, 1)
    assert [f.rays for f in rays] == [((0, 0, 1),), ((0, 1, 0),), ((1, 0, 0),)]
    assert len(faces(octant, 2)) == 3
    assert faces(octant, 0)[0].dim == 0
    assert faces(octant, 3) == [octant]
    with pytest.raises(PreconditionError):
        faces(octant, 4)


def test_hilbert_basis():
    c = Cone.from_generators([(1, 0), (1, 2)])
    assert hilbert_basis(c) == [vec(1, 0), vec(1, 1), vec(1, 2)]
    assert hilbert_basis(Cone.orthant(2)) == [vec(0, 1), vec(1, 0)]
    with pytest.raises(PreconditionError):
        hilbert_basis(Cone.halfspace((1, 0)))


def test_nullspace_and_span_basis():
    assert nullspace([(1, 1)], 2) == ((1, -1),)
    assert nullspace([], 2) == ((0, 1), (1, 0))
    assert span_basis([(2, 2), (1, 1), (0, 0)], 2) == ((1, 1),)


def test_polyhedron_vertices(plane_orthant):
    shifts = [(vec(0, 0), plane_orthant), (vec(1, -1), plane_orthant)]
    assert polyhedron_vertices(shifts) == [vec(1, 0)]


def test_shift_into_intersection(plane_orthant):
    wedge = Cone.from_generators([(1, 0), (1, 2)])
    gamma = shift_into_intersection((0, 0), plane_orthant, (1, -1), wedge)
    sigma = intersect(plane_orthant, wedge)
    assert gamma.is_integral()
    for v in polyhedron_vertices([(vec(0, 0), plane_orthant), (vec(1, -1), wedge)]):
        assert sigma.contains(v - gamma)


def test_shift_needs_a_full_dimensional_intersection(plane_orthant):
    line = Cone.from_generators([(1, 0), (-1, 0)])
    with pytest.raises(PreconditionError):
        shift_into_intersection_many([(vec(0, 0), plane_orthant), (vec(0, 0), line)])


def test_in_interior_of_union(plane_orthant):
    assert in_interior_of_union((1, 1), [plane_orthant])
    assert not in_interior_of_union((1, 0), [plane_orthant])
    lower = Cone.from_generators([(1, 0), (0, -1)])
    assert in_interior_of_union((1, 0), [plane_orthant, lower])
    assert not in_interior_of_union((-1, 0), [plane_orthant, lower])
    with pytest.raises(ValidationError):
        in_interior_of_union((0, 0), [plane_orthant])


def test_union_covers_orthant(plane_orthant):
    assert union_covers_orthant([Cone.halfspace((1, 0))])
    assert not union_covers_orthant([Cone.from_generators([(1, 0), (1, 1)])])
    halves = [Cone.from_generators([(1, 0), (1, 1)]), Cone.from_generators([(1, 1), (0, 1)])]
    assert union_covers_orthant(halves)
    assert not union_covers_orthant([])


@given(st.sampled_from([2, 3]).flatmap(lambda n: cones(n, max_gens=3)).filter(lambda c: c.strongly_convex))
def test_hilbert_basis_generates_and_is_minimal(c):
    basis = hilbert_basis(c)
    for h in basis:
        assert h.is_integral() and c.contains(h)
        assert not any(other != h and c.contains(h - other) for other in basis)

    @lru_cache(maxsize=None)
    def decomposes(x):
        if not any(x):
            return True
        return any(c.contains(x - h) and decomposes(x - h) for h in basis)

    for x in product(range(-2, 3), repeat=c.n):
        if c.contains(x):
            assert decomposes(vec(*x)), x


@given(st.lists(cones(max_gens=3), min_size=1, max_size=3), nonzero_vectors(2))
def test_in_interior_of_union_survives_small_perturbations(duals, w):
    inside = in_interior_of_union(w, duals)
    w = vec(*w)
    if any(c.is_full_dimensional() and all(dot(f, w) > 0 for f in c.inequalities) for c in duals):
        assert inside
    if not any(c.contains(w) for c in duals):
        assert not inside
    if inside:
        eps = Fraction(1, 1000)
        for d in product((-1, 0, 1), repeat=2):
            assert any(c.contains(w + vec(*d) * eps) for c in duals), d


@settings(max_examples=100)
@given(SMALL_SHIFT_SYSTEMS)
def test_shift_moves_the_whole_intersection_into_sigma(shifts):
    gamma = shift_into_intersection_many(shifts)
    sigma = intersect_all([c for _, c in shifts])
    assert gamma.is_integral()
    for v in polyhedron_vertices(shifts):
        assert sigma.contains(v - gamma)
    for x in product(range(-3, 4), repeat=sigma.n):
        if all(c.contains(vec(*x) - g) for g, c in shifts):
            assert sigma.contains(vec(*x) - gamma), x
