from fractions import Fraction
from typing import Optional

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from algsupport import Cone, PTailFamily, RatVec, RayFamily, SemigroupFamily, SupportSpec, WeightOrder
from algsupport.binom_ideal import Binomial
from algsupport.charp import FiniteField, from_terms

settings.register_profile(
    "ci",
    derandomize=True,
    max_examples=200,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("dev", max_examples=10, deadline=None)
settings.load_profile("ci")

small_ints = st.integers(min_value=-3, max_value=3)
rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


def int_vectors(n: int = 2):
    return st.tuples(*([small_ints] * n))


def nonzero_vectors(n: int = 2):
    return int_vectors(n).filter(any)


def cones(n: int = 2, max_gens: int = 4):
    """Cones spanned by a few small integer generators"""
    return st.lists(nonzero_vectors(n), min_size=1, max_size=max_gens).map(
        lambda gens: Cone.from_generators(gens, n)
    )


def positive_weights(n: int = 2):
    return st.tuples(*([st.integers(0, 5)] * n)).filter(any)


def shift_systems(n: int = 2, max_shifts: int = 3, top: int = 2):
    """Lattice translates of cones that all contain the first orthant, so they always meet
    in a full dimensional cone"""
    extra = st.tuples(*([st.integers(-1, top)] * n)).filter(any)
    units = [RatVec.unit(n, i) for i in range(n)]
    cone = st.lists(extra, max_size=2 if n == 2 else 1).map(
        lambda gens: Cone.from_generators(units + [RatVec(g) for g in gens], n)
    )
    gamma = st.tuples(*([st.integers(-2, 2)] * n)).map(RatVec)
    return st.lists(st.tuples(gamma, cone), min_size=1, max_size=max_shifts)


def exponents(m: int, top: int = 2):
    return st.tuples(*([st.integers(0, top)] * m))


def binomial_systems(m: int = 3):
    """Pure-difference binomials and monomials in m variables"""
    binomials = st.lists(st.tuples(exponents(m), exponents(m)), max_size=3).map(
        lambda pairs: [b for b in (Binomial.make(a, c) for a, c in pairs) if b is not None]
    )
    monomials = st.lists(exponents(m).filter(any), max_size=2)
    return st.tuples(binomials, monomials)


def support_specs(n: int = 2, with_tails: bool = False):
    """Small integral supports: points, rays, semigroups and optionally p-adic tails"""
    vectors = int_vectors(n).map(RatVec)
    steps = nonzero_vectors(n).map(RatVec)
    rays = st.lists(st.builds(RayFamily, vectors, steps), max_size=2)
    semigroups = st.lists(
        st.builds(SemigroupFamily, vectors, st.lists(steps, max_size=2).map(tuple)), max_size=1
    )
    tails = st.lists(
        st.builds(PTailFamily, vectors, steps, st.sampled_from([2, 3]), st.none() | steps),
        max_size=1 if with_tails else 0,
    )
    return st.builds(
        lambda pts, r, s, t: SupportSpec(n, tuple(pts), tuple(r), tuple(s), tuple(t)),
        st.lists(vectors, max_size=2),
        rays,
        semigroups,
        tails,
    )


def laurent_polys(n: int = 2, field: Optional[FiniteField] = None):
    """Nonzero Laurent polynomials with small rational exponents"""
    coeffs = st.integers(1, 6) if field is not None else st.integers(-4, 4).filter(bool)
    exps = st.tuples(*([rationals] * n))
    return (
        st.lists(st.tuples(exps, coeffs), min_size=1, max_size=4)
        .map(lambda terms: from_terms(n, terms, field))
        .filter(bool)
    )


@pytest.fixture
def plane_orthant():
    return Cone.orthant(2)


@pytest.fixture
def lex_order():
    return WeightOrder.of((1, 0), (0, 1))


@pytest.fixture
def origin():
    return RatVec.zero(2)


@pytest.fixture(params=[2, 3, 5])
def prime_field(request):
    return FiniteField(request.param, 1)
