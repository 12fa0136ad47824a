from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from algsupport import (
    Cone,
    FaceKind,
    NotInClassError,
    PreconditionError,
    PTailFamily,
    RayFamily,
    SemigroupFamily,
    SupportSpec,
    ValidationError,
    Verdict,
    dual,
    non_polyhedral_diagnostic,
    normalize,
    t_sigma,
    tau,
    tau_prime,
    tau_result,
    tau_tilde,
    vec,
)
from algsupport.fixtures import ex1_truncation, ex4_spec, ex_min_spec, ray_truncation
from algsupport.numbers import dot
from algsupport.support import (
    closure_of_region,
    common_apex,
    extremal_slopes,
    halfspace_count,
    meets_unbounded_region,
    region_is_empty,
)

from .conftest import int_vectors, support_specs

TAIL = SupportSpec(2, ptails=(PTailFamily(vec(0, 0), vec(1, -1), 2),))


def test_family_validation():
    with pytest.raises(ValidationError):
        RayFamily(vec(0, 0), vec(0, 0))
    with pytest.raises(ValidationError):
        RayFamily(vec(0, 0), vec(1, 0, 0))
    with pytest.raises(ValidationError):
        PTailFamily(vec(0, 0), vec(1, 0), 4)
    with pytest.raises(ValidationError):
        PTailFamily(vec(0, 0), vec(0, 0), 2)
    assert PTailFamily(vec(0, 0), vec(1, 0), 3, vec(0, 0)).drift is None
    assert SemigroupFamily(vec(0, 0), (vec(0, 0), vec(1, 0), vec(1, 0))).gens == (vec(1, 0),)


def test_ptail_points():
    fam = ex4_spec().ptails[0]
    assert fam.point(1) == vec(Fraction(3, 2), Fraction(-1, 2))
    assert fam.point(1, 1) == vec(Fraction(7, 2), Fraction(-3, 2))
    assert fam.limit == vec(2, -1)
    assert fam.directions() == (vec(2, -1),)


def test_spec_validation():
    with pytest.raises(ValidationError):
        SupportSpec(2, points=(vec(Fraction(1, 2), 0),))
    with pytest.raises(ValidationError):
        SupportSpec(2, points=(vec(1, 0, 0),))
    with pytest.raises(ValidationError):
        SupportSpec(0)
    assert SupportSpec(2, points=(vec(Fraction(1, 2), 0),), lattice_scale=2).lattice_scale == 2


def test_spec_transformations():
    s = SupportSpec(2, points=(vec(Fraction(1, 2), 0),), lattice_scale=2)
    doubled = s.scaled(2)
    assert doubled.points == (vec(1, 0),)
    assert doubled.lattice_scale == 1
    moved = ex_min_spec().translated((1, 1))
    assert moved.rays[0].base == vec(1, 1)
    joined = ex_min_spec().union(s)
    assert joined.lattice_scale == 2
    assert len(joined.families()) == 1
    assert ex_min_spec().with_points([(0, 5)]).points == (vec(0, 5),)
    with pytest.raises(ValidationError):
        s.union(SupportSpec(3))
    with pytest.raises(ValidationError):
        s.scaled(0)


def test_finiteness():
    assert SupportSpec(2).is_empty()
    assert SupportSpec(2, points=(vec(1, 1),)).is_finite()
    assert SupportSpec(2, semigroups=(SemigroupFamily(vec(1, 1), ()),)).is_finite()
    assert not ex_min_spec().is_finite()


def test_tau_of_the_ray():
    t = tau(ex_min_spec())
    assert t.rays == ((1, 0), (1, 1))
    assert dual(t).rays == ((0, 1), (1, -1))
    assert tau(SupportSpec(2, points=(vec(1, 1),))) == Cone.orthant(2)


def test_tau_is_translation_invariant():
    s = ex_min_spec()
    assert tau(s.translated((5, -2))) == tau(s)
    assert tau(s.scaled(3)) == tau(s)


def test_tau_and_tau_tilde_of_a_tail():
    s = ex4_spec()
    assert tau(s).rays == ((1, 0), (1, 2))
    assert tau_tilde(s).rays == ((1, 0), (1, 1))
    assert tau(TAIL) == Cone.orthant(2)


def test_tau_prime_of_the_ray():
    tau0, tau1 = tau_prime(ex_min_spec())
    assert [(c.normal, c.strict) for c in tau0] == [
        (vec(0, 1), False),
        (vec(1, -1), True),
        (vec(1, 0), False),
    ]
    assert [(c.normal, c.strict) for c in tau1] == [(vec(-1, 1), True)]
    assert not region_is_empty(tau0, 2)
    assert closure_of_region(tau0, 2).rays == ((1, 0), (1, 1))
    assert meets_unbounded_region(Cone.orthant(2), tau1)
    assert not meets_unbounded_region(Cone.from_generators([(1, 0), (1, 1)]), tau1)


def test_tau_prime_with_a_tail_is_empty():
    result = tau_result(ex4_spec())
    assert len(result.tau0_conditions) == 1
    assert result.tau0_empty
    assert closure_of_region(result.tau0_conditions, 2) is None


def test_t_sigma_of_the_ray():
    th = t_sigma(ex_min_spec(), (1, 1))
    assert (th.t, th.attained, th.level_infinite) == (0, True, True)
    th = t_sigma(ex_min_spec(2), (1, 0))
    assert (th.t, th.attained, th.level_infinite) == (2, True, False)


def test_t_sigma_of_a_tail():
    th = t_sigma(TAIL, (1, 0))
    assert (th.t, th.attained, th.level_infinite) == (1, False, False)
    th = t_sigma(TAIL, (0, 1))
    assert (th.t, th.attained) == (-1, True)


def test_t_sigma_preconditions():
    with pytest.raises(PreconditionError):
        t_sigma(ex_min_spec(), (0, 0))
    with pytest.raises(PreconditionError):
        t_sigma(ex_min_spec(), (0, 1))
    with pytest.raises(PreconditionError):
        t_sigma(SupportSpec(2), (1, 1))
    with pytest.raises(ValidationError):
        t_sigma(ex_min_spec(), (1, 1, 1))


@pytest.mark.parametrize(
    "normal,level,strict,expected",
    [
        ((1, 0), 3, True, 3),
        ((1, 0), 3, False, 4),
        ((1, 1), 1, True, None),
        ((1, 1), 0, True, 0),
        ((0, 1), 0, True, None),
    ],
)
def test_halfspace_count_on_the_ray(normal, level, strict, expected):
    assert halfspace_count(ex_min_spec(), normal, level, strict) == expected


def test_halfspace_count_on_a_tail():
    assert halfspace_count(TAIL, (1, 0), 1) is None
    assert halfspace_count(TAIL, (1, 0), Fraction(3, 4)) == 1
    assert halfspace_count(TAIL, (1, 0), Fraction(3, 4), strict=False) == 2


def test_halfspace_count_on_a_semigroup():
    s = SupportSpec(2, semigroups=(SemigroupFamily(vec(0, 0), (vec(1, 0), vec(0, 1))),))
    assert halfspace_count(s, (1, 1), 2) == 3
    assert halfspace_count(s, (1, 0), 1) is None


def test_common_apex():
    assert common_apex([((0, 0), (1, 0)), ((1, 1), (0, 1))]) == vec(1, 0)
    assert common_apex([((0, 0), (1, 0)), ((0, 1), (1, 0))]) is None
    assert common_apex([]) is None


@pytest.mark.parametrize("N", [-2, 1, 3])
def test_normalize_the_ray(N):
    result = normalize(ex_min_spec(N))
    assert result.C == (vec(N, -N),)
    assert result.removed_points == ()
    assert result.residual_contained()


def test_normalize_a_semigroup():
    s = SupportSpec(2, semigroups=(SemigroupFamily(vec(3, 4), (vec(1, 0), vec(0, 1))),))
    result = normalize(s)
    assert result.C == (vec(3, 4),)
    assert result.sigma == Cone.orthant(2)
    assert result.orthant_adjust.is_empty()
    assert all(w.apex == vec(3, 4) for w in result.face_witnesses)
    assert result.residual_contained()


def test_normalize_points_adds_orthant_edges():
    s = SupportSpec(2, points=(vec(1, 2), vec(2, 1)))
    result = normalize(s)
    assert result.C == (vec(1, 1),)
    assert [(f.base, f.step) for f in result.orthant_adjust.rays] == [
        (vec(1, 1), vec(0, 1)),
        (vec(1, 1), vec(1, 0)),
    ]
    assert result.in_translates((5, 1))
    assert not result.in_translates((0, 5))
    assert [w.kind for w in result.face_witnesses] == [FaceKind.EDGE, FaceKind.EDGE]
    assert len({w.face for w in result.face_witnesses}) == 2


def test_one_witness_per_face_in_three_dimensions():
    result = normalize(SupportSpec(3, points=(vec(1, 1, 1),)))
    kinds = [w.kind for w in result.face_witnesses]
    assert kinds.count(FaceKind.EDGE) == 3
    assert kinds.count(FaceKind.FACET) == 3
    assert len({w.face for w in result.face_witnesses}) == 6


def test_normalize_rescales_fractional_supports():
    s = SupportSpec(2, points=(vec(Fraction(1, 2), Fraction(1, 2)),), lattice_scale=2)
    result = normalize(s)
    assert result.C == (vec(Fraction(1, 2), Fraction(1, 2)),)
    assert all(level == Fraction(1, 2) for _, level in result.levels)


def test_normalize_preconditions():
    with pytest.raises(NotInClassError):
        normalize(ex4_spec())
    with pytest.raises(PreconditionError):
        normalize(SupportSpec(2))
    with pytest.raises(PreconditionError):
        normalize(SupportSpec(2, rays=(RayFamily(vec(0, 0), vec(-1, 0)),)))


def test_extremal_slopes():
    assert extremal_slopes([(0, 0), (2, -1), (2, 3)]) == (Fraction(-1, 2), Fraction(3, 2))
    assert extremal_slopes([(1, 0), (1, 5)]) == (None, None)
    assert extremal_slopes([]) == (None, None)


def test_diagnostic_stabilizes_on_a_ray():
    report = non_polyhedral_diagnostic([ray_truncation(N) for N in range(1, 6)])
    assert report.verdict is Verdict.STABILIZED
    assert report.stabilized_at == 2
    assert set(report.lower_slopes) == {1}


def test_diagnostic_flags_drifting_slopes():
    truncations = [[(0, 0)] + [(k, -k * k) for k in range(1, N + 1)] for N in range(1, 6)]
    report = non_polyhedral_diagnostic(truncations)
    assert report.verdict is Verdict.NON_STABILIZING
    assert report.lower_slopes == (-1, -2, -3, -4, -5)
    short = non_polyhedral_diagnostic(truncations[:3])
    assert short.verdict is Verdict.INCONCLUSIVE


def test_three_square_root_truncations_need_a_lower_level_threshold():
    truncations = [ex1_truncation(N) for N in (4, 16, 64)]
    report = non_polyhedral_diagnostic(truncations)
    assert report.verdict is Verdict.INCONCLUSIVE
    assert report.lower_slopes == (Fraction(-3, 2), Fraction(-5, 4), Fraction(-9, 8))
    report = non_polyhedral_diagnostic(truncations, min_levels=3)
    assert report.verdict is Verdict.NON_STABILIZING
    assert report.lower_slopes == (Fraction(-3, 2), Fraction(-5, 4), Fraction(-9, 8))
    assert report.upper_slopes == report.lower_slopes


def test_diagnostic_input_checks():
    with pytest.raises(ValidationError):
        non_polyhedral_diagnostic([[(0, 0)]])
    with pytest.raises(ValidationError):
        non_polyhedral_diagnostic([[(0, 0, 0)], [(1, 1, 1)]])


@settings(max_examples=30)
@given(support_specs(with_tails=True), st.lists(int_vectors(2), min_size=1, max_size=3), int_vectors(2))
def test_points_and_orthant_semigroups_leave_the_cones_alone(spec, points, base):
    before = tau_result(spec)
    orthant = SemigroupFamily(vec(*base), (vec(1, 0), vec(0, 1)))
    for grown in (spec.with_points(points), spec.with_families(semigroups=[orthant])):
        after = tau_result(grown)
        assert after.tau == before.tau
        assert after.tau_tilde == before.tau_tilde


@given(support_specs(with_tails=True))
def test_closure_of_the_finite_region_misses_the_unbounded_region(spec):
    tau0, tau1 = tau_prime(spec)
    closure = closure_of_region(tau0, spec.n)
    if spec.ptails:
        assert closure is None
    if closure is not None:
        assert not meets_unbounded_region(closure, tau1)
        assert not any(c.holds(g) for c in tau1 for g in closure.generators)


@given(support_specs(with_tails=True))
def test_tau_tilde_lies_in_tau(spec):
    assert tau(spec).contains_cone(tau_tilde(spec))
    if not spec.ptails:
        assert tau_tilde(spec) == tau(spec)


def _tilted(sigma, normal):
    """sigma with the facet of the given normal turned inward by one step"""
    w = sigma.interior_point()
    rays = [vec(*r) * 2 + w if dot(normal, r) == 0 else vec(*r) for r in sigma.rays]
    return Cone.from_generators(rays, sigma.n)


@pytest.mark.parametrize(
    "spec",
    [
        SupportSpec(2, semigroups=(SemigroupFamily(vec(3, 4), (vec(1, 0), vec(0, 1))),)),
        SupportSpec(2, semigroups=(SemigroupFamily(vec(0, 0), (vec(1, 0), vec(1, 2))),)),
        SupportSpec(2, points=(vec(1, 2), vec(2, 1))),
        SupportSpec(2, rays=(RayFamily(vec(0, 0), vec(1, 0)), RayFamily(vec(0, 1), vec(0, 1)))),
        SupportSpec(3, semigroups=(SemigroupFamily(vec(0, 0, 0), (vec(1, 0, 0), vec(0, 1, 0), vec(0, 0, 1))),)),
    ],
)
def test_sigma_cannot_shrink_across_any_facet(spec):
    result = normalize(spec)
    assert all(w.family is not None for w in result.face_witnesses)
    dirs = result.residual.directions() + result.orthant_adjust.directions()
    assert all(result.sigma.contains(d) for d in dirs)
    for normal in result.sigma.inequalities:
        smaller = _tilted(result.sigma, normal)
        assert not smaller.contains_cone(result.sigma)
        assert any(not smaller.contains(d) for d in dirs), normal
