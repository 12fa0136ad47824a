from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from algsupport import (
    Branch,
    OrderError,
    PreconditionError,
    RayFamily,
    SupportSpec,
    ValidationError,
    WeightOrder,
    vec,
)
from algsupport.charp import (
    FiniteField,
    LaurentPoly,
    as_constant_root,
    as_negative_root,
    as_positive_root,
    as_residual,
    as_root,
    as_split,
    evaluate,
    field_family_check,
    from_terms,
    substitute_scaled_root,
)

from .conftest import laurent_polys

X_ORDER = WeightOrder.of((1,))


def x_power(q, field, coeff=1):
    return LaurentPoly.monomial((q,), coeff, field)


@pytest.mark.parametrize("p,m", [(2, 1), (2, 2), (3, 2), (5, 1), (2, 3)])
def test_field_axioms(p, m):
    F = FiniteField(p, m)
    elements = list(F.elements())
    assert len(set(elements)) == F.q
    for a in elements:
        assert a ** F.q == a
        assert a.pth_root().frobenius() == a
        assert a + (-a) == F.zero()
        if a:
            assert a * a.inverse() == F.one()
            assert a / a == 1


def test_field_validation():
    with pytest.raises(ValidationError):
        FiniteField(4)
    with pytest.raises(ValidationError):
        FiniteField(2, 5)
    with pytest.raises(ValidationError):
        FiniteField(3, 0)
    assert FiniteField(11).q == 11


def test_extension_coordinates():
    F4 = FiniteField(2, 2)
    t = F4.from_coeffs([0, 1])
    assert t * t == t + 1
    assert t.coeffs() == [0, 1]
    assert t.index() == 2
    assert F4.from_index(2) == t
    assert F4.one().coeffs() == [1, 0]
    with pytest.raises(ValidationError):
        F4.from_coeffs([1, 0, 1])
    with pytest.raises(ValidationError):
        F4.from_index(4)


def test_prime_field_reduction(prime_field):
    p = prime_field.p
    assert prime_field.element(p + 2) == prime_field.element(2)
    assert prime_field.element(p) == 0
    with pytest.raises(ZeroDivisionError):
        prime_field.zero().inverse()


def test_mixing_fields_is_refused():
    with pytest.raises(ValidationError):
        FiniteField(2).one() + FiniteField(3).one()


def test_laurent_collects_terms():
    F2 = FiniteField(2)
    p = from_terms(1, [((1,), 1), ((1,), 1), ((0,), 1)], F2)
    assert p == LaurentPoly.monomial((0,), 1, F2)
    q = from_terms(2, [((1, 0), 2), ((1, 0), -2)])
    assert q.is_zero()
    with pytest.raises(ValidationError):
        from_terms(2, [((1,), 1)])


def test_laurent_powers_in_characteristic_p():
    F3 = FiniteField(3)
    x = x_power(1, F3)
    assert (x + 1) ** 3 == x_power(3, F3) + 1
    assert (x + 1) ** 0 == LaurentPoly.monomial((0,), 1, F3)
    assert ((x + 1) ** 2).coefficient((1,)) == 2
    assert (x + 1).frobenius().pth_root() == x + 1
    assert x_power(Fraction(1, 3), F3).frobenius() == x


def test_laurent_over_the_rationals():
    x = LaurentPoly.monomial((1,))
    assert (x + 1) * (x - 1) == x ** 2 - 1
    assert x.characteristic == 0
    with pytest.raises(ValidationError):
        x.frobenius()
    with pytest.raises(ValidationError):
        x ** -1


def test_evaluate():
    F2 = FiniteField(2)
    x = x_power(1, F2)
    # T^2 + T + x at T = x
    coeffs = [x, LaurentPoly.monomial((0,), 1, F2), LaurentPoly.monomial((0,), 1, F2)]
    assert evaluate(coeffs, x) == x_power(2, F2)


def test_split():
    F2 = FiniteField(2)
    a = x_power(-1, F2) + x_power(1, F2) + 1
    a_plus, a_minus = as_split(a, X_ORDER)
    assert a_plus == x_power(1, F2) + 1
    assert a_minus == x_power(-1, F2)
    with pytest.raises(OrderError):
        as_split(LaurentPoly.monomial((1, 0), 1, F2), WeightOrder.of((1, 1)))


@pytest.mark.parametrize("p", [2, 3, 5])
@settings(max_examples=50)
@given(data=st.data())
def test_split_is_linear(p, data):
    F = FiniteField(p)
    order = WeightOrder.of((1, 0), (0, 1))
    a = data.draw(laurent_polys(2, F))
    b = data.draw(laurent_polys(2, F))
    c = data.draw(st.integers(1, p - 1))
    a_plus, a_minus = as_split(a, order)
    b_plus, b_minus = as_split(b, order)
    assert a_plus + a_minus == a
    assert all(order.sign_of(e) < 0 for e in a_minus.exponents())
    assert as_split(a + b, order) == (a_plus + b_plus, a_minus + b_minus)
    scalar = LaurentPoly.monomial((0, 0), c, F)
    assert as_split(a * scalar, order) == (a_plus * scalar, a_minus * scalar)


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("depth", [1, 2])
def test_positive_root_residual(p, depth):
    F = FiniteField(p)
    x = x_power(1, F)
    root = as_positive_root(x, depth)
    assert root.exponents() == [vec(p ** i) for i in range(depth + 1)]
    assert as_residual(root, x) == -x_power(p ** (depth + 1), F)


def test_positive_root_in_characteristic_two():
    F2 = FiniteField(2)
    x = x_power(1, F2)
    root = as_positive_root(x, 1)
    assert root == -(x + x_power(2, F2))
    assert as_residual(root, x) == -x_power(4, F2)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_negative_root_residual(p):
    F = FiniteField(p)
    a = x_power(-1, F)
    root = as_negative_root(a, 3, X_ORDER)
    assert root.exponents() == sorted(vec(Fraction(-1, p ** i)) for i in range(1, 4))
    assert as_residual(root, a) == -x_power(Fraction(-1, p ** 3), F)


def test_root_preconditions():
    F3 = FiniteField(3)
    with pytest.raises(PreconditionError):
        as_negative_root(x_power(1, F3), 2, X_ORDER)
    with pytest.raises(PreconditionError):
        as_positive_root(x_power(-1, F3), 2, X_ORDER)
    with pytest.raises(PreconditionError):
        as_positive_root(x_power(0, F3), 2)
    with pytest.raises(ValidationError):
        as_negative_root(x_power(-1, F3), 0)
    with pytest.raises(ValidationError):
        as_root(LaurentPoly.monomial((1,)), X_ORDER)


def test_constant_roots():
    F4 = FiniteField(2, 2)
    r = as_constant_root(F4.one())
    assert r is not None
    assert r.frobenius() - r == F4.one()
    assert as_constant_root(FiniteField(3).one()) is None


def test_as_root_branches():
    F3 = FiniteField(3)
    a = x_power(-1, F3) + x_power(1, F3)
    result = as_root(a, X_ORDER, Branch.AUTO, depth=2)
    assert result.root_set_size == 3
    assert result.depth == 2
    assert result.residual == -x_power(Fraction(-1, 9), F3) - x_power(27, F3)
    with pytest.raises(PreconditionError):
        as_root(a, X_ORDER, Branch.MINUS)
    with pytest.raises(PreconditionError):
        as_root(a, X_ORDER, Branch.PLUS)


def test_as_root_with_a_constant():
    F4 = FiniteField(2, 2)
    result = as_root(LaurentPoly.monomial((0,), 1, F4), X_ORDER)
    assert result.residual.is_zero()
    with pytest.raises(PreconditionError):
        as_root(LaurentPoly.monomial((0,), 1, FiniteField(3)), X_ORDER)


def test_substitute_scaled_root():
    F2 = FiniteField(2)
    u = x_power(1, F2)
    assert substitute_scaled_root(u, vec(Fraction(1, 2))) == x_power(Fraction(3, 2), F2)


def test_field_family_check_passes(lex_order):
    quadrant = SupportSpec(2, rays=(RayFamily(vec(0, 0), vec(1, 0)), RayFamily(vec(0, 0), vec(0, 1))))
    report = field_family_check([quadrant], lex_order)
    assert report.passed
    assert report.failures == []


def test_field_family_check_reports_failures(lex_order):
    quadrant = SupportSpec(2, rays=(RayFamily(vec(0, 0), vec(1, 0)), RayFamily(vec(0, 0), vec(0, 1))))
    backwards = SupportSpec(2, rays=(RayFamily(vec(0, 0), vec(-1, 1)),))
    report = field_family_check([quadrant, backwards], lex_order)
    assert not report.passed
    assert not report.axioms[1]
    assert not report.axioms[3]
    assert report.axioms[2]


def test_field_family_check_input(lex_order):
    with pytest.raises(ValidationError):
        field_family_check([], lex_order)
    with pytest.raises(ValidationError):
        field_family_check([SupportSpec(3)], lex_order)
