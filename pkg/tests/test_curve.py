from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tvarkit.curve import AFFINE, INF, PROJECTIVE, QDivisor, RationalFunction, global_sections, pointwise_min
from tvarkit.errors import DegreeOnAffineCurve, NonIntegralDivisor, PointNotOnCurve

z = RationalFunction.z()


def test_orders_of_a_quotient():
    f = z**2 / RationalFunction.linear(1)
    assert f.order_at(0) == 2
    assert f.order_at(1) == -1
    assert f.order_at(INF) == -1
    assert f.order_at(5) == 0


def test_principal_divisor():
    f = z**2 / RationalFunction.linear(1)
    assert f.divisor(PROJECTIVE) == QDivisor(PROJECTIVE, {0: 2, 1: -1, INF: -1})
    assert f.divisor(PROJECTIVE).degree() == 0
    assert f.divisor(AFFINE) == QDivisor(AFFINE, {0: 2, 1: -1})


def test_floor_rounds_down():
    d = QDivisor(AFFINE, {0: F(1, 2), 1: F(-1, 2)})
    assert d.floor() == QDivisor(AFFINE, {1: -1})


def test_degree_only_on_projective_line():
    with pytest.raises(DegreeOnAffineCurve):
        QDivisor(AFFINE, {0: 1}).degree()
    with pytest.raises(PointNotOnCurve):
        QDivisor(AFFINE, {INF: 1})


def test_divisor_arithmetic():
    a = QDivisor(PROJECTIVE, {0: F(1, 2), INF: 1})
    b = QDivisor(PROJECTIVE, {0: F(-1, 2), 1: 2})
    assert a + b == QDivisor(PROJECTIVE, {1: 2, INF: 1})
    assert a - a == QDivisor(PROJECTIVE)
    assert 2 * a == QDivisor(PROJECTIVE, {0: 1, INF: 2})
    assert -b <= -b and a >= QDivisor(PROJECTIVE, {0: F(1, 3)})
    assert pointwise_min([a, b]) == QDivisor(PROJECTIVE, {0: F(-1, 2)})


def test_function_arithmetic_and_evaluation():
    f = RationalFunction(3, {1: 2, 0: -1})
    assert f(2) == F(3, 2)
    assert (f * f.inverse()) == RationalFunction(1)
    assert (f / f) == RationalFunction(1)
    assert RationalFunction(2, {1: 2}).coefficients() == [2, -4, 2]
    assert repr(f) == "3*z^-1*(z-1)^2"
    with pytest.raises(ValueError):
        f.coefficients()
    with pytest.raises(ValueError):
        RationalFunction(0)


def test_sections_of_negative_degree_vanish():
    s = global_sections(QDivisor(PROJECTIVE, {0: -1}))
    assert s.is_zero() and s.dimension() == 0 and s.basis == ()


def test_affine_sections_are_a_free_module():
    s = global_sections(QDivisor(AFFINE, {0: 2}))
    assert s.generator == z**-2
    assert s.dimension() is None
    assert s.contains(z**-1) and not s.contains(z**-3)


def test_projective_sections_basis():
    # D = -[0] + [1]: the only section up to scalars is z/(z-1)
    s = global_sections(QDivisor(PROJECTIVE, {0: -1, 1: 1}))
    assert s.dimension() == 1
    assert s.basis == (z / RationalFunction.linear(1),)
    s = global_sections(QDivisor(PROJECTIVE, {INF: 2}))
    assert s.basis == (RationalFunction(1), z, z**2)
    assert s.contains(RationalFunction.linear(3) ** 2) and not s.contains(z**3)


def test_sections_need_integral_divisor():
    with pytest.raises(NonIntegralDivisor):
        global_sections(QDivisor(PROJECTIVE, {0: F(1, 2)}))


points = st.sampled_from([0, 1, 2, -1, F(1, 2)])
divisors = st.dictionaries(points, st.integers(-3, 3), max_size=4)


@settings(max_examples=80, deadline=None)
@given(divisors, st.integers(-2, 4))
def test_every_basis_element_is_a_section(coeffs, at_inf):
    d = QDivisor(PROJECTIVE, {**coeffs, INF: at_inf})
    s = global_sections(d)
    assert s.dimension() == max(0, int(d.degree()) + 1)
    for f in s.basis:
        assert (f.divisor(PROJECTIVE) + d).is_effective()


@settings(max_examples=80, deadline=None)
@given(divisors)
def test_affine_generator_is_minimal(coeffs):
    d = QDivisor(AFFINE, coeffs)
    g = global_sections(d).generator
    assert g.divisor(AFFINE) + d == QDivisor(AFFINE)
