from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from vir26.kappa_field import KAPPA, RatFunc
from vir26.formal_series import (
    CommonDenSeries, HypergeomParams, ParameterPole, TruncSeries, binom_series, gauss_2f1,
    geom_pole_series, hypergeometric_ode_residual, pochhammer, series_arith, series_derivative,
    series_mul,
)
from conftest import fractions_, ratfuncs


def _naive(x, y):
    n = min(x.order, y.order)
    return TruncSeries([sum((x[i] * y[k - i] for i in range(k + 1)), 0 * x[0]) for k in range(n + 1)])


@settings(max_examples=30, deadline=None)
@given(st.lists(fractions_, min_size=1, max_size=12), st.lists(fractions_, min_size=1, max_size=12))
def test_product_over_q_matches_convolution(xs, ys):
    x, y = TruncSeries(xs), TruncSeries(ys)
    assert series_mul(x, y) == _naive(x, y)


@settings(max_examples=15, deadline=None)
@given(st.lists(ratfuncs(), min_size=1, max_size=6), st.lists(ratfuncs(), min_size=1, max_size=6))
def test_product_over_k_matches_convolution(xs, ys):
    x, y = TruncSeries(xs), TruncSeries(ys)
    assert series_mul(x, y) == _naive(x, y)


@settings(max_examples=25, deadline=None)
@given(fractions_, fractions_)
def test_binomial_exponents_add(a, b):
    lhs = binom_series(a, 15) * binom_series(b, 15)
    assert lhs == binom_series(a + b, 15)


def test_binomial_exponents_add_over_k():
    g = 1 / (2 * KAPPA)
    assert binom_series(g, 20) * binom_series(-g, 20) == TruncSeries.one(20, over_k=True)


def test_geometric_pole_is_inverse_power():
    for m in range(1, 4):
        assert geom_pole_series(m, 12).mul_one_minus_t(m) == TruncSeries.one(12)


@settings(max_examples=25, deadline=None)
@given(fractions_, fractions_, fractions_)
def test_gauss_series_solves_its_equation(a, b, c):
    p = HypergeomParams(a, b, c)
    try:
        f = gauss_2f1(p, 20)
    except ParameterPole:
        return
    assert hypergeometric_ode_residual(p, f).is_zero()


def test_gauss_series_over_k_solves_its_equation():
    k = KAPPA
    p = HypergeomParams(1 / k, 3 / k - 1, 2 / k)
    assert hypergeometric_ode_residual(p, gauss_2f1(p, 25)).is_zero()


def test_gauss_known_values():
    # 2F1(1, 1, 1; t) = 1/(1-t); 2F1(-2, b, c; t) is a polynomial
    assert gauss_2f1(HypergeomParams(1, 1, 1), 10) == geom_pole_series(1, 10)
    poly = gauss_2f1(HypergeomParams(-2, Fraction(1, 3), Fraction(5, 2)), 10)
    assert poly.last_nonzero() == 2


def test_parameter_pole():
    with pytest.raises(ParameterPole, match="parameter pole"):
        gauss_2f1(HypergeomParams(1, 1, -3), 10)


def test_derivative_and_integral():
    s = TruncSeries([Fraction(c) for c in (1, 2, 3, 4, 5)])
    assert series_derivative(s, 2) == TruncSeries([6, 24, 60])
    assert s.derivative(1).integral() == s - 1
    with pytest.raises(ValueError):
        series_derivative(s, 5)


def test_arith_and_orders():
    a = TruncSeries([1, 2, 3])
    b = TruncSeries([1, 1])
    assert series_arith(a, b, "add").order == 1
    assert series_arith(a, b, "sub") == TruncSeries([0, 1])
    with pytest.raises(ValueError):
        series_arith(a, b, "pow")
    assert a.shift(1) == TruncSeries([0, 1, 2])


def test_common_denominator_round_trip():
    k = KAPPA
    s = TruncSeries([1 / k, (k + 1) / (k - 2), RatFunc(3)])
    c = CommonDenSeries.from_series(s)
    assert c.to_series() == s
    assert (c * c).to_series() == s * s
    assert c.derivative(1).to_series() == s.derivative(1)
    assert c.mul_one_minus_t(2).to_series() == s.mul_one_minus_t(2)


def test_pochhammer():
    assert pochhammer(3, 0) == 1
    assert pochhammer(3, 3) == 60
    assert pochhammer(KAPPA, 2) == KAPPA * (KAPPA + 1)
