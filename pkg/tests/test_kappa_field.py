from fractions import Fraction

import pytest
from hypothesis import given, settings

from vir26.kappa_field import (
    KAPPA, RatFunc, binomial, central_charge, central_charge_bar, delta, delta_bar,
    delta_sum_product, falling, ratfunc_text, weight,
)
from conftest import ratfuncs, fractions_


@settings(max_examples=60, deadline=None)
@given(ratfuncs(), ratfuncs(), ratfuncs())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0


@settings(max_examples=60, deadline=None)
@given(ratfuncs(nonzero=True), ratfuncs())
def test_division_inverts_multiplication(a, b):
    assert (b * a) / a == b
    assert a * a.inverse() == 1


@settings(max_examples=40, deadline=None)
@given(ratfuncs(), fractions_)
def test_evaluation_is_a_homomorphism(a, x):
    b = a * a + 3
    try:
        assert b(x) == a(x) ** 2 + 3
    except ZeroDivisionError:
        pass


@settings(max_examples=40, deadline=None)
@given(ratfuncs(), ratfuncs())
def test_bar_is_an_involutive_automorphism(a, b):
    assert a.bar().bar() == a
    assert (a * b).bar() == a.bar() * b.bar()
    assert (a + b).bar() == a.bar() + b.bar()


def test_hash_agrees_with_equality():
    assert hash(RatFunc(3)) == hash(Fraction(3))
    assert RatFunc([1, 1], [2, 2]) == RatFunc(Fraction(1, 2))
    assert len({KAPPA / KAPPA, RatFunc(1)}) == 1


def test_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        RatFunc(1) / RatFunc(0)
    with pytest.raises(ZeroDivisionError):
        (1 / KAPPA)(0)


def test_text_form():
    assert ratfunc_text(delta(1)) == "(-2*k + 3) / (4*k)"
    assert ratfunc_text(1 / KAPPA) == "1 / k"
    assert ratfunc_text((KAPPA + 2) / 2) == "(k + 2)/2"
    assert ratfunc_text(RatFunc(Fraction(-1, 2)) / (4 - KAPPA * KAPPA)) == "1 / (2*k^2 - 8)"
    assert ratfunc_text(RatFunc(0)) == "0"
    assert ratfunc_text(RatFunc(Fraction(2, 3))) == "2/3"


def test_weights_and_central_charges():
    assert delta(0) == 0
    assert delta(1) == RatFunc(Fraction(3, 4)) / KAPPA - Fraction(1, 2)
    assert central_charge() + central_charge_bar() == 26
    for n in range(6):
        assert delta(n) + delta_bar(n) == -n
    w = weight(2)
    assert w.delta == delta(2) and w.c_bar == central_charge_bar()


def test_root_pair_identity():
    for n in range(6):
        for s in range(n + 1):
            total, prod = delta_sum_product(n, s)
            assert total == 0 and prod == 0


def test_sqrt():
    r = (KAPPA + 1) / (2 * KAPPA)
    assert (r * r).sqrt() in (r, -r)
    with pytest.raises(ValueError):
        KAPPA.sqrt()


def test_generalized_binomial():
    assert binomial(Fraction(1, 2), 2) == Fraction(-1, 8)
    assert binomial(KAPPA, 0) == 1
    assert binomial(KAPPA, 2) == KAPPA * (KAPPA - 1) / 2
    assert falling(5, 3) == 60
