from fractions import Fraction

import pytest

from vir26.formal_series import HypergeomParams, ParameterPole, TruncSeries
from vir26.hyp_identities import (
    IDENTITY_IDS, IdentityCase, derivative_pairing, family_four, family_four_admissible,
    family_four_grid, family_three, identity_residual, lhs_terms, pairing_closed_form,
    pairing_pole_check, random_triples, rhs_polynomials, _bank,
)

GENERIC = HypergeomParams(Fraction(3, 7), Fraction(-5, 11), Fraction(13, 6))


@pytest.mark.parametrize("id", IDENTITY_IDS)
def test_identities_on_a_rational_triple(id):
    assert identity_residual(IdentityCase(id, GENERIC, 30)).is_zero()


@pytest.mark.parametrize("id", IDENTITY_IDS)
def test_identities_on_two_point_family(id):
    assert identity_residual(IdentityCase(id, family_three(2), 20)).is_zero()


def test_identities_on_four_point_family():
    params = family_four(2, 2, 2)
    assert all(identity_residual(IdentityCase(id, params, 16)).is_zero() for id in IDENTITY_IDS)


@pytest.mark.parametrize("id", IDENTITY_IDS)
def test_perturbed_coefficient_is_detected(id):
    """Scaling the last printed coefficient by 8/7 must leave a nonzero residual."""
    order = 20
    bank = _bank(GENERIC, order)
    terms = lhs_terms(id, GENERIC)
    lhs = None
    for i, (coeff, power, fkey, gkey) in enumerate(terms):
        if i == len(terms) - 1:
            coeff = coeff * Fraction(8, 7)
        piece = bank.product(fkey, gkey).shift(power).scale(coeff)
        lhs = piece if lhs is None else lhs + piece
    assert not (lhs - rhs_polynomials(id, GENERIC, order)).is_zero()


def test_random_triples_are_seeded_and_regular():
    a = random_triples(5, 7, 20)
    assert a == random_triples(5, 7, 20)
    assert a != random_triples(5, 8, 20)
    for p in a:
        assert identity_residual(IdentityCase("H1", p, 20)).is_zero()


def test_pole_reported():
    with pytest.raises(ParameterPole):
        identity_residual(IdentityCase("H2", HypergeomParams(Fraction(1, 3), Fraction(1, 5), Fraction(1)), 10))


def test_family_four_grid():
    grid = family_four_grid(6)
    assert len(grid) == 69
    assert (2, 2, 2) not in grid and (1, 1, 1) in grid
    assert all(family_four_admissible(*t) for t in grid)
    a, b, c = family_four(1, 3, 3)
    assert (a, b, c) == tuple(family_three(3))


def test_derivative_pairing_closed_forms():
    for n in range(3):
        assert derivative_pairing(n, GENERIC, 24) == pairing_closed_form(n, GENERIC, 24)


def test_derivative_pairing_poles():
    for n in range(2, 6):
        assert pairing_pole_check(n, GENERIC, 30)
    assert isinstance(derivative_pairing(4, GENERIC, 30), TruncSeries)
