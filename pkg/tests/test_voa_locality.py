from fractions import Fraction

import pytest

from vir26.correlators_bpz import ChannelAbsent
from vir26.kappa_field import KAPPA, RatFunc
from vir26.voa_locality import (
    LaurentBi, LocalityViolation, binomial_sum, binomial_sum_direct, binomial_sum_regularity,
    lemma_l2_check, locality_check, locality_expected, locality_matrix_coeffs, phi_kl,
    phi_kl_check, ratio_check, ratio_forms, recursion_check, structure_constant, x_one_closed,
    zw_limit, zw_limit_check, zw_limit_grid,
)

k = KAPPA
ORDER = 24


def test_constant_examples():
    assert structure_constant(1, 1, 0) == RatFunc(Fraction(1, 2)) / (4 - k * k)
    assert structure_constant(2, 2, 0) == 1 / (3 * (4 - k * k) * (9 - k * k))
    assert str(structure_constant(1, 1, 0)) == "-1 / (2*k^2 - 8)"
    for lam in range(5):
        for mu in range(5):
            assert structure_constant(lam, mu, lam + mu) == 1


def test_constants_vanish_off_the_fusion_rules():
    assert structure_constant(1, 1, 1).is_zero()
    assert structure_constant(1, 3, 1).is_zero()
    assert structure_constant(-1, 1, 0).is_zero()


def test_constant_symmetry():
    for lam in range(6):
        for mu in range(6):
            for nu in range(11):
                assert structure_constant(lam, mu, nu) == structure_constant(mu, lam, nu)


def test_two_point_normalization():
    for n in range(1, 8):
        assert structure_constant(1, n, n - 1) == x_one_closed(n)


def test_recursion():
    assert all(recursion_check(a, b, c) for a in range(6) for b in range(6) for c in range(11))


def test_ratio_forms():
    ratio, hyp, explicit = ratio_forms(1, 1, 1)
    assert ratio == hyp == explicit
    assert all(ratio_check(*t) for t in [(1, 2, 2), (2, 2, 1), (3, 2, 2), (3, 3, 3)])
    with pytest.raises(ZeroDivisionError):
        ratio_forms(1, 1, 2)


def test_laurent_swap_and_equality():
    a = LaurentBi({(2, 0): 1, (0, 2): 3}, 1)
    assert a.swap() == LaurentBi({(0, 2): -1, (2, 0): -3}, 1)
    assert a.swap().swap() == a
    assert a.diagonal_value() == 4


@pytest.mark.parametrize("n", range(5))
def test_locality(n):
    assert locality_check(n, ORDER)


def test_locality_shapes():
    top, middle, bottom = locality_matrix_coeffs(0, ORDER)
    assert bottom is None and top == LaurentBi({(0, 0): 1})
    n = 2
    x = structure_constant(1, n + 1, n)
    _, middle, bottom = locality_matrix_coeffs(n, ORDER)
    assert middle == LaurentBi({(2, 0): x, (1, 1): x * Fraction(-2, 3), (0, 2): x})
    assert bottom == locality_expected(n)[2]


@pytest.mark.parametrize("n", [1, 3])
def test_locality_negative_control(n):
    with pytest.raises(LocalityViolation):
        locality_matrix_coeffs(n, ORDER, x_lower=2 * structure_constant(1, n, n - 1))


def test_phi_lowest():
    for n in range(4):
        assert phi_kl(n, 0, 0, ORDER) == LaurentBi({(2, 0): 1, (1, 1): Fraction(-2, n + 1), (0, 2): 1})


@pytest.mark.parametrize("n", [0, 1, 2])
def test_phi_swap(n):
    for total in range(3):
        for kk in range(total + 1):
            assert phi_kl_check(n, kk, total - kk, ORDER)
    with pytest.raises(ValueError):
        phi_kl_check(n, 3, 2, ORDER)


def test_binomial_sums():
    for nsum in range(3):
        assert binomial_sum(1, 1, 0, nsum, ORDER) == binomial_sum_direct(1, 1, 0, nsum, ORDER)
        assert binomial_sum_regularity(2, 0, 1, nsum, ORDER)


def test_zw_limits():
    grid = zw_limit_grid(4)
    assert (1, 1, 1) in grid and (1, 2, 1) not in grid
    for t in grid[:6]:
        assert zw_limit_check(*t, 0, ORDER)
    for l in (1, 2):
        assert zw_limit_check(1, 1, 1, l, ORDER)


def test_zw_limit_absent_channel():
    with pytest.raises(ChannelAbsent):
        zw_limit(1, 2, 1, 1, ORDER)
    assert zw_limit(1, 2, 1, 1, ORDER, strict=False).is_zero()
    assert zw_limit_check(2, 1, 1, 2, ORDER, strict=False)


def test_binomial_identity():
    assert all(lemma_l2_check(N, kk, q) for N in range(6) for kk in range(6) for q in range(8))
