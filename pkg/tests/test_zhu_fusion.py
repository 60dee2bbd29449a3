import pytest

from vir26.kappa_field import KAPPA, delta
from vir26.virasoro_verma import singular_vector
from vir26.zhu_fusion import (
    BiPoly, X, Y, bareiss_det, det_An, f_poly, f_poly_by_compositions, factorization_check,
    fusion_admissible, fusion_vanishing_check, g_poly, hessenberg_det, matrix_An, zhu_image,
)


def test_small_polynomials():
    k = 1 / KAPPA
    assert f_poly(0) == X - Y
    d1 = delta(1)
    assert f_poly(1) == (X - Y - d1) * (X - Y - delta(-1)) - Y * k
    assert f_poly(2) == (X - Y) * ((X - Y - delta(2)) * (X - Y - delta(-2)) - Y * (4 * k))


def test_suffix_table_matches_composition_sum():
    for n in range(6):
        assert f_poly(n) == f_poly_by_compositions(n)


def test_factorization():
    for k in range(4):
        assert factorization_check(k)


def test_degrees():
    for n in range(6):
        assert f_poly(n).total_degree() == n + 1
        assert f_poly(n).degree_x() == n + 1
    assert g_poly(2).total_degree() == 2


def test_determinant_two_ways():
    t = X - Y - delta(1)
    assert det_An(1) == (t - 1) * t + (t - Y) * (1 / KAPPA)
    for n in range(5):
        m = matrix_An(n)
        assert bareiss_det(m) == hessenberg_det(m) == f_poly(n)


def test_determinant_bound():
    with pytest.raises(ValueError, match="desk-scale"):
        det_An(7)


def test_exact_division():
    p = (X + 1) * (Y - 2)
    assert p.divexact(X + 1) == Y - 2
    with pytest.raises(ArithmeticError):
        (X * X + 1).divexact(X + 1)


def test_zhu_image_of_singular_vectors():
    for n in range(5):
        assert zhu_image(singular_vector(n)) == f_poly(n)


def test_fusion_rules_small_grid():
    for a in range(6):
        for b in range(6):
            for c in range(6):
                assert fusion_admissible(a, b, c) == fusion_vanishing_check(a, b, c)
    assert fusion_admissible(1, 1, 2) and not fusion_admissible(1, 1, 1)
    assert not fusion_admissible(1, 1, 4)


def test_bipoly_evaluate():
    p = X * X - Y * 3 + BiPoly.const(KAPPA)
    assert p.evaluate(KAPPA, 2) == KAPPA * KAPPA - 6 + KAPPA
