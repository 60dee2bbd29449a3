"""
Product identities between Gauss hypergeometric series.

Each identity says that a short sum

    sum_i  coeff_i(a, b, c) * t^shift_i * F_i(t) * G_i(t)

equals an explicit rational function of t (a polynomial of degree 2 plus,
for the last two, simple poles at t = 1). The series factors are

    F_j = 2F1(a+j, b+j, c+j)           S_m = 2F1(a-c+m, b-c+m, m+1-c)
    G0  = 2F1(-a, -b-2, -c)            G1  = 2F1(-a+c+1, -b+c-1, 2+c)

Identities are checked by exact truncation; ``identity_residual`` returns
LHS - RHS, which must be the zero series.
"""

import random
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import NamedTuple

from .kappa_field import RatFunc, KAPPA, falling
from .formal_series import (
    CommonDenSeries, HypergeomParams, ParameterPole, TruncSeries, gauss_2f1, geom_pole_series,
    pochhammer,
)
from .zhu_fusion import fusion_admissible

IDENTITY_IDS = ("H1", "H2", "H3", "H51", "H52")
DEFAULT_ORDER = 40


class IdentityCase(NamedTuple):
    id: str
    params: HypergeomParams
    order: int = DEFAULT_ORDER


def _series_params(key, a, b, c):
    kind, j = key
    if kind == "F":
        return HypergeomParams(a + j, b + j, c + j)
    if kind == "S":
        return HypergeomParams(a - c + j, b - c + j, j + 1 - c)
    if kind == "G":
        if j == 0:
            return HypergeomParams(-a, -b - 2, -c)
        return HypergeomParams(-a + c + 1, -b + c - 1, 2 + c)
    raise KeyError(key)


def lhs_terms(id, params):
    """[(coefficient, power of t, F-key, G-key)] for the left-hand side."""
    a, b, c = params
    P = pochhammer
    G0, G1 = ("G", 0), ("G", 1)
    if id == "H1":
        return [
            (1, 0, ("F", 0), G0),
            (a * P(b, 3) * (a - c) / (c * P(c - 1, 3) * (c - b - 1)), 2, ("S", 1), G1),
        ]
    if id == "H2":
        return [
            (1, 0, ("F", 0), G0),
            (a * b / (c * (c - 1)), 1, ("F", 1), G0),
            (a * P(b, 3) * P(a - c, 2) / (P(c - 2, 3) * P(c - 1, 3)), 3, ("S", 2), G1),
        ]
    if id == "H3":
        return [
            (1, 0, ("F", 0), G0),
            (2 * a * b / (c * (c - 2)), 1, ("F", 1), G0),
            (P(a, 2) * P(b, 2) / P(c - 2, 4), 2, ("F", 2), G0),
            (a * P(b, 3) * P(a - c, 3) * (c - b - 2) / (P(c - 3, 4) * P(c - 2, 4)), 4, ("S", 3), G1),
        ]
    if id == "H51":
        return [
            (1, 0, ("F", 0), G0),
            (3 * a * b / (c * (c - 3)), 1, ("F", 1), G0),
            (3 * P(a, 2) * P(b, 2) / (P(c, 2) * P(c - 3, 2)), 2, ("F", 2), G0),
            (P(a, 3) * P(b, 3) / P(c - 3, 6), 3, ("F", 3), G0),
            (a * P(b, 3) * P(a - c, 4) * P(c - b - 3, 2) / (P(c - 4, 5) * P(c - 3, 5)), 5, ("S", 4), G1),
        ]
    if id == "H52":
        return [
            (1, 0, ("F", 0), G0),
            (4 * a * b / (c * (c - 4)), 1, ("F", 1), G0),
            (6 * P(a, 2) * P(b, 2) / (P(c, 2) * P(c - 4, 2)), 2, ("F", 2), G0),
            (4 * P(a, 3) * P(b, 3) / (P(c, 3) * P(c - 4, 3)), 3, ("F", 3), G0),
            (P(a, 4) * P(b, 4) / P(c - 4, 8), 4, ("F", 4), G0),
            (a * P(b, 3) * P(a - c, 5) * P(c - b - 4, 3) / (P(c - 5, 6) * P(c - 4, 6)), 6, ("S", 5), G1),
        ]
    raise ValueError("unknown identity %r" % (id,))


def rhs_parts(id, params):
    """
    Right-hand side as ([c0, c1, c2], [(coeff, power, pole order), ...]),
    meaning c0 + c1 t + c2 t^2 + sum coeff t^power / (1-t)^pole.
    """
    a, b, c = params
    P = pochhammer
    if id == "H1":
        return [1, -2 * a / c, a * (a - b - 1) / (c * (c - b - 1))], []
    if id == "H2":
        return [1, a * (b - 2 * c + 2) / (c * (c - 1)), a * (a - b - 1) / (c * (c - 1))], []
    if id == "H3":
        return [1, 2 * a * (b - c + 2) / (c * (c - 2)),
                a * (a - b - 1) * (c - b - 2) / ((c - 2) * (c - 1) * c)], []
    if id == "H51":
        return ([1, a * (3 * b - 2 * c + 6) / (c * (c - 3)),
                 a * (a - b - 1) * P(c - b - 3, 2) / P(c - 3, 4)],
                [(a * P(b, 3) / P(c - 3, 4), 2, 1)])
    if id == "H52":
        return ([1, a * (4 * b - 2 * c + 8) / (c * (c - 4)),
                 a * (a - b - 1) * P(c - b - 4, 3) / P(c - 4, 5)],
                [(a * P(b, 3) * (a - b + 3 * c - 7) / P(c - 4, 5), 2, 1),
                 (a * P(b, 3) * (a + b - c + 3) / P(c - 4, 5), 3, 2)])
    raise ValueError("unknown identity %r" % (id,))


def _zero(params):
    return RatFunc(0) if any(isinstance(x, RatFunc) for x in params) else Fraction(0)


def rhs_polynomials(id, params, order=DEFAULT_ORDER) -> TruncSeries:
    try:
        poly, poles = rhs_parts(id, params)
    except ZeroDivisionError as exc:
        raise ParameterPole("coefficient pole in %s: %s" % (id, exc)) from None
    z = _zero(params)
    out = TruncSeries([z + x for x in poly], order)
    for coeff, power, pole in poles:
        out = out + geom_pole_series(pole, order).shift(power).scale(coeff)
    return out


def _over_k(params):
    return any(isinstance(x, RatFunc) for x in params)


class ProductBank:
    """
    Memoized 2F1 products for one parameter triple, shared across identities.
    Over Q(k) the products are kept in common-denominator form.
    """

    def __init__(self, params, order):
        self.params = HypergeomParams(*params)
        self.order = order
        self.over_k = _over_k(self.params)
        self._series = {}
        self._products = {}

    def lift(self, s):
        return CommonDenSeries.from_series(s) if self.over_k else s

    def series(self, key):
        s = self._series.get(key)
        if s is None:
            p = _series_params(key, *self.params)
            s = self._series[key] = gauss_2f1(p, self.order)
        return s

    def product(self, fkey, gkey):
        k = (fkey, gkey)
        s = self._products.get(k)
        if s is None:
            s = self._products[k] = self.lift(self.series(fkey)) * self.lift(self.series(gkey))
        return s


@lru_cache(maxsize=8)
def _bank(params, order):
    return ProductBank(params, order)


def identity_lhs(id, params, order=DEFAULT_ORDER, bank=None) -> TruncSeries:
    params = HypergeomParams(*params)
    bank = bank or _bank(params, order)
    try:
        terms = lhs_terms(id, params)
    except ZeroDivisionError as exc:
        raise ParameterPole("coefficient pole in %s: %s" % (id, exc)) from None
    out = None
    for coeff, power, fkey, gkey in terms:
        piece = bank.product(fkey, gkey).shift(power).scale(coeff)
        out = piece if out is None else out + piece
    return out


def identity_residual(case: IdentityCase) -> TruncSeries:
    params = HypergeomParams(*case.params)
    bank = _bank(params, case.order)
    lhs = identity_lhs(case.id, params, case.order, bank)
    diff = lhs - bank.lift(rhs_polynomials(case.id, params, case.order))
    return diff.to_series() if bank.over_k else diff


# ---- parameter families -------------------------------------------------

def family_three(n: int) -> HypergeomParams:
    """(1/k, (n+2)/k - 1, (n+1)/k): the two-point channel parameters."""
    k = KAPPA
    return HypergeomParams(1 / k, (n + 2) / k - 1, (n + 1) / k)


def family_four(lam: int, mu: int, nu: int) -> HypergeomParams:
    k = KAPPA
    a = RatFunc(lam - mu + nu + 1) / (2 * k)
    b = RatFunc(lam + mu + nu + 3) / (2 * k) - 1
    c = RatFunc(nu + 1) / k
    return HypergeomParams(a, b, c)


def family_four_admissible(lam: int, mu: int, nu: int) -> bool:
    """Both neighbouring channels nu+1 and nu-1 exist."""
    return (lam >= 1 and nu >= 1 and fusion_admissible(lam, mu, nu + 1)
            and fusion_admissible(lam, mu, nu - 1))


def family_four_grid(bound: int):
    return [(l, m, n) for l in range(bound + 1) for m in range(bound + 1)
            for n in range(bound + 1) if family_four_admissible(l, m, n)]


def _params_regular(params, order):
    a, b, c = params
    for id in IDENTITY_IDS:
        try:
            terms = lhs_terms(id, params)
            rhs_parts(id, params)
        except ZeroDivisionError:
            return False
        for coeff, power, fkey, gkey in terms:
            for key in (fkey, gkey):
                cc = _series_params(key, a, b, c).c
                if any(cc + i == 0 for i in range(order)):
                    return False
    return True


def random_triples(count: int, seed: int, order: int = DEFAULT_ORDER,
                   num_bound: int = 50, den_bound: int = 20):
    """Seeded exact-rational triples, rejecting any that hit a pole."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        p = HypergeomParams(*(Fraction(rng.randint(-num_bound, num_bound), rng.randint(1, den_bound))
                              for _ in range(3)))
        if _params_regular(p, order):
            out.append(p)
    return out


# ---- derivative pairing -----------------------------------------------

def pairing_q22(params):
    a, b, c = params
    return a * b * (b + 1) * (b + 2) * (a - c) / ((c - 1) * c * c * (c + 1) * (c - b - 1))


def pairing_shift(n: int) -> int:
    """Power of t that clears the pole of f_n at t = 0."""
    return max(n - 2, 0)


def derivative_pairing(n: int, params, order: int = DEFAULT_ORDER) -> TruncSeries:
    """
    t^max(n-2,0) * f_n(t), where f_n pairs the n-th t-derivative of the
    solution pair (F, t^(1-c) S_1) with the dual pair (G0, t^(1+c) G1)
    through diag(1, q22).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    params = HypergeomParams(*params)
    a, b, c = params
    shift = pairing_shift(n)
    bank = _bank(params, order)
    try:
        q22 = pairing_q22(params)
    except ZeroDivisionError as exc:
        raise ParameterPole("coefficient pole: %s" % exc) from None
    first = bank.series(("F", 0)).derivative(n) * bank.series(("G", 0))
    out = first.shift(shift)
    s1 = bank.series(("S", 1))
    g1 = bank.series(("G", 1))
    for j in range(n + 1):
        coeff = q22 * comb(n, j) * falling(1 - c, j)
        if coeff == 0:
            continue
        piece = (s1.derivative(n - j) * g1).shift(shift + 2 - j)
        out = out + piece.truncate(order - n).scale(coeff)
    return out.truncate(order - n)


def pairing_closed_form(n: int, params, order: int = DEFAULT_ORDER) -> TruncSeries:
    """The known closed forms for n = 0, 1, 2."""
    a, b, c = params
    z = _zero(params)
    if n == 0:
        poly, _ = rhs_parts("H1", params)
        return TruncSeries([z + x for x in poly], order)
    if n == 1:
        lead = a * b / c
        return TruncSeries([z + lead, -lead * (a - b - 1) / (c - b - 1)], order - 1)
    if n == 2:
        return TruncSeries([z + a * b * (b + 1) * (a - b - 1) / (c * (c - b - 1))], order - 2)
    raise ValueError("closed form known only for n <= 2")


def pairing_pole_check(n: int, params, order: int = DEFAULT_ORDER, bound=None) -> bool:
    """t^(n-2) (1-t)^(n-2) f_n terminates within the degree bound."""
    if n < 2:
        raise ValueError("pole structure applies to n >= 2")
    s = derivative_pairing(n, params, order).mul_one_minus_t(n - 2)
    limit = 2 * (n - 2) + 2 if bound is None else bound
    return all(s[i] == 0 for i in range(limit + 1, s.order + 1))
