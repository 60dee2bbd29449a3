"""
Structure constants X_{lam,mu}^nu and the locality checks built from
paired correlators.

A paired product Phi * Psi of a channel and its barred dual has integer
homogeneity, so every matrix coefficient below has the shape
z^D t^B S(t) with integer D, B and S a truncated series. Membership in
A_m = C[z^{+-1}, w^{+-1}] (z-w)^{-m} is tested by multiplying S by (1-t)^m
and checking that the coefficients vanish beyond a degree bound that
follows from homogeneity and the z <-> w swap.
"""

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import NamedTuple

from .kappa_field import RatFunc, KAPPA, binomial, to_ratfunc
from .formal_series import CommonDenSeries, TruncSeries
from .zhu_fusion import fusion_admissible
from .correlators_bpz import (
    ChannelAbsent, HomogeneousTerm, binom_derivative_term, correlator_spec_31x,
    correlator_spec_4x, spec_4x_admissible,
)
from .hyp_identities import family_four

DEFAULT_ORDER = 40


class LocalityViolation(ArithmeticError):
    pass


class StructureConstant(NamedTuple):
    lam: int
    mu: int
    nu: int
    value: RatFunc


def structure_constant(lam: int, mu: int, nu: int) -> RatFunc:
    if min(lam, mu, nu) < 0 or not fusion_admissible(lam, mu, nu):
        return RatFunc(0)
    ell = (lam + mu - nu) // 2
    top = (lam + mu + nu + 2) // 2
    out = RatFunc(Fraction(comb(lam, ell) * comb(mu, ell), comb(top, ell)))
    k2 = KAPPA * KAPPA
    for j in range(nu + 2, top + 1):
        out = out / (j * j - k2)
    return out


def structure_constant_record(lam: int, mu: int, nu: int) -> StructureConstant:
    return StructureConstant(lam, mu, nu, structure_constant(lam, mu, nu))


def x_one_closed(n: int) -> RatFunc:
    """X_{1,n}^{n-1} = n / ((n+1) ((n+1)^2 - k^2)), the two-point normalization."""
    if n <= 0:
        return RatFunc(0)
    return RatFunc(Fraction(n, n + 1)) / ((n + 1) ** 2 - KAPPA * KAPPA)


def recursion_rhs(lam: int, mu: int, nu: int) -> RatFunc:
    """-(lam+1)(lam-mu-nu-1) / ((nu+1)(lam+mu-nu+1)) X_{1,nu+1}^nu X_{lam,mu}^{nu+1}."""
    prod = structure_constant(1, nu + 1, nu) * structure_constant(lam, mu, nu + 1)
    if prod == 0:
        return RatFunc(0)
    return -RatFunc(Fraction((lam + 1) * (lam - mu - nu - 1), (nu + 1) * (lam + mu - nu + 1))) * prod


def recursion_check(lam: int, mu: int, nu: int) -> bool:
    lhs = structure_constant(lam + 1, mu, nu)
    if lam + mu - nu + 1 == 0:
        # nu = lam + mu + 1: the prefactor is 0/0 and X_{lam,mu}^{nu+1} = 0;
        # the top channel is normalized to 1 on both levels instead
        return lhs == structure_constant(lam, mu, nu - 1)
    return lhs == recursion_rhs(lam, mu, nu)


def ratio_forms(lam: int, mu: int, nu: int):
    """(X ratio, hypergeometric-parameter form, explicit form in lam, mu, nu, k)."""
    den = structure_constant(1, nu + 1, nu) * structure_constant(lam, mu, nu + 1)
    if den == 0:
        raise ZeroDivisionError("X_{1,nu+1}^nu X_{lam,mu}^{nu+1} vanishes at (%d, %d, %d)"
                                % (lam, mu, nu))
    ratio = structure_constant(lam, mu, nu - 1) / den
    a, b, c = family_four(lam, mu, nu)
    hyp = a * b * (b + 1) * (b + 2) * (a - c) / (c * c * (c + 1) * (c - 1) * (c - b - 1))
    k2 = KAPPA * KAPPA
    h = Fraction(lam + mu + nu + 3, 2)
    lead = -(Fraction(lam - mu + nu + 1, 2) * Fraction(lam - mu - nu - 1, 2) * h
             / ((nu + 1) ** 2 * Fraction(lam + mu - nu + 1, 2)))
    explicit = RatFunc(lead) * (h * h - k2) / ((nu + 1) ** 2 - k2)
    return ratio, hyp, explicit


def ratio_check(lam: int, mu: int, nu: int) -> bool:
    ratio, hyp, explicit = ratio_forms(lam, mu, nu)
    return ratio == hyp == explicit


# ---- Laurent polynomials over (z - w)^m --------------------------------------

class LaurentBi:
    """sum c_{ij} z^i w^j, standing for that polynomial divided by (z-w)^m."""

    __slots__ = ("terms", "m")

    def __init__(self, terms=None, m: int = 0):
        self.terms = {k: to_ratfunc(v) for k, v in (terms or {}).items() if v != 0}
        self.m = m

    @classmethod
    def from_t_series(cls, s: TruncSeries, zexp: int, wexp: int, m: int, degree: int):
        """z^zexp w^wexp sum_{d <= degree} s_d t^d."""
        return cls({(zexp - d, wexp + d): s[d] for d in range(min(degree, s.order) + 1)}, m)

    def swap(self) -> "LaurentBi":
        """f(w, z), keeping the (z - w)^m convention."""
        sign = -1 if self.m % 2 else 1
        return LaurentBi({(j, i): c * sign for (i, j), c in self.terms.items()}, self.m)

    def scale(self, c) -> "LaurentBi":
        return LaurentBi({k: v * c for k, v in self.terms.items()}, self.m)

    def diagonal_value(self) -> RatFunc:
        """Coefficient of w^degree after setting z = w."""
        return sum(self.terms.values(), RatFunc(0))

    def degrees(self):
        return {i + j for i, j in self.terms}

    def __eq__(self, other):
        if not isinstance(other, LaurentBi):
            return NotImplemented
        return self.m == other.m and self.terms == other.terms

    __hash__ = None

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (i, j) in sorted(self.terms, key=lambda k: (-k[0], k[1])):
            bits.append("(%s)*z^%d*w^%d" % (self.terms[(i, j)], i, j))
        out = " + ".join(bits)
        return out if self.m == 0 else "[%s] / (z-w)^%d" % (out, self.m)


def _int(x) -> int:
    x = to_ratfunc(x)
    if not x.is_constant():
        raise ValueError("exponent is not a constant: %s" % x)
    v = Fraction(x.constant_value())
    if v.denominator != 1:
        raise ValueError("exponent is not an integer: %s" % v)
    return int(v)


def combine_terms(terms):
    """
    Sum of (coefficient, HomogeneousTerm) pairs with integer exponents and a
    common total degree, returned as (degree, b, S) meaning z^degree t^b S(t).
    """
    parts = []
    for coeff, term in terms:
        if coeff == 0:
            continue
        parts.append((coeff, _int(term.A), _int(term.B), term.g))
    if not parts:
        return None
    degs = {a + b for _, a, b, _ in parts}
    if len(degs) != 1:
        raise ValueError("terms are not of one homogeneity degree")
    b0 = min(b for _, _, b, _ in parts)
    order = min(g.order for *_, g in parts)
    out = None
    for coeff, _, b, g in parts:
        piece = g.truncate(order).shift(b - b0).scale(coeff)
        out = piece if out is None else out + piece
    if isinstance(out, CommonDenSeries):
        out = out.to_series()
    return degs.pop(), b0, out


def terminates(s: TruncSeries, bound: int) -> bool:
    if bound >= s.order:
        raise ValueError("degree bound %d leaves nothing to check at order %d" % (bound, s.order))
    return all(s[d] == 0 for d in range(bound + 1, s.order + 1))


def _to_laurent(combined, m: int, bound: int, what: str) -> LaurentBi:
    """(z - w)^m times z^D t^b S(t), checked to be a Laurent polynomial."""
    degree, b0, s = combined
    p = s.mul_one_minus_t(m)
    if not terminates(p, bound):
        raise LocalityViolation("locality violation: %s does not terminate" % what)
    # z^(D+m) t^b0 p(t)
    return LaurentBi.from_t_series(p, degree + m - b0, b0, m, bound)


# ---- locality of Y(v_1, z) with itself ---------------------------------------

@lru_cache(maxsize=256)
def _pair(kind, n, order):
    spec = correlator_spec_31x(kind, n)
    return _lifted(spec.term(order)), _lifted(spec.bar().term(order))


def _lifted(term):
    # derivative chains stay gcd-free until the final combination
    return HomogeneousTerm(term.A, term.B, CommonDenSeries.from_series(term.g))


def locality_matrix_coeffs(n: int, order: int = DEFAULT_ORDER, x_lower=None):
    """
    (top, middle, bottom) highest-weight matrix coefficients of
    Y(v_1, z) Y(v_1, w) between v_n and v_{n+2}, v_n, v_{n-2}. ``bottom``
    is None for n < 2. ``x_lower`` overrides X_{1,n}^{n-1} (negative control).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    x_upper = structure_constant(1, n + 1, n)
    x_low = structure_constant(1, n, n - 1) if x_lower is None else to_ratfunc(x_lower)
    phi, psi = _pair("PlusPlus", n, order)
    top = _to_laurent(combine_terms([(1, phi.times(psi))]), 0, 0, "top channel")
    phi1, psi1 = _pair("MinusPlus", n, order)
    terms = [(x_upper, phi1.times(psi1))]
    if n >= 1:
        phi2, psi2 = _pair("PlusMinus", n, order)
        terms.append((x_low, phi2.times(psi2)))
    middle = _to_laurent(combine_terms(terms), 0, 2, "middle channel")
    bottom = None
    if n >= 2:
        phi3, psi3 = _pair("MinusMinus", n, order)
        coeff = x_low * structure_constant(1, n - 1, n - 2)
        bottom = _to_laurent(combine_terms([(coeff, phi3.times(psi3))]), 0, 0, "bottom channel")
    return top, middle, bottom


def locality_expected(n: int):
    x_upper = structure_constant(1, n + 1, n)
    top = LaurentBi({(0, 0): 1})
    middle = LaurentBi({(2, 0): x_upper, (1, 1): x_upper * Fraction(-2, n + 1), (0, 2): x_upper})
    bottom = None
    if n >= 2:
        bottom = LaurentBi({(2, 2): structure_constant(1, n, n - 1) * structure_constant(1, n - 1, n - 2)})
    return top, middle, bottom


def locality_check(n: int, order: int = DEFAULT_ORDER) -> bool:
    got = locality_matrix_coeffs(n, order)
    want = locality_expected(n)
    return all(g == w for g, w in zip(got, want)) and got[1] == got[1].swap()


# ---- derivatives phi_{k,l} ------------------------------------------------------

def _phi_ratio(n: int) -> RatFunc:
    return structure_constant(1, n, n - 1) / structure_constant(1, n + 1, n)


def _phi_terms(n, order, transform):
    """[(coefficient, transform(Phi_i) * Psi_i)] for the two middle channels."""
    out = []
    kinds = (("MinusPlus", 1),) if n == 0 else (("MinusPlus", 1), ("PlusMinus", _phi_ratio(n)))
    for kind, coeff in kinds:
        phi, psi = _pair(kind, n, order)
        out.append((coeff, transform(phi).times(psi)))
    return out


@lru_cache(maxsize=512)
def phi_kl(n: int, k: int, l: int, order: int = DEFAULT_ORDER) -> LaurentBi:
    """(z - w)^(k+l) phi_{k,l}(z, w) as a Laurent polynomial."""
    combined = combine_terms(_phi_terms(n, order, lambda t: t.partials(k, l)))
    return _to_laurent(combined, k + l, k + l + 2, "phi_{%d,%d}" % (k, l))


def phi_kl_check(n: int, k: int, l: int, order: int = DEFAULT_ORDER, bound: int = 4) -> bool:
    if k + l > bound:
        raise ValueError("k + l exceeds the configured bound %d" % bound)
    try:
        a = phi_kl(n, k, l, order)
        b = phi_kl(n, l, k, order)
    except LocalityViolation:
        return False
    return a == b.swap()


def binomial_sum(n: int, k: int, l: int, nsum: int, order: int = DEFAULT_ORDER) -> LaurentBi:
    """(z - w)^(k+l) sum_i C(N,i) phi_{k+i, l+N-i} as a Laurent polynomial."""
    combined = combine_terms(_phi_terms(n, order,
                                        lambda t: binom_derivative_term(t, nsum).partials(k, l)))
    return _to_laurent(combined, k + l, k + l + nsum + 2, "binomial sum")


def binomial_sum_direct(n: int, k: int, l: int, nsum: int, order: int = DEFAULT_ORDER):
    """The same sum from individual derivatives (oracle)."""
    terms = []
    for i in range(nsum + 1):
        for coeff, t in _phi_terms(n, order, lambda t, i=i: t.partials(k + i, l + nsum - i)):
            terms.append((coeff * comb(nsum, i), t))
    return _to_laurent(combine_terms(terms), k + l, k + l + nsum + 2, "binomial sum")


def binomial_sum_regularity(n: int, k: int, l: int, nsum: int, order: int = DEFAULT_ORDER) -> bool:
    try:
        binomial_sum(n, k, l, nsum, order)
    except LocalityViolation:
        return False
    return True


# ---- z -> w limits ---------------------------------------------------------------

def _limit_term(kind, lam, mu, nu, l, order):
    spec = correlator_spec_4x(kind, lam, mu, nu)
    return _lifted(spec.term(order)).partials(0, l).times(_lifted(spec.bar().term(order)))


def zw_limit(lam: int, mu: int, nu: int, l: int, order: int = DEFAULT_ORDER, strict: bool = True):
    """
    [(z - w)^l phi^lam(v_nu*, v_mu, 0, 0, l, 0)] at z = w, as the coefficient
    of w^(lam+mu-nu+1). Channels that do not exist carry X = 0 and are
    dropped; with ``strict`` both must exist.
    """
    have_up = spec_4x_admissible("MinusPlus", lam, mu, nu)
    have_down = spec_4x_admissible("PlusMinus", lam, mu, nu)
    if strict and not (have_up and have_down):
        raise ChannelAbsent("channel absent: (%d, %d, %d) lacks a neighbouring channel" % (lam, mu, nu))
    terms = []
    if have_up:
        coeff = structure_constant(1, nu + 1, nu) * structure_constant(lam, mu, nu + 1)
        terms.append((coeff, _limit_term("MinusPlus", lam, mu, nu, l, order)))
    if have_down:
        coeff = structure_constant(lam, mu, nu - 1)
        terms.append((coeff, _limit_term("PlusMinus", lam, mu, nu, l, order)))
    combined = combine_terms(terms)
    if combined is None:
        return RatFunc(0)
    lb = _to_laurent(combined, l, l + 2, "z -> w limit")
    degs = lb.degrees()
    if degs and degs != {lam + mu - nu + 1}:
        raise ValueError("unexpected homogeneity %s" % sorted(degs))
    return lb.diagonal_value()


def zw_limit_expected(lam: int, mu: int, nu: int, l: int) -> RatFunc:
    gamma = RatFunc(lam) / (2 * KAPPA)
    fact = 1
    for i in range(2, l + 1):
        fact *= i
    return structure_constant(lam + 1, mu, nu) * ((-1) ** l * fact) * binomial(gamma, l)


def zw_limit_check(lam: int, mu: int, nu: int, l: int, order: int = DEFAULT_ORDER,
                   strict: bool = True) -> bool:
    try:
        got = zw_limit(lam, mu, nu, l, order, strict)
    except LocalityViolation:
        return False
    return got == zw_limit_expected(lam, mu, nu, l)


def zw_limit_grid(bound: int):
    """Triples where both neighbouring channels exist."""
    return [(a, b, c) for a in range(bound + 1) for b in range(bound + 1) for c in range(bound + 1)
            if spec_4x_admissible("MinusPlus", a, b, c) and spec_4x_admissible("PlusMinus", a, b, c)]


# ---- binomial identity -------------------------------------------------------------

def lemma_l2_check(N: int, k: int, q: int) -> bool:
    """C(N,i) C(k+i,q) = sum_j C(N,j) C(k,q-j) C(N-j,N-i) for 0 <= i <= N."""
    for i in range(N + 1):
        lhs = comb(N, i) * comb(k + i, q)
        rhs = sum(comb(N, j) * comb(k, q - j) * comb(N - j, N - i) for j in range(min(q, N) + 1))
        if lhs != rhs:
            return False
    return True
