"""
Truncated power series in t over Q or Q(k).

A series of order N keeps the coefficients of t^0..t^N. Mixing orders
truncates to the smaller one. Coefficients are Fractions (over Q) or
RatFuncs (over Q(k)); products go through flint polynomial kernels, the
rest is plain Python.
"""

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import NamedTuple

import flint

from .kappa_field import RatFunc, to_ratfunc, _fmpq, _to_fraction

_Poly = flint.fmpq_poly


class ParameterPole(ArithmeticError):
    """A Pochhammer or coefficient denominator vanished."""


class HypergeomParams(NamedTuple):
    a: object
    b: object
    c: object

    def __str__(self):
        return "(%s, %s, %s)" % (self.a, self.b, self.c)


def _is_k(x):
    return isinstance(x, RatFunc)


def _zero_like(x):
    return RatFunc(0) if _is_k(x) else Fraction(0)


class TruncSeries:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs, order=None):
        cs = list(coeffs)
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("negative order")
        if len(cs) > order + 1:
            cs = cs[: order + 1]
        elif len(cs) < order + 1:
            z = _zero_like(cs[0]) if cs else Fraction(0)
            cs = cs + [z] * (order + 1 - len(cs))
        self.coeffs = cs

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def one(cls, order, over_k=False):
        z = RatFunc(0) if over_k else Fraction(0)
        return cls([z + 1] + [z] * order)

    @classmethod
    def zero(cls, order, over_k=False):
        z = RatFunc(0) if over_k else Fraction(0)
        return cls([z] * (order + 1))

    @classmethod
    def monomial(cls, k, order, coeff=1):
        cs = [Fraction(0)] * (order + 1)
        if k <= order:
            cs[k] = coeff
        return cls(cs)

    def over_k(self):
        return any(_is_k(c) for c in self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order):
        return TruncSeries(self.coeffs[: order + 1], min(order, self.order))

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def first_nonzero(self):
        """Index of the first nonzero coefficient, or None."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return None

    def last_nonzero(self):
        for i in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[i] != 0:
                return i
        return None

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return all(self.coeffs[i] == other.coeffs[i] for i in range(n + 1))

    __hash__ = None

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            other = TruncSeries([other], self.order)
        n = min(self.order, other.order)
        return TruncSeries([self.coeffs[i] + other.coeffs[i] for i in range(n + 1)])

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, TruncSeries):
            other = TruncSeries([other], self.order)
        n = min(self.order, other.order)
        return TruncSeries([self.coeffs[i] - other.coeffs[i] for i in range(n + 1)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            return series_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        if c == 0:
            z = _zero_like(c) if _is_k(c) else _zero_like(self.coeffs[0])
            return TruncSeries([z] * len(self.coeffs))
        if c == 1:
            return self
        return TruncSeries([c * x for x in self.coeffs])

    def shift(self, k):
        """Multiply by t^k, keeping the order."""
        if k == 0:
            return self
        z = _zero_like(self.coeffs[0])
        return TruncSeries([z] * k + self.coeffs[: len(self.coeffs) - k], self.order)

    def derivative(self, k=1):
        return series_derivative(self, k)

    def integral(self):
        z = _zero_like(self.coeffs[0])
        return TruncSeries([z] + [c / (i + 1) for i, c in enumerate(self.coeffs[:-1])])

    def mul_one_minus_t(self, m=1):
        """Multiply by (1-t)^m (m >= 0)."""
        cs = self.coeffs
        for _ in range(m):
            cs = [cs[0]] + [cs[i] - cs[i - 1] for i in range(1, len(cs))]
        return TruncSeries(cs)

    def evaluate_polynomial(self, x):
        """Sum of the kept coefficients times x^i (meaningful for polynomials)."""
        out = 0
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def __repr__(self):
        shown = ", ".join(str(c) for c in self.coeffs[:6])
        more = ", ..." if len(self.coeffs) > 6 else ""
        return "TruncSeries(order=%d, [%s%s])" % (self.order, shown, more)


# ---- products -------------------------------------------------------

def _mul_q(x, y, n):
    px = _Poly([_fmpq(c) for c in x[: n + 1]])
    py = _Poly([_fmpq(c) for c in y[: n + 1]])
    pz = px.mul_low(py, n + 1)
    cs = [_to_fraction(c) for c in pz.coeffs()]
    return cs + [Fraction(0)] * (n + 1 - len(cs))


def _common_den(cs):
    d = None
    for c in cs:
        cd = c.den
        if d is None:
            d = cd
        elif cd != d and cd.degree() > 0:
            if not (d % cd).is_zero():
                d = d * cd // d.gcd(cd)
    return d


def _pack(polys, block, n):
    # integer Kronecker packing: returns (packed fmpz_poly, common integer denominator)
    den = flint.fmpz(1)
    for p in polys:
        d = p.denom()
        if d != 1:
            den = den * d // den.gcd(d)
    slots = [0] * (block * (n + 1))
    for i, p in enumerate(polys):
        cs = (p * den).numer().coeffs() if den != 1 or p.denom() != 1 else p.numer().coeffs()
        slots[i * block:i * block + len(cs)] = cs
    return flint.fmpz_poly(slots), den


def _kron_mul(px, py, n):
    # product of two numerator lists, coefficients 0..n
    degx = max(p.degree() for p in px)
    degy = max(p.degree() for p in py)
    if degx < 0 or degy < 0:
        return [_Poly([]) for _ in range(n + 1)]
    block = degx + degy + 1
    zx, ex = _pack(px, block, n)
    zy, ey = _pack(py, block, n)
    cs = zx.mul_low(zy, block * (n + 1)).coeffs()
    scale = ex * ey
    out = []
    for i in range(n + 1):
        blk = cs[i * block:(i + 1) * block]
        out.append(_Poly(blk) / scale if blk else _Poly([]))
    return out


class CommonDenSeries:
    """
    A series over Q(k) written as (1/den) * sum num[i] t^i with one shared
    denominator and no per-coefficient reduction. Products and sums stay
    gcd-free; ``to_series`` reduces each coefficient once at the end.
    """

    __slots__ = ("nums", "den")

    def __init__(self, nums, den):
        self.nums = nums
        self.den = den

    @classmethod
    def from_series(cls, s):
        cs = [to_ratfunc(c) for c in s.coeffs]
        d = _common_den(cs)
        return cls([c.num if c.den == d else c.num * (d // c.den) for c in cs], d)

    @property
    def order(self):
        return len(self.nums) - 1

    def to_series(self):
        return TruncSeries([RatFunc._from_polys(p, self.den) for p in self.nums])

    def is_zero(self):
        return all(p.is_zero() for p in self.nums)

    def __mul__(self, other):
        n = min(self.order, other.order)
        return CommonDenSeries(_kron_mul(self.nums[: n + 1], other.nums[: n + 1], n),
                               self.den * other.den)

    def scale(self, c):
        c = to_ratfunc(c)
        return CommonDenSeries([p * c.num for p in self.nums], self.den * c.den)

    def shift(self, k):
        if k == 0:
            return self
        z = _Poly([])
        return CommonDenSeries([z] * k + self.nums[: len(self.nums) - k], self.den)

    def truncate(self, order):
        return CommonDenSeries(self.nums[: order + 1], self.den)

    def derivative(self, k=1):
        if k > self.order:
            raise ValueError("derivative order %d exceeds series order %d" % (k, self.order))
        out = []
        for i in range(k, len(self.nums)):
            f = 1
            for j in range(i - k + 1, i + 1):
                f *= j
            out.append(self.nums[i] * f)
        return CommonDenSeries(out, self.den)

    def mul_one_minus_t(self, m=1):
        cs = self.nums
        for _ in range(m):
            cs = [cs[0]] + [cs[i] - cs[i - 1] for i in range(1, len(cs))]
        return CommonDenSeries(cs, self.den)

    def _combine(self, other, sign):
        n = min(self.order, other.order)
        if self.den == other.den:
            return CommonDenSeries([self.nums[i] + sign * other.nums[i] for i in range(n + 1)],
                                   self.den)
        g = self.den.gcd(other.den)
        fa = other.den // g
        fb = self.den // g
        return CommonDenSeries(
            [self.nums[i] * fa + sign * (other.nums[i] * fb) for i in range(n + 1)],
            fa * self.den)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)


def _mul_k(x, y, n):
    cx = CommonDenSeries.from_series(TruncSeries(x[: n + 1]))
    cy = CommonDenSeries.from_series(TruncSeries(y[: n + 1]))
    return (cx * cy).to_series().coeffs


def _mul_generic(x, y, n):
    out = []
    for k in range(n + 1):
        s = 0
        for i in range(k + 1):
            s = s + x[i] * y[k - i]
        out.append(s)
    return out


def series_mul(s1: TruncSeries, s2: TruncSeries) -> TruncSeries:
    n = min(s1.order, s2.order)
    if s1.over_k() or s2.over_k():
        return TruncSeries(_mul_k(s1.coeffs, s2.coeffs, n))
    try:
        return TruncSeries(_mul_q(s1.coeffs, s2.coeffs, n))
    except (TypeError, AttributeError):
        return TruncSeries(_mul_generic(s1.coeffs, s2.coeffs, n))


def series_arith(s1: TruncSeries, s2: TruncSeries, op: str) -> TruncSeries:
    if op == "add":
        return s1 + s2
    if op == "sub":
        return s1 - s2
    if op == "mul":
        return series_mul(s1, s2)
    raise ValueError("unknown series operation %r" % op)


def series_derivative(s: TruncSeries, k: int = 1) -> TruncSeries:
    if k < 0:
        raise ValueError("negative derivative order")
    if k > s.order:
        raise ValueError("derivative order %d exceeds series order %d" % (k, s.order))
    if k == 0:
        return s
    cs = s.coeffs
    out = []
    for i in range(k, len(cs)):
        f = 1
        for j in range(i - k + 1, i + 1):
            f *= j
        out.append(cs[i] * f)
    return TruncSeries(out)


# ---- special series ---------------------------------------------------

def pochhammer(x, n: int):
    """Rising factorial (x)_n."""
    out = 1
    for i in range(n):
        out = out * (x + i)
    return out


def _one_like(*xs):
    for x in xs:
        if _is_k(x):
            return RatFunc(1)
    return Fraction(1)


@lru_cache(maxsize=4096)
def _gauss_cached(a, b, c, order):
    coef = _one_like(a, b, c)
    out = [coef]
    for n in range(order):
        den = c + n
        if den == 0:
            raise ParameterPole("parameter pole: (c)_%d vanishes" % (n + 1))
        coef = coef * (a + n) * (b + n) / (den * (n + 1))
        out.append(coef)
    return tuple(out)


def gauss_2f1(p: HypergeomParams, order: int) -> TruncSeries:
    """sum_n (a)_n (b)_n / (n! (c)_n) t^n up to t^order."""
    a, b, c = p
    return TruncSeries(list(_gauss_cached(a, b, c, order)))


def binom_series(gamma, order: int) -> TruncSeries:
    """(1 - t)^gamma."""
    coef = _one_like(gamma)
    out = [coef]
    for k in range(order):
        coef = coef * (k - gamma) / (k + 1)
        out.append(coef)
    return TruncSeries(out)


def geom_pole_series(m: int, order: int) -> TruncSeries:
    """(1 - t)^(-m) for a positive integer m."""
    if m < 1:
        raise ValueError("pole order must be positive")
    return TruncSeries([Fraction(comb(m - 1 + k, k)) for k in range(order + 1)])


def hypergeometric_ode_residual(p: HypergeomParams, f: TruncSeries) -> TruncSeries:
    """t(1-t)F'' + [c - (a+b+1)t]F' - abF, valid to order N-2."""
    a, b, c = p
    n = f.order - 2
    d1 = f.derivative(1).truncate(n)
    d2 = f.derivative(2)
    f0 = f.truncate(n)
    t_d2 = d2.shift(1) - d2.shift(2)
    term1 = d1.scale(c) - d1.shift(1).scale(a + b + 1)
    return t_d2.truncate(n) + term1 - f0.scale(a * b)
