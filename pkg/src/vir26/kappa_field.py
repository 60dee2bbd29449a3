"""
Exact scalars.

Rationals are plain ``fractions.Fraction``. The field Q(k) of rational
functions in the deformation parameter k is :class:`RatFunc`, stored as a
gcd-reduced pair of dense polynomials with a monic denominator, so two equal
values always have identical representations.

The polynomial kernels come from python-flint (``fmpq_poly``).
"""

import re
from fractions import Fraction
from functools import lru_cache
from math import lcm

import flint

Rat = Fraction

_Poly = flint.fmpq_poly
_ONE = _Poly([1])
_ZERO = _Poly([])
_K = _Poly([0, 1])


def _fmpq(x):
    if isinstance(x, flint.fmpq):
        return x
    if isinstance(x, int):
        return flint.fmpq(x)
    return flint.fmpq(x.numerator, x.denominator)


def _to_fraction(q):
    return Fraction(int(q.p), int(q.q))


def _normalize(num, den):
    if num.is_zero():
        return _ZERO, _ONE
    if den.degree() > 0:
        g = num.gcd(den)
        if g.degree() > 0:
            num = num // g
            den = den // g
    lc = den.leading_coefficient()
    if lc != 1:
        num = num / lc
        den = den / lc
    return num, den


class RatFunc:
    """
    An element of Q(k).

    Construct from an int, a Fraction, another RatFunc, or a pair of
    coefficient lists (lowest degree first)::

        >>> RatFunc([0, 1])             # k
        >>> RatFunc([1], [0, 1])        # 1/k

    Arithmetic with ints and Fractions is promoted automatically.
    """

    __slots__ = ("num", "den", "_h")

    def __init__(self, num=0, den=None):
        if isinstance(num, RatFunc) and den is None:
            self.num, self.den, self._h = num.num, num.den, num._h
            return
        n = _coerce_poly(num)
        d = _ONE if den is None else _coerce_poly(den)
        if d.is_zero():
            raise ZeroDivisionError("zero divisor")
        self.num, self.den = _normalize(n, d)
        self._h = None

    @classmethod
    def _make(cls, num, den):
        # trusted constructor: (num, den) already canonical
        r = object.__new__(cls)
        r.num = num
        r.den = den
        r._h = None
        return r

    @classmethod
    def _from_polys(cls, num, den):
        if den.is_zero():
            raise ZeroDivisionError("zero divisor")
        n, d = _normalize(num, den)
        return cls._make(n, d)

    @classmethod
    def kappa(cls):
        return cls._make(_K, _ONE)

    # ---- predicates -------------------------------------------------

    def is_zero(self):
        return self.num.is_zero()

    def is_constant(self):
        return self.den.degree() == 0 and self.num.degree() <= 0

    def is_polynomial(self):
        return self.den.degree() == 0

    def __bool__(self):
        return not self.num.is_zero()

    def constant_value(self):
        """The value as a Fraction; raises ValueError if k actually occurs."""
        if not self.is_constant():
            raise ValueError("not a constant: %s" % self)
        if self.num.is_zero():
            return Fraction(0)
        return _to_fraction(self.num.coeffs()[0])

    # ---- arithmetic -------------------------------------------------

    def __add__(self, other):
        o = _lift(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            if self.den.degree() == 0:
                return RatFunc._make(self.num + o.num, _ONE)
            return RatFunc._from_polys(self.num + o.num, self.den)
        return RatFunc._from_polys(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._make(-self.num, self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = _lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = _lift(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = _lift(other)
        if o is NotImplemented:
            return o
        if self.num.is_zero() or o.num.is_zero():
            return RatFunc._make(_ZERO, _ONE)
        if self.den.degree() == 0 and o.den.degree() == 0:
            return RatFunc._make(self.num * o.num, _ONE)
        return RatFunc._from_polys(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("zero divisor")
        return RatFunc._from_polys(self.den, self.num)

    def __truediv__(self, other):
        o = _lift(other)
        if o is NotImplemented:
            return o
        if o.num.is_zero():
            raise ZeroDivisionError("zero divisor")
        return RatFunc._from_polys(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = _lift(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        return RatFunc._make(self.num ** e, self.den ** e)

    # ---- comparison and hashing ------------------------------------

    def __eq__(self, other):
        o = _lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if self._h is None:
            if self.is_constant():
                self._h = hash(self.constant_value())
            else:
                self._h = hash((tuple(str(c) for c in self.num.coeffs()),
                                tuple(str(c) for c in self.den.coeffs())))
        return self._h

    # ---- evaluation and substitution -------------------------------

    def __call__(self, x):
        """Evaluate at a rational point; a vanishing denominator raises."""
        q = _fmpq(x)
        d = self.den(q)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at k = %s" % x)
        return _to_fraction(self.num(q) / d)

    def bar(self):
        """The image under k -> -k."""
        return RatFunc._from_polys(_reflect(self.num), _reflect(self.den))

    def numerator_coeffs(self):
        return [_to_fraction(c) for c in self.num.coeffs()]

    def denominator_coeffs(self):
        return [_to_fraction(c) for c in self.den.coeffs()]

    def sqrt(self):
        """Exact square root in Q(k), or ValueError if there is none."""
        if self.num.is_zero():
            return self
        top = self.num * self.den
        lc = top.leading_coefficient()
        if lc < 0:
            raise ValueError("not a square in Q(k)")
        try:
            r = (top / lc).sqrt()
            s = _Poly([_sqrt_rat(lc)])
        except Exception:
            raise ValueError("not a square in Q(k)") from None
        return RatFunc._from_polys(r * s, self.den)

    # ---- text -------------------------------------------------------

    def __str__(self):
        return ratfunc_text(self)

    def __repr__(self):
        return "RatFunc(%s)" % ratfunc_text(self)


def _sqrt_rat(q):
    p, d = int(q.p), int(q.q)
    from math import isqrt
    rp, rd = isqrt(p), isqrt(d)
    if rp * rp != p or rd * rd != d:
        raise ValueError("not a rational square")
    return flint.fmpq(rp, rd)


def _reflect(p):
    cs = p.coeffs()
    return _Poly([c if i % 2 == 0 else -c for i, c in enumerate(cs)])


def _coerce_poly(x):
    if isinstance(x, _Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return _Poly([_fmpq(x)])
    if isinstance(x, (list, tuple)):
        return _Poly([_fmpq(c) for c in x])
    raise TypeError("cannot build a polynomial from %r" % (x,))


def _lift(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, int):
        return RatFunc._make(_Poly([x]) if x else _ZERO, _ONE)
    if isinstance(x, Fraction):
        return RatFunc._make(_Poly([_fmpq(x)]) if x else _ZERO, _ONE)
    return NotImplemented


def to_ratfunc(x):
    r = _lift(x)
    if r is NotImplemented:
        raise TypeError("cannot convert %r to RatFunc" % (x,))
    return r


def _poly_text(coeffs, var="k"):
    # coeffs are ints, highest degree printed first
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else "%s^%d" % (var, i)
            body = mono if mag == 1 else "%s*%s" % (mag, mono)
        if not terms:
            terms.append(body if c > 0 else "-" + body)
        else:
            terms.append(("+ " if c > 0 else "- ") + body)
    return " ".join(terms) if terms else "0"


def integer_parts(r):
    """
    Integer coefficient lists (lowest degree first) of num and den with
    coprime contents and a positive leading denominator coefficient.
    """
    nc = r.numerator_coeffs()
    dc = r.denominator_coeffs()
    m = 1
    for c in nc + dc:
        m = lcm(m, c.denominator)
    ni = [int(c * m) for c in nc]
    di = [int(c * m) for c in dc]
    from math import gcd
    g = 0
    for c in ni + di:
        g = gcd(g, c)
    if g > 1:
        ni = [c // g for c in ni]
        di = [c // g for c in di]
    return ni, di


def ratfunc_text(r, var="k"):
    """Canonical one-line text: ``num / den`` with integer coefficients."""
    if r.num.is_zero():
        return "0"
    if r.den.degree() == 0:
        cs = r.numerator_coeffs()
        if len(cs) == 1:
            c = cs[0]
            return str(c.numerator) if c.denominator == 1 else "%d/%d" % (c.numerator, c.denominator)
        m = 1
        for c in cs:
            m = lcm(m, c.denominator)
        body = _poly_text([int(c * m) for c in cs], var)
        return body if m == 1 else "(%s)/%d" % (body, m)
    ni, di = integer_parts(r)
    ns = _poly_text(ni, var)
    ds = _poly_text(di, var)
    if sum(1 for c in ni if c) > 1:
        ns = "(%s)" % ns
    if not re.fullmatch(r"\d+|%s(\^\d+)?" % var, ds):
        ds = "(%s)" % ds
    return "%s / %s" % (ns, ds)


KAPPA = RatFunc.kappa()
ONE = RatFunc(1)
ZERO = RatFunc(0)


class WeightData:
    """Lowest weights of the two Virasoro copies at label ``lam`` and the charges."""

    __slots__ = ("lam", "delta", "delta_bar", "c", "c_bar")

    def __init__(self, lam, delta, delta_bar, c, c_bar):
        self.lam = lam
        self.delta = delta
        self.delta_bar = delta_bar
        self.c = c
        self.c_bar = c_bar

    def __repr__(self):
        return "WeightData(lam=%d, delta=%s, delta_bar=%s)" % (self.lam, self.delta, self.delta_bar)


@lru_cache(maxsize=None)
def delta(lam: int) -> RatFunc:
    """lam(lam+2)/(4k) - lam/2."""
    return RatFunc([Fraction(lam * (lam + 2), 4)], [0, 1]) - Fraction(lam, 2)


@lru_cache(maxsize=None)
def delta_bar(lam: int) -> RatFunc:
    return delta(lam).bar()


def central_charge() -> RatFunc:
    # 13 - 6k - 6/k
    return RatFunc([-6, 13, -6], [0, 1])


def central_charge_bar() -> RatFunc:
    return central_charge().bar()


def weight(lam: int) -> WeightData:
    return WeightData(lam, delta(lam), delta_bar(lam), central_charge(), central_charge_bar())


def delta_sum_product(n: int, s: int):
    """
    Both differences that must vanish for the pair of roots
    delta(n+s), delta(n-s):  (sum defect, product defect).
    """
    d = delta
    total = d(n + s) + d(n - s) - 2 * d(n) - d(s) - d(-s)
    prod = d(n + s) * d(n - s) - (d(n) - d(s)) * (d(n) - d(-s))
    return total, prod


def binomial(x, k: int):
    """Generalized binomial x(x-1)...(x-k+1)/k! for any field element x."""
    if k < 0:
        return 0
    out = Fraction(1)
    for i in range(k):
        out = out * (x - i)
    f = 1
    for i in range(2, k + 1):
        f *= i
    return out / f


def falling(x, k: int):
    out = 1
    for i in range(k):
        out = out * (x - i)
    return out
