"""
Zhu-bimodule polynomials f_n, g_s in Q(k)[x, y], the determinant A_n that
realizes f_n, and the fusion-rule predicate for the Virasoro minimal-like
family at generic k.
"""

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .kappa_field import RatFunc, KAPPA, delta, to_ratfunc

DEFAULT_DET_BOUND = 6


class BiPoly:
    """Polynomial in commuting x, y; terms map (deg_x, deg_y) -> coefficient."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for k, v in terms.items():
                if v != 0:
                    self.terms[k] = to_ratfunc(v)

    @classmethod
    def const(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def x(cls):
        return cls({(1, 0): 1})

    @classmethod
    def y(cls):
        return cls({(0, 1): 1})

    @classmethod
    def linear(cls, cx, cy, c0):
        return cls({(1, 0): cx, (0, 1): cy, (0, 0): c0})

    def is_zero(self):
        return not self.terms

    def total_degree(self):
        return max((i + j for i, j in self.terms), default=-1)

    def degree_x(self):
        return max((i for i, _ in self.terms), default=-1)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, RatFunc)):
            other = BiPoly.const(other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __add__(self, other):
        if not isinstance(other, BiPoly):
            other = BiPoly.const(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            if k in out:
                s = out[k] + v
                if s == 0:
                    del out[k]
                else:
                    out[k] = s
            else:
                out[k] = v
        r = BiPoly()
        r.terms = out
        return r

    __radd__ = __add__

    def __neg__(self):
        r = BiPoly()
        r.terms = {k: -v for k, v in self.terms.items()}
        return r

    def __sub__(self, other):
        if not isinstance(other, BiPoly):
            other = BiPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            c = to_ratfunc(other)
            if c == 0:
                return BiPoly()
            r = BiPoly()
            r.terms = {k: v * c for k, v in self.terms.items()}
            return r
        out = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in other.terms.items():
                k = (i1 + i2, j1 + j2)
                p = a * b
                out[k] = out[k] + p if k in out else p
        r = BiPoly()
        r.terms = {k: v for k, v in out.items() if v != 0}
        return r

    __rmul__ = __mul__

    def __pow__(self, e):
        out = BiPoly.const(1)
        for _ in range(e):
            out = out * self
        return out

    def leading(self):
        """Lex-leading term (x first, then y)."""
        k = max(self.terms)
        return k, self.terms[k]

    def divexact(self, other):
        """Exact quotient; raises ArithmeticError if other does not divide self."""
        if other.is_zero():
            raise ZeroDivisionError("zero divisor")
        (di, dj), dc = other.leading()
        rem = self
        quot = {}
        while not rem.is_zero():
            (ri, rj), rc = rem.leading()
            if ri < di or rj < dj:
                raise ArithmeticError("inexact BiPoly division")
            k = (ri - di, rj - dj)
            c = rc / dc
            quot[k] = c
            rem = rem - other * BiPoly({k: c})
        return BiPoly(quot)

    def evaluate(self, x, y):
        out = RatFunc(0)
        for (i, j), c in self.terms.items():
            out = out + c * (x ** i) * (y ** j)
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (i, j) in sorted(self.terms, reverse=True):
            mono = "*".join(s for s in (_pow("x", i), _pow("y", j)) if s) or "1"
            bits.append("(%s)*%s" % (self.terms[(i, j)], mono))
        return " + ".join(bits)


def _pow(v, e):
    if e == 0:
        return ""
    return v if e == 1 else "%s^%d" % (v, e)


X = BiPoly.x()
Y = BiPoly.y()


@lru_cache(maxsize=None)
def f_poly(n: int) -> BiPoly:
    """
    Image of the singular vector S_{1,n+1} v under the Zhu isomorphism.

    The composition sum is organized right to left by the suffix sum s, so
    each composition is visited once through a table of partial sums.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    total = n + 1
    h = delta(n)
    # partial[s]: sum over compositions of s of the product of the factors
    # of those parts, with the separator weights 1/(s'(n+1-s')) between them
    partial = [BiPoly.const(1)]
    for s in range(1, total + 1):
        acc = BiPoly()
        for p in range(1, s + 1):
            rest = s - p
            factor = BiPoly.linear(1, -p, -rest - h) * (KAPPA ** (1 - p))
            term = factor * partial[rest]
            if rest > 0:
                term = term * Fraction(1, rest * (total - rest))
            acc = acc + term
        partial.append(acc)
    return partial[total] * (factorial(n) ** 2)


def f_poly_by_compositions(n: int) -> BiPoly:
    """Direct composition sum (slow, used as an oracle)."""
    from .virasoro_verma import compositions
    h = delta(n)
    out = BiPoly()
    for parts in compositions(n + 1):
        r = len(parts)
        den = 1
        head = 0
        for i in range(r - 1):
            head += parts[i]
            den *= head * (n + 1 - head)
        term = BiPoly.const(KAPPA ** (r - n - 1) * Fraction(factorial(n) ** 2, den))
        for j, p in enumerate(parts):
            suffix = sum(parts[j + 1:])
            term = term * BiPoly.linear(1, -p, -suffix - h)
        out = out + term
    return out


@lru_cache(maxsize=None)
def g_poly(s: int) -> BiPoly:
    if s < 0:
        raise ValueError("s must be nonnegative")
    u = X - Y
    if s == 0:
        return u
    return (u - delta(s)) * (u - delta(-s)) - Y * (RatFunc(s * s) / KAPPA)


def factorization_products(n: int) -> BiPoly:
    """g_{n%2} g_{n%2+2} ... g_n."""
    out = BiPoly.const(1)
    for s in range(n % 2, n + 1, 2):
        out = out * g_poly(s)
    return out


def factorization_check(k: int) -> bool:
    return (f_poly(2 * k) == factorization_products(2 * k)
            and f_poly(2 * k + 1) == factorization_products(2 * k + 1))


def matrix_An(n: int):
    """The (n+1)x(n+1) upper Hessenberg matrix whose determinant is f_n."""
    t = X - Y - delta(n)
    size = n + 1
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            if j >= i:
                row.append(t - Y * (j - i) + (j - n))
            elif j == i - 1:
                row.append(BiPoly.const(RatFunc(-i * (n - i + 1)) / KAPPA))
            else:
                row.append(BiPoly())
        rows.append(row)
    return rows


def bareiss_det(mat) -> BiPoly:
    """Fraction-free elimination with exact BiPoly division."""
    a = [list(r) for r in mat]
    size = len(a)
    if size == 0:
        return BiPoly.const(1)
    sign = 1
    prev = BiPoly.const(1)
    for k in range(size - 1):
        if a[k][k].is_zero():
            swap = next((r for r in range(k + 1, size) if not a[r][k].is_zero()), None)
            if swap is None:
                return BiPoly()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        piv = a[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                num = piv * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = num.divexact(prev)
            a[i][k] = BiPoly()
        prev = piv
    d = a[size - 1][size - 1]
    return d if sign > 0 else -d


def hessenberg_det(mat) -> BiPoly:
    """Division-free recurrence for upper Hessenberg determinants (oracle)."""
    size = len(mat)
    dets = [BiPoly.const(1)]
    for k in range(1, size + 1):
        acc = BiPoly()
        sub = BiPoly.const(1)
        for i in range(k, 0, -1):
            term = mat[i - 1][k - 1] * sub * dets[i - 1]
            acc = acc + term if (k - i) % 2 == 0 else acc - term
            if i > 1:
                sub = sub * mat[i - 1][i - 2]
        dets.append(acc)
    return dets[size]


def det_An(n: int, bound: int = DEFAULT_DET_BOUND) -> BiPoly:
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > bound:
        raise ValueError("desk-scale limit: n=%d exceeds bound %d" % (n, bound))
    return bareiss_det(matrix_An(n))


def fusion_admissible(k1: int, k2: int, k3: int) -> bool:
    return (k1 + k2 + k3) % 2 == 0 and abs(k1 - k2) <= k3 <= k1 + k2


def fusion_vanishing_check(k1: int, k2: int, k3: int) -> bool:
    d = delta
    return (f_poly(k1).evaluate(d(k2), d(k3)).is_zero()
            and f_poly(k2).evaluate(d(k1), d(k3)).is_zero()
            and f_poly(k3).evaluate(d(k1), d(k2)).is_zero())


def zhu_image(v) -> BiPoly:
    """
    Image of a Verma-module vector under the Zhu isomorphism, from
    [L_{-p} u] -> (-1)^p (-x + p y + wt(u)) [u].
    """
    h = v.module.h
    out = BiPoly()
    for parts, cf in v.terms.items():
        term = BiPoly.const(cf)
        weight = h
        for p in reversed(parts):
            term = term * BiPoly.linear(-1, p, weight) * ((-1) ** p)
            weight = weight + p
        out = out + term
    return out
