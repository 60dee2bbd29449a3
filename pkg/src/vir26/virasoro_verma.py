"""
Verma modules over the Virasoro algebra.

Vectors are finite combinations of normal-ordered lowering monomials
L_{-p1} L_{-p2} ... L_{-pr} v  with p1 >= p2 >= ... >= pr >= 1, stored as a
dict from the tuple of parts to a nonzero coefficient. Acting by L_m is done
by commuting it to the right one step at a time with

    [L_m, L_n] = (m - n) L_{m+n} + delta_{m+n,0} (m^3 - m)/12 c,

memoized per module on (m, monomial).
"""

from fractions import Fraction
from math import comb, factorial

from .kappa_field import RatFunc, KAPPA, central_charge, delta


class VermaModule:
    """M(h, c). Holds the straightening cache shared by its vectors."""

    def __init__(self, h, c):
        self.h = h
        self.c = c
        self._cache = {}

    def highest_weight_vector(self):
        return VirVector(self, {(): _one(self.h)})

    def monomial(self, parts, coeff=None):
        parts = tuple(parts)
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError("parts must be nonincreasing")
        return VirVector(self, {parts: _one(self.h) if coeff is None else coeff})

    def act(self, m, parts):
        """L_m applied to one normal-ordered monomial, as {parts: coeff}."""
        key = (m, parts)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        out = self._act(m, parts)
        self._cache[key] = out
        return out

    def _act(self, m, parts):
        if not parts:
            if m > 0:
                return {}
            if m == 0:
                return {(): self.h}
            return {(-m,): _one(self.h)}
        p1 = parts[0]
        rest = parts[1:]
        if m < 0 and -m >= p1:
            return {(-m,) + parts: _one(self.h)}
        out = {}
        # L_{-p1} (L_m rest)
        for mono, cf in self.act(m, rest).items():
            for mono2, cf2 in self.act(-p1, mono).items():
                _accumulate(out, mono2, cf * cf2)
        # (m + p1) L_{m - p1} rest
        if m + p1 != 0:
            for mono, cf in self.act(m - p1, rest).items():
                _accumulate(out, mono, cf * (m + p1))
        # central term when m = p1
        if m == p1:
            central = self.c * Fraction(m ** 3 - m, 12)
            if central != 0:
                _accumulate(out, rest, central)
        return {k: v for k, v in out.items() if v != 0}


def _one(h):
    return RatFunc(1) if isinstance(h, RatFunc) else Fraction(1)


def _accumulate(d, key, val):
    if key in d:
        d[key] = d[key] + val
    else:
        d[key] = val


class VirVector:
    __slots__ = ("module", "terms")

    def __init__(self, module, terms):
        self.module = module
        self.terms = {k: v for k, v in terms.items() if v != 0}

    def degrees(self):
        return {sum(p) for p in self.terms}

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            _accumulate(out, k, v)
        return VirVector(self.module, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return VirVector(self.module, {k: v * c for k, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, VirVector):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def coefficient(self, parts):
        return self.terms.get(tuple(parts), 0)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for parts in sorted(self.terms, reverse=True):
            mono = "".join("L(-%d)" % p for p in parts) or "1"
            bits.append("(%s)*%s" % (self.terms[parts], mono))
        return " + ".join(bits) + " v"


def apply_generator(m: int, v: VirVector) -> VirVector:
    mod = v.module
    out = {}
    for parts, cf in v.terms.items():
        for mono, cf2 in mod.act(m, parts).items():
            _accumulate(out, mono, cf * cf2)
    return VirVector(mod, out)


def apply_word(word, v: VirVector) -> VirVector:
    """Apply L_{w1} L_{w2} ... L_{wk} (rightmost first)."""
    for m in reversed(word):
        v = apply_generator(m, v)
    return v


def compositions(total: int):
    """Ordered compositions of ``total`` in lexicographic order."""
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for tail in compositions(total - first):
            yield (first,) + tail


def singular_coefficient(parts, n: int):
    """n!^2 / prod_{i<r} (p1+..+pi)(p_{i+1}+..+pr) * (-1/k)^(n+1-r)."""
    r = len(parts)
    denom = 1
    head = 0
    for i in range(r - 1):
        head += parts[i]
        denom *= head * (n + 1 - head)
    scal = Fraction(factorial(n) ** 2, denom)
    return (-1 / KAPPA) ** (n + 1 - r) * scal


_modules = {}


def verma_module(h, c=None):
    c = central_charge() if c is None else c
    key = (h, c)
    mod = _modules.get(key)
    if mod is None:
        mod = _modules[key] = VermaModule(h, c)
    return mod


def singular_vector(n: int) -> VirVector:
    """The null vector at degree n+1 in M(delta(n), c), normal ordered."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    mod = verma_module(delta(n))
    total = VirVector(mod, {})
    vac = mod.highest_weight_vector()
    for parts in compositions(n + 1):
        term = apply_word([-p for p in parts], vac)
        total = total + term.scale(singular_coefficient(parts, n))
    return total


def is_singular(v: VirVector) -> bool:
    if not v.is_homogeneous():
        raise ValueError("is_singular needs a homogeneous vector")
    return apply_generator(1, v).is_zero() and apply_generator(2, v).is_zero()


def l_minus_one_power(k: int, mod: VermaModule) -> VirVector:
    return mod.monomial((1,) * k)


def lemma_l1_check(k: int, q: int) -> bool:
    """L_{q-1} L_{-1}^k v = q! [C(k,q-1) h + C(k,q)] L_{-1}^{k-q+1} v at h = delta(1)."""
    mod = verma_module(delta(1))
    lhs = apply_generator(q - 1, l_minus_one_power(k, mod))
    if k - q + 1 < 0:
        return lhs.is_zero()
    cb = comb(k, q - 1) if q >= 1 else 0
    scal = factorial(q) * (delta(1) * cb + comb(k, q))
    rhs = l_minus_one_power(k - q + 1, mod).scale(scal)
    return lhs == rhs
