"""
Closed-form four-point correlators and the second-order BPZ operators they
solve.

A correlator is z^alpha w^beta (1-t)^gamma 2F1(a, b, c; t) with t = w/z.
Because the operators are homogeneous in (z, w), substituting such a
function leaves a common factor z^(alpha+beta-2) times a power series in t,
and the residual check works with that series alone. Poles at z = w are
expanded in the domain |z| > |w|, where 1/(z-w) = z^-1 (1-t)^-1.
"""

from dataclasses import dataclass, replace
from fractions import Fraction
from math import comb
from typing import Optional

from .kappa_field import RatFunc, KAPPA, delta, delta_bar, to_ratfunc
from .formal_series import HypergeomParams, TruncSeries, binom_series, gauss_2f1, pochhammer
from .zhu_fusion import fusion_admissible

KINDS = ("PlusPlus", "MinusPlus", "PlusMinus", "MinusMinus")
DEFAULT_ORDER = 40


class ChannelAbsent(ValueError):
    pass


@dataclass(frozen=True)
class CorrelatorSpec:
    """
    z^alpha w^beta (1-t)^gamma 2F1(hyp; t). ``hyp`` is None for the channels
    whose hypergeometric factor is the constant 1. ``target`` and ``sources``
    are the weight labels of the channel; ``barred`` marks the copy with
    central charge 26 - c.
    """
    kind: str
    alpha: RatFunc
    beta: RatFunc
    gamma: RatFunc
    hyp: Optional[HypergeomParams]
    target: int
    sources: tuple
    barred: bool = False

    def series(self, order: int) -> TruncSeries:
        pref = binom_series(self.gamma, order)
        if self.hyp is None:
            return pref
        return pref * gauss_2f1(self.hyp, order)

    def term(self, order: int) -> "HomogeneousTerm":
        return HomogeneousTerm(self.alpha, self.beta, self.series(order))

    def bar(self) -> "CorrelatorSpec":
        """The same channel for the other Virasoro copy (k -> -k)."""
        hyp = None if self.hyp is None else HypergeomParams(*(x.bar() for x in self.hyp))
        return replace(self, alpha=self.alpha.bar(), beta=self.beta.bar(),
                       gamma=self.gamma.bar(), hyp=hyp, barred=not self.barred)

    def weight_defect(self) -> RatFunc:
        """alpha + beta - (wt(target) - sum wt(sources)); zero for a valid channel."""
        d = delta_bar if self.barred else delta
        return self.alpha + self.beta - (d(self.target) - sum((d(s) for s in self.sources), RatFunc(0)))


def _k(x):
    return to_ratfunc(x)


def correlator_spec_31x(kind: str, n: int) -> CorrelatorSpec:
    """Two Delta(1) fields between highest-weight vectors of weight labels n and m."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if kind not in KINDS:
        raise ValueError("unknown kind %r" % kind)
    if (n == 0 and kind in ("PlusMinus", "MinusMinus")) or (n == 1 and kind == "MinusMinus"):
        raise ChannelAbsent("channel absent: %s at n=%d" % (kind, n))
    k = KAPPA
    gamma = 1 / (2 * k)
    if kind == "PlusPlus":
        return CorrelatorSpec(kind, _k(n + 1) / (2 * k), _k(n) / (2 * k), gamma, None, n + 2, (1, 1, n))
    if kind == "MinusPlus":
        hyp = HypergeomParams(1 / k, (n + 2) / k - 1, _k(n + 1) / k)
        return CorrelatorSpec(kind, 1 - _k(n + 3) / (2 * k), _k(n) / (2 * k), gamma, hyp, n, (1, 1, n))
    if kind == "PlusMinus":
        hyp = HypergeomParams(1 - n / k, 1 / k, 2 - _k(n + 1) / k)
        return CorrelatorSpec(kind, _k(n - 1) / (2 * k), 1 - _k(n + 2) / (2 * k), gamma, hyp, n, (1, 1, n))
    return CorrelatorSpec(kind, 1 - _k(n + 1) / (2 * k), 1 - _k(n + 2) / (2 * k), gamma, None,
                          n - 2, (1, 1, n))


def channel_kinds_31x(n: int):
    return KINDS[:2] if n == 0 else KINDS[:3] if n == 1 else KINDS


def spec_4x_admissible(kind: str, lam: int, mu: int, nu: int) -> bool:
    if min(lam, mu, nu) < 0:
        return False
    if kind == "MinusPlus":
        return fusion_admissible(lam, mu, nu + 1)
    if kind == "PlusMinus":
        return nu >= 1 and fusion_admissible(lam, mu, nu - 1)
    raise ValueError("unknown kind %r" % kind)


def correlator_spec_4x(kind: str, lam: int, mu: int, nu: int, strict: bool = True) -> CorrelatorSpec:
    """
    Delta(1) at z and Delta(lam) at w between labels mu and nu, through the
    intermediate label nu+1 (MinusPlus) or nu-1 (PlusMinus). With
    ``strict=False`` the exponents are produced even when fusion rules
    forbid the channel.
    """
    if kind not in ("MinusPlus", "PlusMinus"):
        raise ValueError("unknown kind %r" % kind)
    if strict and not spec_4x_admissible(kind, lam, mu, nu):
        raise ChannelAbsent("channel absent: %s at (%d, %d, %d)" % (kind, lam, mu, nu))
    k = KAPPA
    d = delta
    gamma = _k(lam) / (2 * k)
    a = _k(lam - mu + nu + 1) / (2 * k)
    b = _k(lam + mu + nu + 3) / (2 * k) - 1
    c = _k(nu + 1) / k
    if kind == "MinusPlus":
        return CorrelatorSpec(kind, 1 - _k(nu + 3) / (2 * k), d(nu + 1) - d(lam) - d(mu), gamma,
                              HypergeomParams(a, b, c), nu, (1, lam, mu))
    return CorrelatorSpec(kind, _k(nu - 1) / (2 * k), d(nu - 1) - d(lam) - d(mu), gamma,
                          HypergeomParams(a - c + 1, b - c + 1, 2 - c), nu, (1, lam, mu))


def perturb_gamma(spec: CorrelatorSpec, shift=1) -> CorrelatorSpec:
    return replace(spec, gamma=spec.gamma + shift)


# ---- operators ----------------------------------------------------------

@dataclass(frozen=True)
class BpzOperator:
    """
    d_v^2 Phi = s * (first-order part + pole_weight/(z-w)^2 + origin_weight/v^2) Phi,
    where v is the variable carrying the second derivative and s = 1/k
    (or -1/k on the barred copy).
    """
    pole_weight: RatFunc
    origin_weight: RatFunc
    variable: str
    scale: RatFunc

    def bar(self) -> "BpzOperator":
        return BpzOperator(self.pole_weight.bar(), self.origin_weight.bar(), self.variable,
                           self.scale.bar())


def bpz_operator_31(variable: str, n: int, barred: bool = False) -> BpzOperator:
    if variable not in ("z", "w"):
        raise ValueError("variable must be 'z' or 'w'")
    op = BpzOperator(delta(1), delta(n), variable, 1 / KAPPA)
    return op.bar() if barred else op


def bpz_operator_43(lam: int, mu: int, barred: bool = False) -> BpzOperator:
    op = BpzOperator(delta(lam), delta(mu), "z", 1 / KAPPA)
    return op.bar() if barred else op


def bpz_operator_for(spec: CorrelatorSpec, variable: str = "z") -> BpzOperator:
    """The operator a spec is meant to solve: labels (1, 1, n) or (1, lam, mu)."""
    _, lam, mu = spec.sources
    if variable == "w" and lam != 1:
        raise ValueError("the w-equation is only available when both fields have label 1")
    op = BpzOperator(delta(lam), delta(mu), variable, 1 / KAPPA)
    return op.bar() if spec.barred else op


def _div_one_minus_t(s: TruncSeries) -> TruncSeries:
    """s / (1-t): running sums, i.e. the product with the geometric series."""
    out = []
    acc = 0
    for c in s.coeffs:
        acc = acc + c
        out.append(acc)
    return TruncSeries(out)


def bpz_residual(spec: CorrelatorSpec, op: BpzOperator, order: int = DEFAULT_ORDER) -> TruncSeries:
    """
    LHS - RHS of the operator applied to the spec, divided by
    z^(alpha+beta-2); valid through t^(order-2).
    """
    al, be = spec.alpha, spec.beta
    f = spec.series(order)
    m = order - 2
    f0 = f.truncate(m)
    tf1 = f.derivative(1).truncate(m).shift(1)
    t2f2 = f.derivative(2).shift(2)
    s = op.scale
    if op.variable == "z":
        lhs = f0.scale(al * (al - 1)) - tf1.scale(2 * (al - 1)) + t2f2
        rhs = (_div_one_minus_t(f0.scale(be) + tf1)
               - (f0.scale(al) - tf1)
               + f0.scale(op.origin_weight)
               + _div_one_minus_t(_div_one_minus_t(f0)).scale(op.pole_weight))
    elif op.variable == "w":
        lhs = f0.scale(be * (be - 1)) + tf1.scale(2 * be) + t2f2
        rhs = (-_div_one_minus_t((f0.scale(al) - tf1).shift(1))
               - (f0.scale(be) + tf1)
               + f0.scale(op.origin_weight)
               + _div_one_minus_t(_div_one_minus_t(f0.shift(2))).scale(op.pole_weight))
    else:
        raise ValueError("variable must be 'z' or 'w'")
    return lhs - rhs.scale(s)


# ---- reduction to the hypergeometric equation -----------------------------

def _padd(p, q):
    n = max(len(p), len(q))
    return [(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)]


def _pscale(p, c):
    return [x * c for x in p]


def _pmul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        for j, y in enumerate(q):
            out[i + j] = out[i + j] + x * y
    return out


def _pdiv_linear(p, root):
    """Exact division by (t - root); raises ArithmeticError otherwise."""
    if not p:
        return []
    out = []
    acc = 0
    for c in reversed(p):
        acc = acc * root + c
        out.append(acc)
    rem = out.pop()
    if rem != 0:
        raise ArithmeticError("not hypergeometric: inexact division")
    return list(reversed(out))


def _ptrim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


_T = [0, 1]
_OMT = [1, -1]


def _operator_polys(alpha, beta, op: BpzOperator):
    """Coefficients (P2, P1, P0) of f'', f', f after clearing (1-t)^2."""
    s = op.scale
    omt2 = _pmul(_OMT, _OMT)
    t2 = _pmul(_T, _T)
    p2 = _pmul(t2, omt2)
    if op.variable == "z":
        p1 = _padd(_pscale(_pmul(_T, omt2), -2 * (alpha - 1)),
                   _pscale(_padd(_pmul(_T, _OMT), _pmul(_T, omt2)), -s))
        p0 = _padd(_pscale(omt2, alpha * (alpha - 1)),
                   _pscale(_padd(_padd(_pscale(_OMT, beta), _pscale(omt2, op.origin_weight - alpha)),
                                 [op.pole_weight]), -s))
    else:
        p1 = _padd(_pscale(_pmul(_T, omt2), 2 * beta),
                   _pscale(_padd(_pmul(t2, _OMT), _pscale(_pmul(_T, omt2), -1)), -s))
        p0 = _padd(_pscale(omt2, beta * (beta - 1)),
                   _pscale(_padd(_padd(_pscale(_pmul(_T, _OMT), -alpha),
                                       _pscale(omt2, op.origin_weight - beta)),
                                 _pscale(t2, op.pole_weight)), -s))
    return p2, p1, p0


def reduction_coefficients(alpha, beta, op: BpzOperator, gamma=None):
    """
    Substitute f = (1-t)^gamma g and return (C, D, E) with
    t(1-t) g'' + (C - D t) g' + E g = 0. Raises ArithmeticError when the
    reduced equation is not of that shape.
    """
    gamma = 1 / (2 * KAPPA) if gamma is None else to_ratfunc(gamma)
    alpha, beta = to_ratfunc(alpha), to_ratfunc(beta)
    p2, p1, p0 = _operator_polys(alpha, beta, op)
    omt2 = _pmul(_OMT, _OMT)
    q2 = _pmul(p2, omt2)
    q1 = _padd(_pmul(p1, omt2), _pscale(_pmul(p2, _OMT), -2 * gamma))
    q0 = _padd(_padd(_pmul(p0, omt2), _pscale(_pmul(p1, _OMT), -gamma)),
               _pscale(p2, gamma * (gamma - 1)))
    reduced = []
    for q in (q2, q1, q0):
        # divide by t (1-t)^3; (1-t) = -(t-1)
        q = _pdiv_linear(_ptrim(q), 0)
        for _ in range(3):
            q = _pscale(_pdiv_linear(q, 1), -1)
        reduced.append(_ptrim(q))
    r2, r1, r0 = reduced
    if _ptrim(r2) != _ptrim([0, 1, -1]) or len(r1) > 2 or len(r0) > 1:
        raise ArithmeticError("not hypergeometric: unexpected shape")
    r1 = r1 + [0] * (2 - len(r1))
    r0 = r0 + [0] * (1 - len(r0))
    return to_ratfunc(r1[0]), to_ratfunc(-r1[1]), to_ratfunc(r0[0])


def hypergeom_reduction(alpha, beta, op: BpzOperator, gamma=None) -> HypergeomParams:
    """
    Parameters (a, b, c) of the Gauss equation satisfied by g, where
    a + b + 1 = D and ab = -E. The pair (a, b) is returned in a fixed
    order; it is only defined up to swapping.
    """
    C, D, E = reduction_coefficients(alpha, beta, op, gamma)
    s = D - 1
    root = (s * s + 4 * E).sqrt()
    a, b = (s + root) / 2, (s - root) / 2
    if str(a) > str(b):
        a, b = b, a
    return HypergeomParams(a, b, C)


def reduction_table(row: int, n: int, variable: str = "z"):
    """
    Expected (C, D, E) for the exponent pair ``row`` (1..4, in the order
    PlusPlus, MinusPlus, PlusMinus, MinusMinus).
    """
    k = KAPPA
    N = _k(n)
    z_rows = {
        1: (2 - (N + 3) / k, 2 - (N + 1) / k, RatFunc(0)),
        2: ((N + 1) / k, (N + 3) / k, (1 - (N + 2) / k) / k),
        3: (2 - (N + 1) / k, 2 - (N - 1) / k, (N / k - 1) / k),
        4: ((N - 1) / k, (N + 1) / k, RatFunc(0)),
    }
    if variable == "z":
        return z_rows[row]
    w_rows = dict(z_rows)
    w_rows[1] = ((N + 1) / k, (N + 3) / k, RatFunc(0))
    w_rows[4] = (2 - (N + 1) / k, 2 - (N - 1) / k, RatFunc(0))
    return w_rows[row]


# ---- derivatives of homogeneous functions ----------------------------------

@dataclass(frozen=True)
class HomogeneousTerm:
    """z^A w^B g(t) with t = w/z and g a truncated series."""
    A: object
    B: object
    g: TruncSeries

    def dz(self) -> "HomogeneousTerm":
        g1 = self.g.derivative(1)
        g0 = self.g.truncate(g1.order)
        return HomogeneousTerm(self.A - 1, self.B, g0.scale(self.A) - g1.shift(1))

    def dw(self) -> "HomogeneousTerm":
        g1 = self.g.derivative(1)
        g0 = self.g.truncate(g1.order)
        return HomogeneousTerm(self.A, self.B - 1, g0.scale(self.B) + g1.shift(1))

    def partials(self, i: int, j: int) -> "HomogeneousTerm":
        out = self
        for _ in range(j):
            out = out.dw()
        for _ in range(i):
            out = out.dz()
        return out

    def times(self, other: "HomogeneousTerm") -> "HomogeneousTerm":
        return HomogeneousTerm(self.A + other.A, self.B + other.B, self.g * other.g)

    def scale(self, c) -> "HomogeneousTerm":
        return HomogeneousTerm(self.A, self.B, self.g.scale(c))

    def degree(self):
        return self.A + self.B


def inner_z_expand(lam, h: TruncSeries, n: int) -> TruncSeries:
    """
    d_z^n [z^lam h(t)] = z^(lam-n) * sum_i (-1)^i C(n,i) (lam-n+1)_(n-i) t^i h^(i)(t).
    """
    if n > h.order:
        raise ValueError("derivative order exceeds series order")
    m = h.order - n
    out = None
    for i in range(n + 1):
        coeff = (-1) ** i * comb(n, i) * pochhammer(lam - n + 1, n - i)
        piece = h.derivative(i).truncate(m).shift(i).scale(coeff)
        out = piece if out is None else out + piece
    return out


def binom_derivative_expand(lam, h: TruncSeries, N: int) -> TruncSeries:
    """
    S(t) with sum_i C(N,i) d_z^i d_w^(N-i) [z^lam h(t)] = z^(lam-N) S(t),
    S = sum_j C(N,j) (lam-N+1)_j (1-t)^(N-j) h^(N-j)(t).
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    if N > h.order:
        raise ValueError("N exceeds series order")
    m = h.order - N
    out = None
    for j in range(N + 1):
        coeff = comb(N, j) * pochhammer(lam - N + 1, j)
        piece = h.derivative(N - j).truncate(m).mul_one_minus_t(N - j).scale(coeff)
        out = piece if out is None else out + piece
    return out


def binom_derivative_bruteforce(lam, h: TruncSeries, N: int) -> TruncSeries:
    """
    Same sum by repeated single derivatives (oracle). Clearing the t-powers
    costs another N terms, so the result is valid through t^(order - 2N).
    """
    if N < 0 or 2 * N > h.order:
        raise ValueError("need 0 <= 2N <= series order")
    base = HomogeneousTerm(lam, 0, h)
    out = None
    for i in range(N + 1):
        t = base.partials(i, N - i)
        # z^(lam-i) w^-(N-i) g = z^(lam-N) t^-(N-i) g; g is divisible by t^(N-i)
        g = t.g
        k = N - i
        if any(g[c] != 0 for c in range(min(k, g.order + 1))):
            raise ArithmeticError("unexpected pole at t = 0")
        g = TruncSeries(g.coeffs[k:] or [g[0] * 0], g.order - k) if k else g
        piece = g.truncate(h.order - 2 * N).scale(comb(N, i))
        out = piece if out is None else out + piece
    return out


def binom_derivative_term(term: HomogeneousTerm, N: int) -> HomogeneousTerm:
    """
    sum_i C(N,i) d_z^i d_w^(N-i) of z^A w^B g(t), returned as z^A w^(B-N) S(t)
    with S = sum_j C(N,j) (A+B-N+1)_j t^j (1-t)^(N-j) S_(N-j) and
    S_m = sum_i C(m,i) (B)_i^falling t^(m-i) g^(m-i).
    """
    A, B, g = term.A, term.B, term.g
    if N > g.order:
        raise ValueError("N exceeds series order")
    m_out = g.order - N
    lam = A + B
    out = None
    for j in range(N + 1):
        m = N - j
        inner = None
        fall = 1
        for i in range(m + 1):
            piece = g.derivative(m - i).truncate(m_out).shift(m - i).scale(comb(m, i) * fall)
            inner = piece if inner is None else inner + piece
            fall = fall * (B - i)
        coeff = comb(N, j) * pochhammer(lam - N + 1, j)
        piece = inner.mul_one_minus_t(m).shift(j).scale(coeff)
        out = piece if out is None else out + piece
    return HomogeneousTerm(A, B - N, out)


def homogeneity_integer(phi: CorrelatorSpec, psi: CorrelatorSpec):
    """Total degree of the paired product, as an integer (None if not integral)."""
    total = phi.alpha + phi.beta + psi.alpha + psi.beta
    if not total.is_constant():
        return None
    v = Fraction(total.constant_value())
    return int(v) if v.denominator == 1 else None
