"""
Command-line front end: verification suites with JSON/CSV/LaTeX reports and
rendering of the structure-constant, fusion and weight tables.

    vir26 verify {singular,zhu,fusion,identities,bpz,locality,constants,limits,lemmas,all}
    vir26 table {constants,fusion,weights}

Reports are deterministic for fixed flags. Timings are left out unless
--timings is given, so two runs produce identical bytes.
"""

import argparse
import csv
import io
import json
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import NamedTuple

from .kappa_field import (
    KAPPA, central_charge, central_charge_bar, delta, delta_bar, ratfunc_text, to_ratfunc,
)
from .formal_series import TruncSeries
from . import virasoro_verma as vv
from . import zhu_fusion as zf
from . import hyp_identities as hi
from . import correlators_bpz as cb
from . import voa_locality as vl

SUITES = ("singular", "zhu", "fusion", "identities", "bpz", "locality", "constants", "limits",
          "lemmas")
DEFAULT_SEED = 7
DEFAULT_ORDER = 40
DEFAULT_SAMPLES = 200

# per-suite grid defaults: (max_n, max)
_DEFAULTS = {
    "singular": (8, None),
    "zhu": (8, 5),
    "fusion": (None, 8),
    "identities": (6, 6),
    "bpz": (6, 5),
    "locality": (6, 4),
    "constants": (12, 10),
    "limits": (None, 4),
    "lemmas": (5, 8),
}


class Case(NamedTuple):
    id: str
    check: str
    args: tuple
    params: tuple


def _text(x):
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, Fraction)):
        return str(x)
    try:
        return ratfunc_text(to_ratfunc(x))
    except TypeError:
        return str(x)


def _series_witness(s: TruncSeries):
    i = s.first_nonzero()
    if i is None:
        return None
    return "t^%d: %s" % (i, _text(s[i]))


# ---- checks (module level so worker processes can run them) ----------------------

def _printed_singular(n):
    mod = vv.verma_module(delta(n))
    v = mod.highest_weight_vector()
    k = 1 / KAPPA
    if n == 0:
        return vv.apply_word([-1], v)
    if n == 1:
        return vv.apply_word([-1, -1], v) - vv.apply_word([-2], v).scale(k)
    return (vv.apply_word([-1, -1, -1], v) - vv.apply_word([-1, -2], v).scale(2 * k)
            - vv.apply_word([-2, -1], v).scale(2 * k) + vv.apply_word([-3], v).scale(4 * k * k))


def check_singular(n):
    v = vv.singular_vector(n)
    if not vv.is_singular(v):
        return False, "L1 v = %r" % vv.apply_generator(1, v)
    if n <= 2 and v != _printed_singular(n):
        return False, "differs from the listed form"
    return True, None


def _printed_zhu(n):
    x, y = zf.X, zf.Y
    k = 1 / KAPPA
    if n == 0:
        return x - y
    d = delta(n)
    if n == 1:
        return (x - y - d - 1) * (x - y - d) + (x - 2 * y - d) * k
    return ((x - y - d - 2) * (x - y - d - 1) * (x - y - d)
            + (x - y - d - 2) * (x - 2 * y - d) * (2 * k)
            + (x - 2 * y - d - 1) * (x - y - d) * (2 * k)
            + (x - 3 * y - d) * (4 * k * k))


def check_zhu_example(n):
    return zf.f_poly(n) == _printed_zhu(n), None


def check_factorization(n):
    return zf.f_poly(n) == zf.factorization_products(n), None


def check_det(n):
    return zf.det_An(n) == zf.f_poly(n), None


def check_fusion(k1, k2, k3):
    adm = zf.fusion_admissible(k1, k2, k3)
    van = zf.fusion_vanishing_check(k1, k2, k3)
    return adm == van, "admissible=%s vanishing=%s" % (_text(adm), _text(van))


@lru_cache(maxsize=8)
def _random_params(samples, seed, order):
    return tuple(hi.random_triples(samples, seed, order))


def _identity_params(family, args, seed, samples, order):
    if family == "three":
        return hi.family_three(args[0])
    if family == "four":
        return hi.family_four(*args)
    return _random_params(samples, seed, order)[args[0]]


def check_identity(id, family, args, seed, samples, order):
    params = _identity_params(family, args, seed, samples, order)
    res = hi.identity_residual(hi.IdentityCase(id, params, order))
    return res.is_zero(), _series_witness(res)


def check_bpz_31(kind, n, variable, order):
    spec = cb.correlator_spec_31x(kind, n)
    res = cb.bpz_residual(spec, cb.bpz_operator_31(variable, n), order)
    if not res.is_zero():
        return False, _series_witness(res)
    row = cb.KINDS.index(kind) + 1
    got = cb.reduction_coefficients(spec.alpha, spec.beta, cb.bpz_operator_31(variable, n))
    return got == cb.reduction_table(row, n, variable), None


def check_bpz_4x(kind, lam, mu, nu, order):
    spec = cb.correlator_spec_4x(kind, lam, mu, nu)
    res = cb.bpz_residual(spec, cb.bpz_operator_43(lam, mu), order)
    return res.is_zero(), _series_witness(res)


def check_bpz_control(kind, n, order):
    """Passes when the perturbed spec is rejected."""
    spec = cb.perturb_gamma(cb.correlator_spec_31x(kind, n))
    res = cb.bpz_residual(spec, cb.bpz_operator_31("z", n), order)
    return not res.is_zero(), _series_witness(res)


def check_locality(n, order):
    got = vl.locality_matrix_coeffs(n, order)
    ok = vl.locality_check(n, order)
    return ok, None if ok else repr(got[1])


def check_locality_control(n, order):
    try:
        vl.locality_matrix_coeffs(n, order, x_lower=2 * vl.structure_constant(1, n, n - 1))
    except vl.LocalityViolation:
        return True, None
    return False, "perturbed constant still terminates"


def check_phi(n, k, l, order):
    return vl.phi_kl_check(n, k, l, order), None


def check_binomial_sum(n, k, l, nsum, order):
    return vl.binomial_sum_regularity(n, k, l, nsum, order), None


def check_recursion(lam, mu, nu):
    return vl.recursion_check(lam, mu, nu), None


def check_ratio(lam, mu, nu):
    return vl.ratio_check(lam, mu, nu), None


def check_x_one(n):
    got = vl.structure_constant(1, n, n - 1)
    return got == vl.x_one_closed(n), _text(got)


def check_symmetry(lam, mu, nu):
    return vl.structure_constant(lam, mu, nu) == vl.structure_constant(mu, lam, nu), None


def check_limit(lam, mu, nu, l, order, strict):
    got = vl.zw_limit(lam, mu, nu, l, order, strict)
    return got == vl.zw_limit_expected(lam, mu, nu, l), _text(got)


def check_binom_expand(N, seed):
    rng = random.Random(seed * 1000 + N)
    h = TruncSeries([Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(12)])
    lam = Fraction(rng.randint(-20, 20), rng.randint(1, 7))
    ok = cb.binom_derivative_expand(lam, h, N) == cb.binom_derivative_bruteforce(lam, h, N)
    ok_k = (cb.binom_derivative_expand(KAPPA + lam, h, N)
            == cb.binom_derivative_bruteforce(KAPPA + lam, h, N))
    return ok and ok_k, None


def check_lemma_l2(N, k, q):
    return vl.lemma_l2_check(N, k, q), None


def check_lemma_l1(k, q):
    return vv.lemma_l1_check(k, q), None


CHECKS = {name[len("check_"):]: fn for name, fn in globals().items() if name.startswith("check_")}


def _execute(case: Case):
    start = time.perf_counter()
    try:
        ok, witness = CHECKS[case.check](*case.args)
        status = "pass" if ok else "fail"
    except Exception as exc:  # a crash is a failed case, with the error as witness
        status, witness = "fail", "%s: %s" % (type(exc).__name__, exc)
    return status, witness, (time.perf_counter() - start) * 1000.0


# ---- suite definitions ----------------------------------------------------------

def _p(**kw):
    return tuple((k, _text(v)) for k, v in kw.items())


def _limits(suite, opts):
    max_n, grid = _DEFAULTS[suite]
    if opts.max_n is not None:
        max_n = opts.max_n
    if opts.max is not None:
        grid = opts.max
    return max_n, grid


def cases_singular(opts):
    max_n, _ = _limits("singular", opts)
    return [Case("singular:n=%d" % n, "singular", (n,), _p(n=n)) for n in range(max_n + 1)]


def cases_zhu(opts):
    max_n, det_max = _limits("zhu", opts)
    out = [Case("zhu:example:n=%d" % n, "zhu_example", (n,), _p(n=n)) for n in range(3)]
    out += [Case("zhu:factorization:n=%d" % n, "factorization", (n,), _p(n=n))
            for n in range(max_n + 1)]
    out += [Case("zhu:det:n=%d" % n, "det", (n,), _p(n=n)) for n in range(det_max + 1)]
    return out


def cases_fusion(opts):
    _, m = _limits("fusion", opts)
    return [Case("fusion:%d,%d,%d" % t, "fusion", t, _p(k1=t[0], k2=t[1], k3=t[2]))
            for t in ((a, b, c) for a in range(m + 1) for b in range(m + 1) for c in range(m + 1))]


def cases_identities(opts):
    max_n, m = _limits("identities", opts)
    ids = hi.IDENTITY_IDS if opts.id is None else (opts.id,)
    base = (opts.seed, opts.samples, opts.order)
    # identities innermost, so the five checks of one triple share its product bank
    groups = [("three", (n,), "n=%d" % n, dict(n=n)) for n in range(max_n + 1)]
    groups += [("four", t, "%d,%d,%d" % t, dict(lam=t[0], mu=t[1], nu=t[2]))
               for t in hi.family_four_grid(m)]
    groups += [("random", (i,), "%03d" % i, dict(sample=i)) for i in range(opts.samples)]
    out = []
    for family, args, label, params in groups:
        for id in ids:
            out.append(Case("identities:%s:%s:%s" % (family, label, id), "identity",
                            (id, family, args) + base, _p(id=id, **params)))
    return out


def cases_bpz(opts):
    max_n, m = _limits("bpz", opts)
    out = []
    for n in range(max_n + 1):
        for kind in cb.channel_kinds_31x(n):
            for var in ("z", "w"):
                out.append(Case("bpz:%s:n=%d:%s" % (kind, n, var), "bpz_31", (kind, n, var, opts.order),
                                _p(kind=kind, n=n, variable=var)))
    for lam in range(m + 1):
        for mu in range(m + 1):
            for nu in range(m + 1):
                for kind in ("MinusPlus", "PlusMinus"):
                    if cb.spec_4x_admissible(kind, lam, mu, nu):
                        out.append(Case("bpz:%s:%d,%d,%d" % (kind, lam, mu, nu), "bpz_4x",
                                        (kind, lam, mu, nu, opts.order),
                                        _p(kind=kind, lam=lam, mu=mu, nu=nu)))
    out.append(Case("bpz:control:MinusPlus:n=2", "bpz_control", ("MinusPlus", 2, opts.order),
                    _p(kind="MinusPlus", n=2, gamma_shift=1)))
    return out


def cases_locality(opts):
    max_n, phi_n = _limits("locality", opts)
    out = [Case("locality:n=%d" % n, "locality", (n, opts.order), _p(n=n)) for n in range(max_n + 1)]
    out += [Case("locality:control:n=%d" % n, "locality_control", (n, opts.order), _p(n=n, factor=2))
            for n in (1, 3)]
    for n in range(phi_n + 1):
        for s in range(5):
            for k in range(s + 1):
                out.append(Case("locality:phi:n=%d:%d,%d" % (n, k, s - k), "phi",
                                (n, k, s - k, opts.order), _p(n=n, k=k, l=s - k)))
    for n in range(phi_n + 1):
        for s in range(3):
            for k in range(s + 1):
                for nsum in range(4):
                    out.append(Case("locality:binomial:n=%d:%d,%d:N=%d" % (n, k, s - k, nsum),
                                    "binomial_sum", (n, k, s - k, nsum, opts.order),
                                    _p(n=n, k=k, l=s - k, N=nsum)))
    return out


def cases_constants(opts):
    max_n, m = _limits("constants", opts)
    out = []
    for a in range(m + 1):
        for b in range(m + 1):
            for c in range(m + 1):
                out.append(Case("constants:recursion:%d,%d,%d" % (a, b, c), "recursion", (a, b, c),
                                _p(lam=a, mu=b, nu=c)))
    rm = min(m, 8)
    for a in range(rm + 1):
        for b in range(rm + 1):
            for c in range(rm + 1):
                if vl.structure_constant(1, c + 1, c) * vl.structure_constant(a, b, c + 1) != 0:
                    out.append(Case("constants:ratio:%d,%d,%d" % (a, b, c), "ratio", (a, b, c),
                                    _p(lam=a, mu=b, nu=c)))
    out += [Case("constants:x_one:n=%d" % n, "x_one", (n,), _p(n=n)) for n in range(1, max_n + 1)]
    for a in range(max_n + 1):
        for b in range(a + 1, max_n + 1):
            for c in range(max_n + 1):
                out.append(Case("constants:symmetry:%d,%d,%d" % (a, b, c), "symmetry", (a, b, c),
                                _p(lam=a, mu=b, nu=c)))
    return out


LIMIT_EXTRA = ((1, 1, 1), (1, 2, 1), (2, 1, 1), (1, 2, 2), (2, 1, 2))


def cases_limits(opts):
    _, m = _limits("limits", opts)
    out = [Case("limits:%d,%d,%d:l=0" % t, "limit", t + (0, opts.order, True),
                _p(lam=t[0], mu=t[1], nu=t[2], l=0)) for t in vl.zw_limit_grid(m)]
    for t in LIMIT_EXTRA:
        for l in (1, 2):
            out.append(Case("limits:%d,%d,%d:l=%d" % (t + (l,)), "limit", t + (l, opts.order, False),
                            _p(lam=t[0], mu=t[1], nu=t[2], l=l)))
    return out


def cases_lemmas(opts):
    max_n, m = _limits("lemmas", opts)
    out = [Case("lemmas:binomial_derivative:N=%d" % N, "binom_expand", (N, opts.seed), _p(N=N))
           for N in range(max_n + 1)]
    for N in range(m + 1):
        for k in range(m + 1):
            for q in range(m + 1):
                out.append(Case("lemmas:l2:%d,%d,%d" % (N, k, q), "lemma_l2", (N, k, q),
                                _p(N=N, k=k, q=q)))
    for k in range(7):
        for q in range(7):
            out.append(Case("lemmas:l1:%d,%d" % (k, q), "lemma_l1", (k, q), _p(k=k, q=q)))
    return out


SUITE_CASES = {name: globals()["cases_" + name] for name in SUITES}


def run_suite(opts):
    """Build and run the cases; returns the report as a dict."""
    names = SUITES if opts.suite == "all" else (opts.suite,)
    cases = []
    for name in names:
        cases.extend(SUITE_CASES[name](opts))
    if opts.jobs and opts.jobs > 1:
        with ProcessPoolExecutor(max_workers=opts.jobs) as pool:
            results = list(pool.map(_execute, cases, chunksize=4))
    else:
        results = [_execute(c) for c in cases]
    random_params = None
    rows = []
    for case, (status, witness, ms) in zip(cases, results):
        params = dict(case.params)
        if case.check == "identity" and case.args[1] == "random":
            if random_params is None:
                random_params = _random_params(opts.samples, opts.seed, opts.order)
            p = random_params[case.args[2][0]]
            params.update(a=_text(p.a), b=_text(p.b), c=_text(p.c))
        row = {"id": case.id, "params": params, "status": status, "witness": witness}
        if opts.timings:
            row["elapsed-ms"] = "%.1f" % ms
        rows.append(row)
    return {"suite": opts.suite, "seed": str(opts.seed), "order": str(opts.order), "cases": rows}


def report_exit_code(report) -> int:
    return 1 if any(c["status"] == "fail" for c in report["cases"]) else 0


# ---- rendering ------------------------------------------------------------------

def _csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _latex_escape(s):
    return "".join({"_": r"\_", "&": r"\&", "%": r"\%", "#": r"\#", "^": r"\^{}"}.get(ch, ch)
                   for ch in str(s))


def _latex(header, rows):
    lines = [r"\begin{tabular}{%s}" % ("l" * len(header)), r"\hline",
             " & ".join(_latex_escape(h) for h in header) + r" \\", r"\hline"]
    for r in rows:
        lines.append(" & ".join("$%s$" % _latex_escape(x) if x != "" else "" for x in r) + r" \\")
    lines += [r"\hline", r"\end{tabular}", ""]
    return "\n".join(lines)


def _render_table(header, rows, fmt):
    if fmt == "csv":
        return _csv(header, rows)
    if fmt == "latex":
        return _latex(header, rows)
    return json.dumps([dict(zip(header, r)) for r in rows], indent=2, ensure_ascii=False) + "\n"


def render_report(report, fmt):
    if fmt == "json":
        return json.dumps(report, indent=2, ensure_ascii=False) + "\n"
    header = ["id", "status", "params", "witness"]
    rows = [[c["id"], c["status"], " ".join("%s=%s" % kv for kv in c["params"].items()),
             c["witness"] or ""] for c in report["cases"]]
    if fmt == "csv":
        return _csv(header, rows)
    return _latex(header, rows)


def factored_constant(lam, mu, nu):
    """X as 'prefactor * 1/(product of (j^2 - k^2))', e.g. '1/2 * 1/(4 - k^2)'."""
    if not zf.fusion_admissible(lam, mu, nu):
        return "0"
    ell = (lam + mu - nu) // 2
    top = (lam + mu + nu + 2) // 2
    pre = Fraction(comb(lam, ell) * comb(mu, ell), comb(top, ell))
    factors = ["%d - k^2" % (j * j) for j in range(nu + 2, top + 1)]
    if not factors:
        return str(pre)
    tail = "1/(%s)" % factors[0] if len(factors) == 1 else "1/(%s)" % "*".join(
        "(%s)" % f for f in factors)
    return tail if pre == 1 else "%s * %s" % (pre, tail)


def emit_constants(bound: int, fmt: str = "json") -> str:
    header = ["lam", "mu", "nu", "ell", "value", "factored"]
    rows = []
    for a in range(bound + 1):
        for b in range(bound + 1):
            for c in range(bound + 1):
                adm = zf.fusion_admissible(a, b, c)
                ell = str((a + b - c) // 2) if adm else ""
                rows.append([str(a), str(b), str(c), ell, ratfunc_text(vl.structure_constant(a, b, c)),
                             factored_constant(a, b, c)])
    return _render_table(header, rows, fmt)


def emit_fusion(bound: int, fmt: str = "json") -> str:
    header = ["k1", "k2", "k3", "admissible", "vanishing"]
    rows = []
    for a in range(bound + 1):
        for b in range(bound + 1):
            for c in range(bound + 1):
                rows.append([str(a), str(b), str(c), _text(zf.fusion_admissible(a, b, c)),
                             _text(zf.fusion_vanishing_check(a, b, c))])
    return _render_table(header, rows, fmt)


def emit_weights(bound: int, fmt: str = "json") -> str:
    header = ["lam", "delta", "delta_bar", "c", "c_bar"]
    c, cbar = ratfunc_text(central_charge()), ratfunc_text(central_charge_bar())
    rows = [[str(l), ratfunc_text(delta(l)), ratfunc_text(delta_bar(l)), c, cbar]
            for l in range(bound + 1)]
    return _render_table(header, rows, fmt)


TABLES = {"constants": emit_constants, "fusion": emit_fusion, "weights": emit_weights}


# ---- entry point ----------------------------------------------------------------

def _nonneg(s):
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def _positive(s):
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser():
    p = argparse.ArgumentParser(prog="vir26", description="Exact verification suites and tables.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=SUITES + ("all",))
    v.add_argument("--max-n", type=_nonneg, default=None, help="label bound for n-indexed cases")
    v.add_argument("--max", type=_nonneg, default=None, help="grid bound")
    v.add_argument("--order", type=_positive, default=DEFAULT_ORDER, help="series truncation order")
    v.add_argument("--samples", type=_nonneg, default=DEFAULT_SAMPLES, help="random triples per identity")
    v.add_argument("--seed", type=int, default=DEFAULT_SEED)
    v.add_argument("--id", choices=hi.IDENTITY_IDS, default=None, help="restrict the identities suite")
    v.add_argument("--format", choices=("json", "csv", "latex"), default="json")
    v.add_argument("--out", default=None, help="write the report here instead of stdout")
    v.add_argument("--jobs", type=_positive, default=1)
    v.add_argument("--timings", action="store_true", help="record elapsed-ms per case")

    t = sub.add_parser("table", help="render a table")
    t.add_argument("name", choices=tuple(TABLES))
    t.add_argument("--max", type=_nonneg, default=6)
    t.add_argument("--format", choices=("json", "csv", "latex"), default="json")
    t.add_argument("--out", default=None)
    return p


def _write(text, path):
    if path is None:
        sys.stdout.buffer.write(text.encode("utf-8"))
        sys.stdout.flush()
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def main(argv=None) -> int:
    opts = build_parser().parse_args(argv)
    if opts.command == "table":
        _write(TABLES[opts.name](opts.max, opts.format), opts.out)
        return 0
    report = run_suite(opts)
    _write(render_report(report, opts.format), opts.out)
    counts = {}
    for c in report["cases"]:
        counts[c["status"]] = counts.get(c["status"], 0) + 1
    summary = ", ".join("%d %s" % (counts[s], s) for s in ("pass", "fail", "skipped") if s in counts)
    print("%s: %s" % (opts.suite, summary or "no cases"), file=sys.stderr)
    return report_exit_code(report)


if __name__ == "__main__":
    sys.exit(main())
