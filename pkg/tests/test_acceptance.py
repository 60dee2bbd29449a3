"""
Acceptance suite: runs ``vir26 verify all --seed 7`` twice in a subprocess
and grades each criterion from the report. One PASS/FAIL line is printed
per criterion. Also runnable directly: ``python tests/test_acceptance.py``.
"""
import json
import subprocess
import sys

import pytest

pytestmark = pytest.mark.slow

COMMAND = [sys.executable, "-m", "vir26", "verify", "all", "--seed", "7"]

# criterion -> (title, case-id prefixes, expected case count, ids that must be present)
CRITERIA = {
    1: ("singular vectors", ("singular:",), 9, ["singular:n=0", "singular:n=8"]),
    2: ("Zhu polynomials", ("zhu:",), 18,
        ["zhu:example:n=2", "zhu:factorization:n=8", "zhu:det:n=5"]),
    3: ("fusion equivalence", ("fusion:",), 729, ["fusion:0,0,0", "fusion:8,8,8"]),
    4: ("hypergeometric identities", ("identities:",), 1380,
        ["identities:three:n=6:H52", "identities:four:6,6,5:H1", "identities:random:199:H3"]),
    5: ("BPZ residuals", ("bpz:",), 180,
        ["bpz:MinusMinus:n=6:w", "bpz:PlusMinus:5,5,5", "bpz:control:MinusPlus:n=2"]),
    6: ("locality polynomials", ("locality:n=", "locality:control:"), 9,
        ["locality:n=0", "locality:n=6", "locality:control:n=3"]),
    7: ("phi regularity and symmetry", ("locality:phi:", "locality:binomial:"), 195,
        ["locality:phi:n=4:4,0", "locality:binomial:n=4:2,0:N=3"]),
    8: ("structure constants", ("constants:",), 2583,
        ["constants:recursion:10,10,10", "constants:ratio:8,8,7", "constants:x_one:n=12",
         "constants:symmetry:11,12,12"]),
    9: ("z -> w limits", ("limits:",), 33,
        ["limits:1,1,1:l=0", "limits:1,1,1:l=2", "limits:1,2,1:l=1", "limits:2,1,1:l=2"]),
    10: ("combinatorial lemmas", ("lemmas:",), 784,
         ["lemmas:binomial_derivative:N=5", "lemmas:l2:8,8,8", "lemmas:l1:6,6"]),
}


def run_reports():
    first = subprocess.run(COMMAND, capture_output=True)
    second = subprocess.run(COMMAND, capture_output=True)
    return first, second


def grade(criterion, first, second):
    """(passed, detail) for one criterion."""
    if criterion == 11:
        same = first.stdout == second.stdout
        return same, "byte-identical" if same else "reports differ"
    title, prefixes, count, required = CRITERIA[criterion]
    cases = [c for c in json.loads(first.stdout)["cases"] if c["id"].startswith(prefixes)]
    ids = {c["id"] for c in cases}
    failed = [c["id"] for c in cases if c["status"] != "pass"]
    missing = [i for i in required if i not in ids]
    if failed:
        return False, "%d failing, e.g. %s" % (len(failed), failed[0])
    if missing:
        return False, "missing %s" % missing
    if len(cases) != count:
        return False, "%d cases, expected %d" % (len(cases), count)
    return True, "%d cases" % len(cases)


def _line(criterion, ok, detail):
    title = "determinism" if criterion == 11 else CRITERIA[criterion][0]
    return "criterion %d (%s): %s  [%s]" % (criterion, title, "PASS" if ok else "FAIL", detail)


@pytest.fixture(scope="module")
def reports():
    return run_reports()


def test_report_runs(reports):
    first, _ = reports
    assert first.stdout, first.stderr.decode()


@pytest.mark.parametrize("criterion", list(range(1, 12)), ids=lambda c: "criterion_%d" % c)
def test_criterion(criterion, reports, capsys):
    ok, detail = grade(criterion, *reports)
    with capsys.disabled():
        print("\n" + _line(criterion, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    first, second = run_reports()
    results = [grade(c, first, second) for c in range(1, 12)]
    for c, (ok, detail) in enumerate(results, start=1):
        print(_line(c, ok, detail))
    sys.exit(0 if all(ok for ok, _ in results) else 1)
