"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``[PASS]`` or ``[FAIL]`` line (visible even
without ``-s``) before asserting. Every comparison is exact.
"""

import io
import json
import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from permident import identities as ids
from permident.cli import run
from permident.cyclotomic import cyclo_field
from permident.matrix import SquareMatrix, permanent_naive, permanent_ryser
from permident.perms import Permutation, double_factorial

from conftest import distinct_points


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, elapsed, limit=None, detail=""):
        budget = f" (limit {limit:g} s)" if limit is not None else ""
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title} in {elapsed:.2f} s{budget}"
        if detail:
            line += f" - {detail}"
        with capsys.disabled():
            print("\n" + line)

    return emit


def cli(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def cli_records(*argv):
    code, text = cli(*argv)
    return code, [json.loads(line) for line in text.splitlines() if line.strip()]


def all_ok(code, recs):
    return code == 0 and bool(recs) and all(r["status"] == "pass" and r["lhs"] == r["rhs"] for r in recs)


def test_criterion_01_rn(report):
    expected = {
        1: "-10",
        2: "5870/9",
        3: "-436619903/4050",
        4: "204409938157631/6125000",
    }
    t0 = time.perf_counter()
    got = {n: cli("compute", "rn", str(n)) for n in expected}
    elapsed = time.perf_counter() - t0
    ok = all(code == 0 and text.strip() == expected[n] for n, (code, text) in got.items()) and elapsed < 2
    report(1, "r_1..r_4 exact", ok, elapsed, 2)
    assert ok


def test_criterion_02_theorem1(report):
    t0 = time.perf_counter()
    results = [cli_records("verify", "theorem1", "--n", str(n), "--trials", "5", "--seed", "2022") for n in range(1, 5)]
    elapsed = time.perf_counter() - t0
    trials = [len({r["trial"] for r in recs if "params" not in r}) for _, recs in results]
    ok = all(all_ok(c, r) for c, r in results) and min(trials) >= 5 and elapsed < 10
    report(2, "definition = matching sum, n = 1..4, 5 trials", ok, elapsed, 10)
    assert ok


def test_criterion_03_vanishing(report):
    t0 = time.perf_counter()
    results = [cli_records("verify", "vanishing", "--n", str(n), "--trials", "5", "--seed", "3") for n in range(1, 5)]
    elapsed = time.perf_counter() - t0
    ok = all(all_ok(c, r) and all(x["lhs"] == "0" for x in r) for c, r in results)
    report(3, "planted zero annihilates S, n = 1..4", ok, elapsed)
    assert ok


def test_criterion_04_theorem2(report):
    t0 = time.perf_counter()
    values = {}
    ok = True
    for n, want in ((2, "2"), (3, "-16"), (4, "272")):
        code, recs = cli_records("verify", "theorem2", "--n", str(n), "--trials", "2", "--seed", "4")
        samples = [r for r in recs if r["trial"] >= 0]
        ok &= all_ok(code, recs) and len(samples) >= 2 and all(r["lhs"] == want for r in samples)
        values[n] = sorted({r["lhs"] for r in samples})
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 30
    report(4, "s_n = 2, -16, 272 on >= 2 samples", ok, elapsed, 30, f"values {values}")
    assert ok


def test_criterion_05_recurrence(report):
    t0 = time.perf_counter()
    code, recs = cli_records("verify", "recurrence", "--max-n", "20", "--parallel", "1")
    elapsed = time.perf_counter() - t0
    forms = {r["params"]["form"] for r in recs}
    ok = all_ok(code, recs) and max(r["n"] for r in recs) == 20 and forms == {"full", "tail"} and elapsed < 1
    report(5, "both recurrences for n <= 20", ok, elapsed, 1)
    assert ok


def test_criterion_06_perA(report):
    t0 = time.perf_counter()
    code, recs = cli_records("verify", "perA", "--max-n", "6", "--parallel", "1")
    elapsed = time.perf_counter() - t0
    ok = all_ok(code, recs) and sorted(r["n"] for r in recs) == [1, 2, 3, 4, 5, 6] and elapsed < 5
    ok = ok and all(r["lhs"] == "0" for r in recs)
    report(6, "per(A_n) = 0 for n = 1..6", ok, elapsed, 5)
    assert ok


def test_criterion_07_theorem3(report):
    t0 = time.perf_counter()
    results = [cli_records("verify", "theorem3", "--n", str(n), "--trials", "5", "--seed", "7") for n in range(1, 5)]
    elapsed = time.perf_counter() - t0
    ok = elapsed < 10
    for code, recs in results:
        ok &= all_ok(code, recs)
        by_trial = {}
        for r in recs:
            by_trial.setdefault(r["trial"], []).append(r)
        ok &= len(by_trial) >= 5
        # per, (-1)^n det and S all share one value per trial
        ok &= all(len({x["lhs"] for x in rs} | {x["rhs"] for x in rs}) == 1 for rs in by_trial.values())
    report(7, "per = (-1)^n det = S, n = 1..4, 5 trials", ok, elapsed, 10)
    assert ok


def test_criterion_08_cyclotomic(report):
    t0 = time.perf_counter()
    even = cli_records("verify", "cyclo-even", "--max-n", "10")
    odd = cli_records("verify", "cyclo-odd", "--max-n", "13")
    elapsed = time.perf_counter() - t0
    ok = all_ok(*even) and all_ok(*odd) and elapsed < 30
    ok &= sorted(r["n"] for r in even[1]) == [2, 4, 6, 8, 10]
    ok &= sorted(r["n"] for r in odd[1]) == [3, 5, 7, 9, 11, 13]
    for r in even[1]:
        ok &= r["lhs"] == str(double_factorial(r["n"] - 1) ** 2)
    for r in odd[1]:
        ok &= r["lhs"] == str(Fraction(double_factorial(r["n"] - 1) ** 2, r["n"]))
    report(8, "cyclotomic permanents, even n <= 10 and odd n <= 13", ok, elapsed, 30)
    assert ok


def test_criterion_09_cycles_and_derangements(report):
    t0 = time.perf_counter()
    cycles = cli_records("verify", "cycle-lemma", "--max-n", "6", "--trials", "3", "--seed", "9")
    der = cli_records("verify", "derangement", "--max-n", "8")
    elapsed = time.perf_counter() - t0
    ok = all_ok(*cycles) and all_ok(*der) and elapsed < 20
    ok &= {r["n"] for r in cycles[1]} == {3, 4, 5, 6} and all(r["lhs"] == "0" for r in cycles[1])
    ok &= sorted(r["n"] for r in der[1]) == list(range(2, 9))
    report(9, "cycle sums vanish N = 3..6, derangement sums n = 2..8", ok, elapsed, 20)
    assert ok


def test_criterion_10_wang_sun(report):
    t0 = time.perf_counter()
    code, recs = cli_records("verify", "wang-sun", "--max-n", "12")
    elapsed = time.perf_counter() - t0
    sizes = {r["n"] for r in recs}
    odd_minor = {r["n"] for r in recs if r.get("params", {}).get("size") == r["n"] - 1}
    ok = all_ok(code, recs) and sizes == set(range(2, 13)) and odd_minor == {3, 5, 7, 9, 11} and elapsed < 10
    report(10, "determinant products n = 2..12", ok, elapsed, 10)
    assert ok


def test_criterion_11_sun_congruence(report):
    t0 = time.perf_counter()
    small = cli_records("verify", "sun-congruence", "--max-n", "7")
    forced = cli_records("verify", "sun-congruence", "--n", "11", "--force", "--parallel", "1")
    elapsed = time.perf_counter() - t0
    ok = all_ok(*small) and all_ok(*forced) and elapsed < 300
    ok &= sorted(r["n"] for r in small[1]) == [3, 5, 7]
    report(11, "congruence mod p^2 for p = 3, 5, 7 and forced p = 11", ok, elapsed, 300)
    assert ok


def _property_suite() -> bool:
    r = random.Random(20220825)
    for _ in range(50):
        n = r.randint(1, 8)
        m = SquareMatrix([[Fraction(r.randint(-9, 9), r.randint(1, 5)) for _ in range(n)] for _ in range(n)])
        if permanent_ryser(m) != permanent_naive(m):
            return False
    for _ in range(20):
        order = r.randint(2, 12)
        field = cyclo_field(order)
        n = r.randint(1, 6)
        rows = [
            [field.element([Fraction(r.randint(-4, 4), r.randint(1, 3)) for _ in range(field.phi)]) for _ in range(n)]
            for _ in range(n)
        ]
        m = SquareMatrix(rows)
        if permanent_ryser(m) != permanent_naive(m):
            return False
    for _ in range(200):
        size = r.randint(2, 8)
        pts = list(range(1, size + 1))
        r.shuffle(pts)
        cut = r.randint(0, size)

        def perm_on(points):
            img = list(range(1, size + 1))
            moved = list(points)
            r.shuffle(moved)
            for a, b in zip(points, moved):
                img[a - 1] = b
            return Permutation(img)

        sigma, tau = perm_on(pts[:cut]), perm_on(pts[cut:])
        xs = distinct_points(r, size, allow_zero=True)
        if ids.f_weight(sigma * tau, xs) != ids.f_weight(sigma, xs) * ids.f_weight(tau, xs):
            return False
        if ids.f_weight(tau.inverse(), xs) != (-1) ** len(tau.moved) * ids.f_weight(tau, xs):
            return False
    for i in range(50):
        size = 2 * (i % 3 + 1)
        xs = distinct_points(r, size)
        base = ids.S_by_definition(xs)
        shuffled = list(xs)
        r.shuffle(shuffled)
        c = Fraction(r.choice([-5, -1, 2, 7]), r.randint(1, 4))
        if ids.S_by_definition(shuffled) != base or ids.S_by_definition([c * x for x in xs]) != base:
            return False
    for n in (1, 2, 3):
        xs = distinct_points(r, 2 * n)
        if ids.even_cycle_sum(xs) != ids.S_by_definition(xs):
            return False
    return True


def test_criterion_12_properties_and_full_run(report):
    t0 = time.perf_counter()
    props = _property_suite()
    t_props = time.perf_counter() - t0
    t1 = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "permident", "verify", "all"], capture_output=True, text=True, timeout=120
    )
    t_all = time.perf_counter() - t1
    recs = [json.loads(line) for line in proc.stdout.splitlines() if line.strip()]
    full = proc.returncode == 0 and bool(recs) and all(r["status"] == "pass" for r in recs) and t_all < 60
    ok = props and full
    report(
        12,
        "property suite and default 'verify all'",
        ok,
        t_props + t_all,
        None,
        f"properties {'ok' if props else 'FAILED'} ({t_props:.2f} s), verify all exit {proc.returncode}, "
        f"{len(recs)} records in {t_all:.2f} s (limit 60 s)",
    )
    assert ok
