"""Command-line front end.

    permident verify <identity|all> [--n K | --max-n K] [--trials T] [--seed S]
                     [--parallel W] [--force] [--output json|human]
    permident compute <rn|tangent|bernoulli|S|s> [N | --points p1,p2,...]
    permident bench <rn|cyclo> --sizes a..b [--reps R]

Exit status: 0 when every check passes, 1 when any fails, 2 on usage or
size-guard errors. Diagnostics go to stderr, controlled by PERMIDENT_LOG
(off, info, debug).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import statistics
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Callable, Optional, Sequence

from . import identities as ids
from .builders import build_C, build_M
from .errors import PermidentError
from .matrix import permanent_naive, permanent_ryser
from .perms import bernoulli, double_factorial, tangent_numbers
from .rational import format_rat, parse_rat_list

log = logging.getLogger("permident")

GRAMMAR = """usage:
  permident verify <theorem1|vanishing|theorem2|recurrence|perA|theorem3|even-cycle|cyclo-even|
                    cyclo-odd|cycle-lemma|derangement|wang-sun|sun-congruence|all>
                   [--n K | --max-n K] [--trials T] [--seed S] [--parallel W] [--force]
                   [--output json|human]
  permident compute <rn|tangent|bernoulli|S|s> [N | --points p1,p2,...]
  permident bench <rn|cyclo> --sizes a..b [--reps R]"""


class Check:
    """How one CLI verify target maps onto a library verifier."""

    def __init__(self, func: Callable, kind: str, sizes: Callable[[int], list[int]], default_max: int):
        self.func = func
        self.kind = kind  # "trial", "single" or "upto"
        self.sizes = sizes
        self.default_max = default_max


def _from(lo: int, step: int = 1) -> Callable[[int], list[int]]:
    return lambda hi: list(range(lo, hi + 1, step))


def _odd_from(lo: int) -> Callable[[int], list[int]]:
    return lambda hi: [n for n in range(lo, hi + 1) if n % 2]


def _primes(hi: int) -> list[int]:
    return [p for p in range(3, hi + 1) if ids._is_prime(p)]


CHECKS: dict[str, Check] = {
    "theorem1": Check(ids.verify_theorem1, "trial", _from(1), 3),
    "vanishing": Check(ids.verify_vanishing, "trial", _from(1), 3),
    "theorem2": Check(ids.verify_theorem2, "trial", _from(2), 3),
    "recurrence": Check(ids.verify_recurrence, "upto", _from(1), 20),
    "perA": Check(ids.verify_perA, "upto", _from(1), 6),
    "theorem3": Check(ids.verify_theorem3_per_det, "trial", _from(1), 3),
    "even-cycle": Check(ids.verify_even_cycle_expansion, "trial", _from(1), 3),
    "cyclo-even": Check(ids.verify_cyclotomic_even, "single", _from(2, 2), 10),
    "cyclo-odd": Check(ids.verify_cyclotomic_odd, "single", _odd_from(3), 9),
    "cycle-lemma": Check(ids.verify_cycle_lemma, "trial", _from(3), 6),
    "derangement": Check(ids.verify_derangement_sums, "single", _from(2), 8),
    "wang-sun": Check(ids.verify_wang_sun_det, "single", _from(2), 10),
    "sun-congruence": Check(ids.verify_sun_congruence, "single", _primes, 7),
}

# --max-n on "verify all" caps only the sampled-point checks
SCALED_BY_MAX_N = ("theorem1", "vanishing", "theorem2", "theorem3", "even-cycle")


def _tasks(name: str, args) -> list[tuple[str, dict]]:
    check = CHECKS[name]
    if args.n is not None:
        sizes = [args.n]
    else:
        hi = check.default_max
        if args.max_n is not None:
            if args.identity != "all":
                hi = args.max_n
            elif name in SCALED_BY_MAX_N:
                hi = min(hi, args.max_n)
        sizes = check.sizes(hi)
        if check.kind == "upto":
            sizes = [hi]
    out = []
    for size in sizes:
        kw: dict = {"force": args.force}
        if check.kind == "trial":
            kw.update(trials=args.trials, seed=args.seed)
        out.append((name, {**kw, **_size_kw(check, size)}))
    return out


def _size_kw(check: Check, size: int) -> dict:
    func = check.func
    if func is ids.verify_cycle_lemma:
        return {"N": size}
    if func is ids.verify_sun_congruence:
        return {"p": size}
    if check.kind == "upto":
        return {"n_max": size}
    return {"n": size}


def _run_task(task: tuple[str, dict]) -> list[ids.VerdictRecord]:
    name, kw = task
    log.info("running %s %s", name, kw)
    return CHECKS[name].func(**kw)


def _execute(tasks: list[tuple[str, dict]], workers: int) -> list[ids.VerdictRecord]:
    if workers <= 1 or len(tasks) <= 1:
        batches = [_run_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(_run_task, tasks))
    return [r for batch in batches for r in batch]


def cmd_verify(args, out) -> int:
    names = list(CHECKS) if args.identity == "all" else [args.identity]
    if args.identity == "all" and args.n is not None:
        raise _Usage("--n cannot be combined with 'verify all'")
    tasks = [t for name in names for t in _tasks(name, args)]
    records = _execute(tasks, args.parallel)
    for rec in records:
        print(rec.to_json() if args.output == "json" else rec.to_human(), file=out)
    failed = sum(not r.passed for r in records)
    log.info("%d records, %d failed", len(records), failed)
    return 1 if failed else 0


def cmd_compute(args, out) -> int:
    what = args.quantity
    if what in ("S", "s"):
        if args.points is None:
            raise _Usage(f"compute {what} needs --points")
        xs = parse_rat_list(args.points)
        val = ids.S_by_definition(xs) if what == "S" else ids.s_by_cycles(xs)
        print(format_rat(val), file=out)
        return 0
    if args.N is None:
        raise _Usage(f"compute {what} needs N")
    if what == "rn":
        print(format_rat(ids.rn(args.N)), file=out)
    elif what == "tangent":
        print(" ".join(str(t) for t in tangent_numbers(args.N)), file=out)
    elif what == "bernoulli":
        print(format_rat(bernoulli(args.N)), file=out)
    return 0


def _parse_sizes(text: str) -> list[int]:
    if ".." in text:
        a, b = text.split("..", 1)
        return list(range(int(a), int(b) + 1))
    return [int(text)]


def _timed(fn, reps: int):
    times, values = [], []
    for _ in range(reps):
        t0 = time.perf_counter()
        values.append(fn())
        times.append((time.perf_counter() - t0) * 1000)
    return values, statistics.median(times)


def cmd_bench(args, out) -> int:
    ok = True
    for n in _parse_sizes(args.sizes):
        if args.target == "rn":
            m = build_M(n)
            expected = ids.KNOWN_RN.get(n)
        else:
            if n < 2:
                continue
            m = build_C(n, n if n % 2 == 0 else n - 1)
            expected = double_factorial(n - 1) ** 2
            if n % 2:
                expected = Fraction(expected, n)
        values, median_ms = _timed(lambda: permanent_ryser(m), args.reps)
        value = values[0]
        row = {
            "bench": args.target,
            "n": n,
            "dim": m.dim,
            "value": ids.scalar_text(value),
            "reps": args.reps,
            "median_ms": round(median_ms, 3),
            "deterministic": all(v == value for v in values),
        }
        if m.dim <= 8:
            row["naive_match"] = permanent_naive(m) == value
        if expected is not None:
            row["expected"] = format_rat(expected)
            row["expected_match"] = value == expected
        ok &= row["deterministic"] and row.get("naive_match", True) and row.get("expected_match", True)
        print(json.dumps(row), file=out)
    return 0 if ok else 1


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="permident", description="Exact verification of permanent identities.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run identity checks and emit verdict records")
    v.add_argument("identity", choices=list(CHECKS) + ["all"])
    size = v.add_mutually_exclusive_group()
    size.add_argument("--n", type=int)
    size.add_argument("--max-n", type=int, dest="max_n")
    v.add_argument("--trials", type=int, default=5)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--parallel", type=int, default=os.cpu_count() or 1)
    v.add_argument("--force", action="store_true", help="lift the size guards")
    v.add_argument("--output", choices=["json", "human"], default="json")

    c = sub.add_parser("compute", help="print one exact value")
    c.add_argument("quantity", choices=["rn", "tangent", "bernoulli", "S", "s"])
    c.add_argument("N", type=int, nargs="?")
    c.add_argument("--points")

    b = sub.add_parser("bench", help="time Ryser permanents")
    b.add_argument("target", choices=["rn", "cyclo"])
    b.add_argument("--sizes", required=True)
    b.add_argument("--reps", type=int, default=3)
    return p


def _configure_logging() -> None:
    level = os.environ.get("PERMIDENT_LOG", "off").lower()
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    log.handlers[:] = [handler]
    log.propagate = False
    log.setLevel({"info": logging.INFO, "debug": logging.DEBUG}.get(level, logging.CRITICAL + 1))


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    _configure_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "trials", 1) < 1:
            raise _Usage("--trials must be at least 1")
        handler = {"verify": cmd_verify, "compute": cmd_compute, "bench": cmd_bench}[args.command]
        return handler(args, out)
    except _Usage as exc:
        print(f"permident: {exc}", file=sys.stderr)
        print(GRAMMAR, file=sys.stderr)
        return 2
    except PermidentError as exc:
        print(f"permident: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
