"""Command line entry point.

Instance files in, reports and CSV tables out, stable exit codes for CI:
0 = Holds / HoldsWithEquality, 1 = AmbiguousWithinTolerance, 2 = Violation,
3 = usage or parse error.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from .bbl import BblInstance, NonAdmissibleH, check_discrete_bbl
from .checks import (check_bm_ts, check_cardinality, check_dbm_p1,
                     check_dlpbm, check_lpbm_ts, check_volume_lpbm,
                     converge_experiment, repro_remark_cube_reduction,
                     repro_remark_psum_cube)
from .fuzz import TARGETS, FuzzConfig, fuzz
from .instances import Instance, InstanceError, load_instance
from .lattice import gcount, gcount_pcombo_plus_cube
from .rationals import format_rational, parse_rational
from .report import AMBIGUOUS, EQUALITY, HOLDS, VIOLATION, CheckReport
from .sets import AxisBox, FinitePoints, Iv, box

EXIT_OK = 0
EXIT_AMBIGUOUS = 1
EXIT_VIOLATION = 2
EXIT_USAGE = 3

CHECK_IDS = ("dlpbm", "dbm-p1", "bm-ts", "lpbm-ts", "cardinality",
             "cardinality-modified-cube", "dbbl", "volume-lpbm")
REPRO_IDS = ("remark-cube-reduction", "remark-psum-cube",
             "cardinality-counterexample", "sharp-cube-family")


def _threads() -> int:
    # single-threaded orchestration; the env var is honored as an upper
    # bound so callers can pin CI behavior
    raw = os.environ.get("BMLAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _dec(x: Fraction, digits: int = 12) -> str:
    scaled = x * 10 ** digits
    num = scaled.numerator // scaled.denominator
    sign = "-" if num < 0 else ""
    num = abs(num)
    whole, frac = divmod(num, 10 ** digits)
    return f"{sign}{whole}.{str(frac).zfill(digits)}"


def _fmt_cert(c, bits: int = 96) -> str:
    lo, hi = c.bounds(bits)
    if lo == hi:
        return f"{format_rational(lo)} (= {_dec(lo)})"
    return f"[{_dec(lo)}, {_dec(hi)}]"


def _print_report(rep: CheckReport, fmt: str, timing: bool):
    ms = rep.runtime_ms if timing else 0
    if fmt == "csv":
        lhs = rep.lhs.bounds(96)
        rhs = rep.rhs.bounds(96)
        slack = rep.slack.bounds(96)
        cells = [rep.inequality_id, rep.verdict,
                 format_rational(lhs[0]), format_rational(lhs[1]),
                 format_rational(rhs[0]), format_rational(rhs[1]),
                 format_rational(slack[0]), format_rational(slack[1]),
                 str(ms)]
        print("inequality_id,verdict,lhs_lo,lhs_hi,rhs_lo,rhs_hi,"
              "slack_lo,slack_hi,runtime_ms")
        print(",".join(cells))
        return
    print(f"inequality: {rep.inequality_id}")
    print(f"verdict:    {rep.verdict}")
    print(f"lhs:        {_fmt_cert(rep.lhs)}")
    print(f"rhs:        {_fmt_cert(rep.rhs)}")
    print(f"slack:      {_fmt_cert(rep.slack)}")
    for key, val in rep.witness.items():
        print(f"  {key}: {val}")
    if timing:
        print(f"runtime_ms: {ms}")


def _verdict_exit(verdict: str) -> int:
    if verdict in (HOLDS, EQUALITY):
        return EXIT_OK
    if verdict == AMBIGUOUS:
        return EXIT_AMBIGUOUS
    return EXIT_VIOLATION


def _weights(inst: Instance):
    """(t, s) pair if given, else the lambda weights."""
    if inst.t is not None or inst.s is not None:
        t, s = inst.require("t", "s")
        return (t, s)
    (lam,) = inst.require("lambda")
    return lam


def _run_check(args) -> int:
    inst = load_instance(args.instance)
    tol = parse_rational(args.tol)
    cid = args.inequality
    if cid == "dlpbm":
        k, l, lam, p = inst.require("k", "l", "lambda", "p")
        rep = check_dlpbm(k, l, lam, p, tol=tol)
    elif cid == "dbm-p1":
        k, l, lam = inst.require("k", "l", "lambda")
        rep = check_dbm_p1(k, l, lam, tol=tol)
    elif cid == "bm-ts":
        k, l, t, s = inst.require("k", "l", "t", "s")
        rep = check_bm_ts(k, l, t, s, tol=tol)
    elif cid == "lpbm-ts":
        k, l, t, s, p = inst.require("k", "l", "t", "s", "p")
        rep = check_lpbm_ts(k, l, t, s, p, tol=tol)
    elif cid in ("cardinality", "cardinality-modified-cube"):
        k, l, p = inst.require("k", "l", "p")
        cube = inst.cube
        if cid == "cardinality-modified-cube" and cube is None:
            raise InstanceError("cube", "the modified-cube check needs an "
                                        "explicit cube field")
        rep = check_cardinality(k, l, p, dilation=cube, tol=tol)
    elif cid == "dbbl":
        k, l, f, g, lam, p, alpha = inst.require(
            "k", "l", "f", "g", "lambda", "p", "alpha")
        n = inst.n if inst.n is not None else k.dim
        bbl = BblInstance(n, p, lam, alpha, k, l, f, g, h=inst.h)
        if inst.t is not None or inst.s is not None:
            t, s = inst.require("t", "s")
            rep = check_discrete_bbl(bbl, cube_exponent="ts", ts=(t, s),
                                     tol=tol)
        else:
            rep = check_discrete_bbl(bbl, tol=tol)
    elif cid == "volume-lpbm":
        k, l, lam, p = inst.require("k", "l", "lambda", "p")
        rep = check_volume_lpbm(k, l, lam, p, mc_samples=args.mc_samples,
                                seed=args.seed, tol=tol)
    else:
        raise InstanceError("inequality", f"unknown inequality id {cid!r}")
    _print_report(rep, args.format, not args.no_timing)
    return _verdict_exit(rep.verdict)


def _run_repro(args) -> int:
    cid = args.case
    timing = not args.no_timing
    if cid == "remark-cube-reduction":
        rep = repro_remark_cube_reduction(Fraction(1, 2), Fraction(2),
                                          Fraction(1, 100))
        _print_report(rep, args.format, timing)
        ok = rep.verdict == VIOLATION and rep.witness["count"] == 2
        print("reproduction:", "success" if ok else "MISMATCH")
        return EXIT_OK if ok else EXIT_VIOLATION
    if cid == "remark-psum-cube":
        rep = repro_remark_psum_cube()
        _print_report(rep, args.format, timing)
        ok = rep.verdict == VIOLATION and rep.witness["count"] == 2
        print("reproduction:", "success" if ok else "MISMATCH")
        return EXIT_OK if ok else EXIT_VIOLATION
    if cid == "cardinality-counterexample":
        pts = FinitePoints(((Fraction(0),), (Fraction(1),)))
        rep = check_cardinality(pts, pts, Fraction(3, 2),
                                dilation=box([(0, 1)]))
        _print_report(rep, args.format, timing)
        ok = rep.verdict == VIOLATION
        print("reproduction:", "success" if ok else "MISMATCH")
        return EXIT_OK if ok else EXIT_VIOLATION
    if cid == "sharp-cube-family":
        ok = True
        for m in (1, 2, 3):
            for n in (1, 2):
                cube = AxisBox(tuple(Iv(Fraction(0), Fraction(m))
                                     for _ in range(n)))
                rep = check_dlpbm(cube, cube, Fraction(1, 2), Fraction(2))
                good = rep.verdict == EQUALITY
                ok = ok and good
                print(f"m={m} n={n} verdict={rep.verdict} "
                      f"lhs={_fmt_cert(rep.lhs)}")
        print("reproduction:", "success" if ok else "MISMATCH")
        return EXIT_OK if ok else EXIT_VIOLATION
    raise InstanceError("case", f"unknown repro case {cid!r}")


def _run_fuzz(args) -> int:
    cfg = FuzzConfig(args.inequality, seed=args.seed, trials=args.trials,
                     n=args.n, coordinate_bound=args.bound,
                     tol=parse_rational(args.tol))
    summary = fuzz(cfg)
    print(f"inequality: {summary.inequality_id}")
    print(f"seed:       {summary.seed}")
    print(f"trials:     {summary.trials}")
    print(f"holds:      {summary.holds}")
    print(f"equalities: {summary.equalities}")
    print(f"ambiguous:  {summary.ambiguous}")
    print(f"violations: {summary.violations}")
    if summary.min_slack is not None:
        print(f"min_slack:  {format_rational(summary.min_slack)}")
        print(f"worst:      {summary.worst_instance}")
    for desc in summary.violation_instances:
        print(f"VIOLATION:  {desc}")
    if summary.violations:
        return EXIT_VIOLATION
    if summary.ambiguous:
        return EXIT_AMBIGUOUS
    return EXIT_OK


def _run_converge(args) -> int:
    inst = load_instance(args.instance)
    k, l, lam, p, alpha = inst.require("k", "l", "lambda", "p", "alpha")
    rows = converge_experiment(k, l, lam, p, alpha, args.m_max,
                               tol=parse_rational(args.tol))
    print("m,count,ambiguous,lhs_scaled,rhs_scaled,gap")
    code = EXIT_OK
    for row in rows:
        lhs = row.lhs_scaled.bounds(96)
        rhs = row.rhs_scaled.bounds(96)
        gap = lhs[1] - rhs[0]
        print(f"{row.m},{row.count},{row.ambiguous},"
              f"{_dec((lhs[0] + lhs[1]) / 2)},{_dec((rhs[0] + rhs[1]) / 2)},"
              f"{_dec(gap)}")
        if row.ambiguous:
            code = EXIT_AMBIGUOUS
    return code


def _run_gcount(args) -> int:
    inst = load_instance(args.instance)
    if inst.l is None:
        (k,) = inst.require("k")
        res = gcount(k, inst.lattice)
    else:
        k, l = inst.require("k", "l")
        p = inst.p if inst.p is not None else Fraction(1)
        res = gcount_pcombo_plus_cube(k, l, _weights(inst), p,
                                      cube=inst.cube, lattice=inst.lattice,
                                      tol=parse_rational(args.tol))
    print(f"count: {res.count}")
    if res.ambiguous_points:
        print(f"ambiguous: {res.ambiguous_points}")
        return EXIT_AMBIGUOUS
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bmlab",
        description="certified checkers for discrete Brunn-Minkowski and "
                    "Borell-Brascamp-Lieb type inequalities")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", default="1/1000000000",
                        help="ambiguity threshold as rational text")
    common.add_argument("--format", choices=("table", "csv"),
                        default="table")
    common.add_argument("--no-timing", action="store_true",
                        help="suppress runtime output for byte-stable runs")
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", parents=[common],
                             help="run one checker on an instance")
    p_check.add_argument("inequality", choices=CHECK_IDS)
    p_check.add_argument("instance", help="path to a JSON instance file")
    p_check.add_argument("--mc-samples", type=int, default=200_000)
    p_check.add_argument("--seed", type=int, default=0)

    p_repro = sub.add_parser("repro", parents=[common],
                            help="reproduce a built-in case")
    p_repro.add_argument("case", choices=REPRO_IDS)

    p_fuzz = sub.add_parser("fuzz", parents=[common],
                           help="randomized stress trials")
    p_fuzz.add_argument("inequality", choices=TARGETS)
    p_fuzz.add_argument("--seed", type=int, default=0)
    p_fuzz.add_argument("--trials", type=int, default=100)
    p_fuzz.add_argument("--n", type=int, default=2)
    p_fuzz.add_argument("--bound", type=int, default=3)

    p_conv = sub.add_parser("converge", parents=[common],
                            help="discrete-to-continuous convergence table")
    p_conv.add_argument("instance")
    p_conv.add_argument("--m-max", type=int, default=6)

    p_gc = sub.add_parser("gcount", parents=[common],
                          help="lattice point count")
    p_gc.add_argument("instance")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    _threads()
    handlers = {"check": _run_check, "repro": _run_repro, "fuzz": _run_fuzz,
                "converge": _run_converge, "gcount": _run_gcount}
    try:
        return handlers[args.command](args)
    except (InstanceError, NonAdmissibleH) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
