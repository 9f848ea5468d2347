"""Randomized stress testing of the inequality checkers.

Instances are small exact rational sets and functions drawn from a seeded
stream; every checker under test is backed by a proven inequality, so any
Violation is a bug certificate. Violations are re-verified at a much
tighter tolerance before being counted, which filters out the (never yet
observed) case of an enclosure artifact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .bbl import BblInstance, check_discrete_bbl
from .checks import (check_bm_ts, check_cardinality, check_dbm_p1,
                     check_dlpbm, check_lpbm_ts)
from .gridfun import GridFunction
from .lattice import gcount
from .report import AMBIGUOUS, EQUALITY, HOLDS, VIOLATION, CheckReport
from .sets import AxisBox, FinitePoints, Iv

F0 = Fraction(0)
F1 = Fraction(1)

TARGETS = ("dlpbm", "dbm-p1", "bm-ts", "lpbm-ts", "cardinality", "dbbl")

DEF_P = (Fraction(1), Fraction(3, 2), Fraction(2), Fraction(3))
DEF_LAMBDA = (Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3))
DEF_TS = (Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2))


@dataclass(frozen=True)
class FuzzConfig:
    inequality_id: str = "dlpbm"
    seed: int = 0
    trials: int = 100
    n: int = 2  # maximum dimension; each trial draws dim in 1..n
    coordinate_bound: int = 3
    p_choices: tuple = DEF_P
    lambda_choices: tuple = DEF_LAMBDA
    alpha_choices: tuple | None = None  # None: (-1/(2n), 0, 1, inf) per dim
    tol: Fraction = Fraction(1, 10 ** 9)

    def __post_init__(self):
        if self.inequality_id not in TARGETS:
            raise ValueError(f"unknown inequality id {self.inequality_id!r}; "
                             f"choose one of {TARGETS}")
        if not 1 <= self.n <= 3:
            raise ValueError("dimension must lie in 1..3")
        if self.trials < 0 or self.coordinate_bound < 1:
            raise ValueError("trials must be >= 0 and the bound positive")


@dataclass
class FuzzSummary:
    inequality_id: str
    seed: int
    trials: int = 0
    holds: int = 0
    equalities: int = 0
    ambiguous: int = 0
    violations: int = 0
    min_slack: Fraction | None = None
    worst_instance: dict | None = None
    violation_instances: list = field(default_factory=list)


def _rand_dim(rng: random.Random, n: int) -> int:
    # low dimensions are weighted up: they exercise the same code paths at
    # a fraction of the cost, so the trial budget stretches further
    dims = [1, 1] + list(range(2, n + 1))
    return rng.choice(dims)


def _rand_finite(rng: random.Random, dim: int, bound: int,
                 max_pts: int = 4) -> FinitePoints:
    m = rng.randint(1, max_pts)
    pts = {tuple(Fraction(rng.randint(-bound, bound)) for _ in range(dim))
           for _ in range(m)}
    return FinitePoints(tuple(sorted(pts)))


def _rand_box(rng: random.Random, dim: int, bound: int) -> AxisBox:
    ivs = []
    for _ in range(dim):
        den = rng.randint(1, 4)
        a = Fraction(rng.randint(-bound * den, bound * den), den)
        w = Fraction(rng.randint(0, bound * den), den)
        ivs.append(Iv(a, a + w))
    return AxisBox(tuple(ivs))


def _rand_set(rng: random.Random, dim: int, bound: int):
    """A nonempty-on-the-lattice random operand set."""
    while True:
        if rng.random() < 0.5:
            s = _rand_finite(rng, dim, bound)
        else:
            s = _rand_box(rng, dim, bound)
        if gcount(s).count > 0:
            return s


def _rand_gridfun(rng: random.Random, s: FinitePoints) -> GridFunction:
    support = []
    for pt in s.points:
        if support and rng.random() < 0.25:
            continue  # leave some points at value zero
        v = Fraction(rng.randint(1, 4), rng.randint(1, 2))
        support.append((pt, v))
    if not support:
        support.append((s.points[0], F1))
    return GridFunction(tuple(support), s)


def _describe(obj) -> object:
    if isinstance(obj, FinitePoints):
        return {"points": [[str(c) for c in p] for p in obj.points]}
    if isinstance(obj, AxisBox):
        return {"box": [[str(iv.lo), str(iv.hi)] for iv in obj.intervals]}
    return str(obj)


def _run_trial(cfg: FuzzConfig, index: int) -> tuple[CheckReport, dict]:
    rng = random.Random((cfg.seed, index))
    dim = _rand_dim(rng, cfg.n)
    lam = Fraction(rng.choice(cfg.lambda_choices))
    p = Fraction(rng.choice(cfg.p_choices))
    bound = cfg.coordinate_bound
    tid = cfg.inequality_id
    if tid == "cardinality":
        a = _rand_finite(rng, dim, bound)
        b = _rand_finite(rng, dim, bound)
        rep = check_cardinality(a, b, p, tol=cfg.tol)
        desc = {"A": _describe(a), "B": _describe(b), "p": str(p)}
    elif tid == "dbbl":
        k = _rand_finite(rng, dim, bound, max_pts=3)
        l = _rand_finite(rng, dim, bound, max_pts=3)
        alphas = cfg.alpha_choices
        if alphas is None:
            alphas = (Fraction(-1, 2 * dim), F0, F1, float("inf"))
        alpha = rng.choice(alphas)
        f = _rand_gridfun(rng, k)
        g = _rand_gridfun(rng, l)
        inst = BblInstance(dim, p, lam, alpha, k, l, f, g)
        rep = check_discrete_bbl(inst, tol=cfg.tol)
        desc = {"K": _describe(k), "L": _describe(l),
                "f": [[list(map(str, pt)), str(v)] for pt, v in f.support],
                "g": [[list(map(str, pt)), str(v)] for pt, v in g.support],
                "lambda": str(lam), "p": str(p), "alpha": str(alpha)}
    else:
        k = _rand_set(rng, dim, bound)
        l = _rand_set(rng, dim, bound)
        desc = {"K": _describe(k), "L": _describe(l),
                "lambda": str(lam), "p": str(p)}
        if tid == "dlpbm":
            rep = check_dlpbm(k, l, lam, p, tol=cfg.tol)
        elif tid == "dbm-p1":
            rep = check_dbm_p1(k, l, lam, tol=cfg.tol)
        else:
            t = rng.choice(DEF_TS)
            s = rng.choice(DEF_TS)
            desc["t"], desc["s"] = str(t), str(s)
            del desc["lambda"]
            if tid == "bm-ts":
                rep = check_bm_ts(k, l, t, s, tol=cfg.tol)
            else:
                rep = check_lpbm_ts(k, l, t, s, p, tol=cfg.tol)
    desc["trial"] = index
    desc["dim"] = dim
    return rep, desc


def _recheck(cfg: FuzzConfig, index: int) -> CheckReport:
    tight = FuzzConfig(cfg.inequality_id, cfg.seed, cfg.trials, cfg.n,
                       cfg.coordinate_bound, cfg.p_choices,
                       cfg.lambda_choices, cfg.alpha_choices,
                       cfg.tol / 10 ** 6)
    return _run_trial(tight, index)[0]


def fuzz(cfg: FuzzConfig) -> FuzzSummary:
    """Run the seeded trial stream; deterministic for a given config."""
    summary = FuzzSummary(cfg.inequality_id, cfg.seed)
    for i in range(cfg.trials):
        rep, desc = _run_trial(cfg, i)
        verdict = rep.verdict
        if verdict == VIOLATION and _recheck(cfg, i).verdict != VIOLATION:
            verdict = AMBIGUOUS
        summary.trials += 1
        if verdict == HOLDS:
            summary.holds += 1
        elif verdict == EQUALITY:
            summary.equalities += 1
        elif verdict == VIOLATION:
            summary.violations += 1
            summary.violation_instances.append(desc)
        else:
            summary.ambiguous += 1
        slack_lo = rep.slack.bounds(64)[0]
        if summary.min_slack is None or slack_lo < summary.min_slack:
            summary.min_slack = slack_lo
            summary.worst_instance = desc
    return summary
