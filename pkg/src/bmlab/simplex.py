"""Tiny exact LP solver over the rationals (two-phase simplex, Bland's rule).

Problems here are small (a handful of polytope vertices in dimension <= 4),
so a dense Fraction tableau is plenty; exactness is the point, not speed.
"""

from __future__ import annotations

from fractions import Fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


def solve_lp(c, a_ub=None, b_ub=None, a_eq=None, b_eq=None):
    """Minimize c.x subject to a_ub x <= b_ub, a_eq x = b_eq, x >= 0.

    All entries rational. Returns (status, value, x) with exact Fractions;
    value and x are None unless status is OPTIMAL.
    """
    a_ub = [list(map(Fraction, r)) for r in (a_ub or [])]
    b_ub = [Fraction(v) for v in (b_ub or [])]
    a_eq = [list(map(Fraction, r)) for r in (a_eq or [])]
    b_eq = [Fraction(v) for v in (b_eq or [])]
    c = [Fraction(v) for v in c]
    nvar = len(c)

    # standard form: append one slack per <= row
    rows = []
    rhs = []
    nslack = len(a_ub)
    for i, (row, b) in enumerate(zip(a_ub, b_ub)):
        r = row + [Fraction(0)] * nslack
        r[nvar + i] = Fraction(1)
        rows.append(r)
        rhs.append(b)
    for row, b in zip(a_eq, b_eq):
        rows.append(row + [Fraction(0)] * nslack)
        rhs.append(b)
    ncols = nvar + nslack
    m = len(rows)
    # make rhs nonnegative
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]

    # tableau with artificial basis
    tab = [rows[i] + [Fraction(0)] * m + [rhs[i]] for i in range(m)]
    for i in range(m):
        tab[i][ncols + i] = Fraction(1)
    basis = [ncols + i for i in range(m)]
    total = ncols + m

    def pivot(tb, bs, prow, pcol):
        pr = tb[prow]
        pv = pr[pcol]
        tb[prow] = [v / pv for v in pr]
        pr = tb[prow]
        for r in range(len(tb)):
            if r != prow and tb[r][pcol] != 0:
                f = tb[r][pcol]
                tb[r] = [v - f * w for v, w in zip(tb[r], pr)]
        bs[prow] = pcol

    def run(tb, bs, obj, allowed):
        # obj: cost row over columns [0, total); returns False on unbounded
        z = list(obj) + [Fraction(0)]
        for i, bi in enumerate(bs):
            if z[bi] != 0:
                f = z[bi]
                z = [v - f * w for v, w in zip(z, tb[i])]
        while True:
            pcol = -1
            for j in range(total):
                if j in allowed and z[j] < 0:
                    pcol = j  # Bland: first improving column
                    break
            if pcol < 0:
                return True, z
            prow, best = -1, None
            for i in range(len(tb)):
                if tb[i][pcol] > 0:
                    ratio = tb[i][-1] / tb[i][pcol]
                    if best is None or ratio < best or (
                            ratio == best and bs[i] < bs[prow]):
                        prow, best = i, ratio
            if prow < 0:
                return False, z
            pivot(tb, bs, prow, pcol)
            f = z[pcol]
            z = [v - f * w for v, w in zip(z, tb[prow])]

    allowed = set(range(total))
    phase1 = [Fraction(0)] * ncols + [Fraction(1)] * m
    ok, z1 = run(tab, basis, phase1, allowed)
    feas_val = sum(tab[i][-1] for i in range(m) if basis[i] >= ncols)
    if feas_val != 0:
        return INFEASIBLE, None, None

    # drive artificials out of the basis where possible
    for i in range(m):
        if basis[i] >= ncols:
            for j in range(ncols):
                if tab[i][j] != 0:
                    pivot(tab, basis, i, j)
                    break

    allowed = set(range(ncols))
    phase2 = c + [Fraction(0)] * (nslack + m)
    ok, z2 = run(tab, basis, phase2, allowed)
    if not ok:
        return UNBOUNDED, None, None
    x = [Fraction(0)] * nvar
    for i, bi in enumerate(basis):
        if bi < nvar:
            x[bi] = tab[i][-1]
    value = sum(ci * xi for ci, xi in zip(c, x))
    return OPTIMAL, value, x


def lp_feasible(a_ub=None, b_ub=None, a_eq=None, b_eq=None, nvar=None) -> bool:
    """Exact feasibility of a_ub x <= b_ub, a_eq x = b_eq, x >= 0."""
    if nvar is None:
        src = (a_ub or a_eq)
        nvar = len(src[0]) if src else 0
    status, _, _ = solve_lp([Fraction(0)] * nvar, a_ub, b_ub, a_eq, b_eq)
    return status == OPTIMAL
