"""Finitely supported nonnegative functions on rational points.

Provides the sup-convolution with the open unit cube (the extension that
appears on the discrete left-hand sides), cell-sup discretization of a
piecewise-constant function onto the grid 2^(-m) Z^n, and the matching
upper Riemann sum. Everything is exact rational arithmetic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .sets import AxisBox, FinitePoints, Point, SetRep, contains_point, make_point

F0 = Fraction(0)
F1 = Fraction(1)


@dataclass(frozen=True)
class GridFunction:
    """A function that is zero off a finite support list.

    support holds (point, value) pairs with value > 0; zero entries are
    dropped on construction. domain is the set the function lives on; all
    support points must belong to it.
    """

    support: tuple[tuple[Point, Fraction], ...]
    domain: SetRep

    def __post_init__(self):
        seen: dict[Point, Fraction] = {}
        for pt, v in self.support:
            pt = make_point(pt)
            v = Fraction(v)
            if v < 0:
                raise ValueError(f"negative value {v} at {pt}")
            if pt in seen and seen[pt] != v:
                raise ValueError(f"conflicting values at {pt}")
            seen[pt] = v
        for pt in seen:
            if not contains_point(self.domain, pt):
                raise ValueError(f"support point {pt} outside the domain")
        object.__setattr__(self, "support", tuple(
            (pt, v) for pt, v in sorted(seen.items()) if v > 0))

    @classmethod
    def chi(cls, s: FinitePoints) -> "GridFunction":
        """Characteristic function of a finite point set."""
        return cls(tuple((p, F1) for p in s.points), s)

    @property
    def dim(self) -> int:
        return self.domain.dim

    def value(self, z) -> Fraction:
        z = make_point(z)
        for pt, v in self.support:
            if pt == z:
                return v
        return F0

    def total(self) -> Fraction:
        return sum((v for _, v in self.support), F0)

    def lattice_total(self) -> Fraction:
        """Sum of values over integer support points."""
        return sum((v for pt, v in self.support
                    if all(c.denominator == 1 for c in pt)), F0)


def sup_convolution(phi: GridFunction, z) -> Fraction:
    """max of phi over support points within open l_inf distance 1 of z.

    This is phi extended by the Asplund product with the characteristic
    function of (-1, 1)^n; the distance test is strict and exact, so
    support points at distance exactly 1 do not contribute.
    """
    z = make_point(z)
    best = F0
    for pt, v in phi.support:
        if all(abs(a - b) < 1 for a, b in zip(pt, z)) and v > best:
            best = v
    return best


# ---------------------------------------------------------------------------
# cell-sup discretization and upper Riemann sums
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PiecewiseConstant:
    """max of finitely many box indicators: f(x) = max value over pieces
    whose box contains x, and 0 outside all pieces."""

    pieces: tuple[tuple[AxisBox, Fraction], ...]

    def __post_init__(self):
        ps = tuple((b, Fraction(v)) for b, v in self.pieces)
        if not ps:
            raise ValueError("PiecewiseConstant needs at least one piece")
        if any(v < 0 for _, v in ps):
            raise ValueError("piece values must be nonnegative")
        if len({b.dim for b, _ in ps}) != 1:
            raise ValueError("mixed piece dimensions")
        object.__setattr__(self, "pieces", ps)

    @property
    def dim(self) -> int:
        return self.pieces[0][0].dim


def _box_meets_cell(b: AxisBox, lo, hi) -> bool:
    """Exact: does the box (with its flags) meet the closed cell [lo, hi]?"""
    for iv, a, c in zip(b.intervals, lo, hi):
        m_lo = max(a, iv.lo)
        m_hi = min(c, iv.hi)
        if m_lo > m_hi:
            return False
        if m_lo == m_hi:
            if (iv.lo_open and m_lo == iv.lo) or (iv.hi_open and m_lo == iv.hi):
                return False
    return True


def _cell_sup(f, lo, hi) -> Fraction:
    """Supremum of f over the closed cell [lo, hi]."""
    if isinstance(f, PiecewiseConstant):
        best = F0
        for b, v in f.pieces:
            if v > best and _box_meets_cell(b, lo, hi):
                best = v
        return best
    if isinstance(f, GridFunction):
        # finite sample table treated as exact
        best = F0
        for pt, v in f.support:
            if v > best and all(a <= c <= b for a, b, c in zip(lo, hi, pt)):
                best = v
        return best
    raise TypeError(f"not an evaluable description: {type(f).__name__}")


def half_open_box(c: AxisBox) -> AxisBox:
    """The half-open version [lo, hi) of a box, axis by axis."""
    from .sets import Iv
    return AxisBox(tuple(Iv(iv.lo, iv.hi, False, True) for iv in c.intervals))


def cell_sup_discretize(f, m: int, c: AxisBox) -> GridFunction:
    """Discretize f onto the grid 2^(-m) Z^n inside the half-open box C0.

    The value at a grid point x is the supremum of f over the closed cell
    [x, x + 2^(-m)]^n. Closed cells make the associated Riemann sum the
    classical upper Darboux sum of the dyadic partition of C0, which is
    nonincreasing under refinement for grid-aligned boxes.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    if f.dim != c.dim:
        raise ValueError("dimension mismatch")
    step = Fraction(1, 1 << m)
    c0 = half_open_box(c)
    ranges = []
    for iv in c.intervals:
        lo_idx = math.ceil(iv.lo / step)
        hi_idx = math.ceil(iv.hi / step) - 1  # x < hi strictly
        ranges.append(range(lo_idx, hi_idx + 1))
    support = []
    for idx in itertools.product(*ranges):
        x = tuple(step * j for j in idx)
        v = _cell_sup(f, x, tuple(xi + step for xi in x))
        if v > 0:
            support.append((x, v))
    return GridFunction(tuple(support), c0)


def upper_riemann_sum(fm: GridFunction, m: int) -> Fraction:
    """2^(-m n) times the sum of the discretized values (exact rational)."""
    n = fm.dim
    return Fraction(1, 1 << (m * n)) * fm.total()
