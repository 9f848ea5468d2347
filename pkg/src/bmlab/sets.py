"""Bounded set representations with exact rational predicates.

Four variants: finite point sets, 1-D intervals (a 1-dimensional axis box),
axis-aligned boxes with explicit open/closed ends, and V-polytopes (convex
hulls of finitely many rational points). Boundary semantics are carried
explicitly because the counterexamples in this domain hinge on whether a
lattice point sits on an open or a closed face.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .certified import Cert
from .simplex import lp_feasible

Point = tuple[Fraction, ...]


def make_point(coords) -> Point:
    return tuple(Fraction(c) for c in coords)


@dataclass(frozen=True)
class Iv:
    """One axis interval with open/closed endpoints."""

    lo: Fraction
    hi: Fraction
    lo_open: bool = False
    hi_open: bool = False

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError("interval with lo > hi")
        if self.lo == self.hi and (self.lo_open or self.hi_open):
            raise ValueError("degenerate interval cannot be open")

    def contains(self, x: Fraction) -> bool:
        if x < self.lo or x > self.hi:
            return False
        if x == self.lo and self.lo_open:
            return False
        if x == self.hi and self.hi_open:
            return False
        return True


@dataclass(frozen=True)
class FinitePoints:
    points: tuple[Point, ...]

    def __post_init__(self):
        pts = tuple(sorted({make_point(p) for p in self.points}))
        if not pts:
            raise ValueError("FinitePoints must be nonempty")
        if len({len(p) for p in pts}) != 1:
            raise ValueError("mixed dimensions")
        object.__setattr__(self, "points", pts)

    @property
    def dim(self) -> int:
        return len(self.points[0])


@dataclass(frozen=True)
class AxisBox:
    intervals: tuple[Iv, ...]

    def __post_init__(self):
        ivs = tuple(self.intervals)
        if not ivs:
            raise ValueError("AxisBox needs at least one axis")
        object.__setattr__(self, "intervals", ivs)

    @property
    def dim(self) -> int:
        return len(self.intervals)


@dataclass(frozen=True)
class VPolytope:
    vertices: tuple[Point, ...]

    def __post_init__(self):
        vts = tuple(sorted({make_point(p) for p in self.vertices}))
        if not vts:
            raise ValueError("VPolytope must have vertices")
        if len({len(p) for p in vts}) != 1:
            raise ValueError("mixed dimensions")
        object.__setattr__(self, "vertices", vts)

    @property
    def dim(self) -> int:
        return len(self.vertices[0])


SetRep = FinitePoints | AxisBox | VPolytope


def interval(lo, hi, lo_open=False, hi_open=False) -> AxisBox:
    """1-D interval as a one-axis box."""
    return AxisBox((Iv(Fraction(lo), Fraction(hi), lo_open, hi_open),))


def box(bounds, lo_open=False, hi_open=False) -> AxisBox:
    """Axis box from (lo, hi) pairs, uniform openness flags."""
    return AxisBox(tuple(Iv(Fraction(a), Fraction(b), lo_open, hi_open)
                         for a, b in bounds))


def cube(n: int, lo, hi, lo_open=True, hi_open=True) -> AxisBox:
    return box([(lo, hi)] * n, lo_open, hi_open)


def open_unit_cube(n: int) -> AxisBox:
    """The cube (-1, 1)^n added on the discrete left-hand sides."""
    return cube(n, -1, 1)


def dim_of(s: SetRep) -> int:
    return s.dim


def is_closed(s: SetRep) -> bool:
    if isinstance(s, AxisBox):
        return not any(iv.lo_open or iv.hi_open for iv in s.intervals)
    return True


def contains_point(s: SetRep, pt) -> bool:
    """Exact membership of a rational point."""
    pt = make_point(pt)
    if isinstance(s, FinitePoints):
        return pt in s.points
    if isinstance(s, AxisBox):
        return all(iv.contains(x) for iv, x in zip(s.intervals, pt))
    # conv(V): exists convex combination hitting pt
    verts = s.vertices
    n = s.dim
    a_eq = [[v[i] for v in verts] for i in range(n)]
    a_eq.append([Fraction(1)] * len(verts))
    b_eq = list(pt) + [Fraction(1)]
    return lp_feasible(a_eq=a_eq, b_eq=b_eq, nvar=len(verts))


def contains_origin(s: SetRep) -> bool:
    return contains_point(s, (Fraction(0),) * s.dim)


def bounding_box(s: SetRep) -> list[tuple[Fraction, Fraction]]:
    """Closed hull bounds per axis."""
    if isinstance(s, AxisBox):
        return [(iv.lo, iv.hi) for iv in s.intervals]
    pts = s.points if isinstance(s, FinitePoints) else s.vertices
    return [(min(p[i] for p in pts), max(p[i] for p in pts))
            for i in range(len(pts[0]))]


def support_function(s: SetRep, u) -> Fraction:
    """h(s, u) = max over s of <x, u>, exact, for convex variants.

    The value is attained at a vertex/corner, so no origin assumption is
    needed here; callers on the p-sum path must additionally check
    contains_origin so that the support values are nonnegative.
    """
    u = make_point(u)
    if isinstance(s, FinitePoints):
        raise TypeError("support_function is for convex variants; "
                        "FinitePoints go through the pointwise path")
    if isinstance(s, AxisBox):
        return sum(max(iv.lo * c, iv.hi * c)
                   for iv, c in zip(s.intervals, u))
    return max(sum(x * c for x, c in zip(v, u)) for v in s.vertices)


def translate(s: SetRep, v) -> SetRep:
    v = make_point(v)
    if isinstance(s, FinitePoints):
        return FinitePoints(tuple(tuple(a + b for a, b in zip(p, v))
                                  for p in s.points))
    if isinstance(s, AxisBox):
        return AxisBox(tuple(Iv(iv.lo + c, iv.hi + c, iv.lo_open, iv.hi_open)
                             for iv, c in zip(s.intervals, v)))
    return VPolytope(tuple(tuple(a + b for a, b in zip(p, v))
                           for p in s.vertices))


def scale_exact(s: SetRep, f: Fraction) -> SetRep:
    """Scale by an exact rational factor >= 0."""
    f = Fraction(f)
    if f < 0:
        raise ValueError("negative scale factor")
    if isinstance(s, FinitePoints):
        return FinitePoints(tuple(tuple(f * c for c in p) for p in s.points))
    if isinstance(s, AxisBox):
        if f == 0:
            return AxisBox(tuple(Iv(0, 0) for _ in s.intervals))
        return AxisBox(tuple(Iv(f * iv.lo, f * iv.hi, iv.lo_open, iv.hi_open)
                             for iv in s.intervals))
    return VPolytope(tuple(tuple(f * c for c in p) for p in s.vertices))


@dataclass(frozen=True)
class ScaledSet:
    """A set scaled lazily by a certified (possibly irrational) factor."""

    base: SetRep
    factor: Cert

    def realize(self) -> SetRep:
        """Exact scaled set when the factor is rational."""
        v = self.factor.exact_value()
        if v is None:
            raise ValueError("scale factor is not exactly rational")
        return scale_exact(self.base, v)


def minkowski_sum(a: SetRep, b: SetRep) -> SetRep:
    """Exact A + B on representation pairs closed under the sum."""
    if isinstance(a, FinitePoints) and isinstance(b, FinitePoints):
        return FinitePoints(tuple(tuple(x + y for x, y in zip(p, q))
                                  for p in a.points for q in b.points))
    if isinstance(a, AxisBox) and isinstance(b, AxisBox):
        return AxisBox(tuple(
            Iv(i.lo + j.lo, i.hi + j.hi,
               i.lo_open or j.lo_open, i.hi_open or j.hi_open)
            for i, j in zip(a.intervals, b.intervals)))
    if isinstance(a, VPolytope) and isinstance(b, VPolytope):
        return VPolytope(tuple(tuple(x + y for x, y in zip(p, q))
                               for p in a.vertices for q in b.vertices))
    if isinstance(a, FinitePoints) and isinstance(b, AxisBox):
        a, b = b, a
    if isinstance(a, AxisBox) and isinstance(b, FinitePoints):
        # finite set of translated boxes is not an AxisBox; only the
        # single-translate case stays representable
        if len(b.points) == 1:
            return translate(a, b.points[0])
    raise TypeError(
        f"unsupported Minkowski sum of {type(a).__name__} and {type(b).__name__}")


def box_corners(bounds) -> list[Point]:
    return [tuple(c) for c in itertools.product(*((lo, hi) for lo, hi in bounds))]
