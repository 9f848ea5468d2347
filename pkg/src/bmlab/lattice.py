"""Lattice point enumeration G(M) = |M ∩ Λ| for all supported shapes.

Counts are exact for plain set representations. For p-combinations dilated
by cubes the counting question "z ∈ M_p + C" is turned into "does the
combination reach the box z − C" and handed to the certified arc solver;
points that cannot be decided are reported, never guessed.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .arc import AMB, IN, Target, cover_targets
from .certified import AmbiguousComparison, Cert, count_integers_between
from .pcombo import PCombo, combo_endpoint_1d, combo_interval_1d, exact_realize
from .sets import (AxisBox, FinitePoints, Iv, Point, SetRep, VPolytope,
                   bounding_box, contains_point, make_point)

F0 = Fraction(0)
F1 = Fraction(1)


def _invert(rows):
    """Exact inverse of a small rational matrix (rows of Fractions)."""
    n = len(rows)
    a = [list(r) + [F1 if i == j else F0 for j in range(n)]
         for i, r in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular lattice basis")
        a[col], a[piv] = a[piv], a[col]
        d = a[col][col]
        a[col] = [v / d for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [row[n:] for row in a]


@dataclass(frozen=True)
class Lattice:
    """Lattice spanned by rational basis vectors: φ(u) = Σ uᵢ vᵢ."""

    basis: tuple[Point, ...]

    def __post_init__(self):
        basis = tuple(make_point(v) for v in self.basis)
        object.__setattr__(self, "basis", basis)
        if len({len(v) for v in basis}) != 1 or len(basis) != len(basis[0]):
            raise ValueError("basis must be square")
        object.__setattr__(self, "_inv", tuple(
            tuple(r) for r in _invert([[v[i] for v in basis]
                                       for i in range(len(basis))])))

    @classmethod
    def standard(cls, n: int) -> "Lattice":
        return cls(tuple(tuple(F1 if i == j else F0 for j in range(n))
                         for i in range(n)))

    @classmethod
    def refined(cls, n: int, m: int) -> "Lattice":
        """The lattice 2^(-m) Z^n."""
        f = Fraction(1, 1 << m)
        return cls(tuple(tuple(f if i == j else F0 for j in range(n))
                         for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def point(self, u) -> Point:
        return tuple(sum(self.basis[j][i] * uj for j, uj in enumerate(u))
                     for i in range(self.dim))

    def coords(self, z) -> Point:
        return tuple(sum(r[j] * zj for j, zj in enumerate(z))
                     for r in self._inv)

    def coord_ranges(self, bbox):
        """Integer coordinate ranges covering φ⁻¹ of a rational box."""
        out = []
        for r in self._inv:
            lo = sum(min(c * a, c * b) for c, (a, b) in zip(r, bbox))
            hi = sum(max(c * a, c * b) for c, (a, b) in zip(r, bbox))
            out.append(range(math.ceil(lo), math.floor(hi) + 1))
        return out


@dataclass(frozen=True)
class CountResult:
    count: int
    ambiguous_points: tuple[Point, ...] = ()

    @property
    def exact(self) -> bool:
        return not self.ambiguous_points


def gcount(s: SetRep, lattice: Lattice | None = None) -> CountResult:
    """Exact |s ∩ Λ| honoring open/closed boundaries."""
    lattice = lattice or Lattice.standard(s.dim)
    if isinstance(s, FinitePoints):
        n = sum(1 for p in s.points
                if all(c.denominator == 1 for c in lattice.coords(p)))
        return CountResult(n)
    count = 0
    for u in itertools.product(*lattice.coord_ranges(bounding_box(s))):
        if contains_point(s, lattice.point(u)):
            count += 1
    return CountResult(count)


def _combo_bbox(combo: PCombo):
    kb = bounding_box(combo.k)
    lb = bounding_box(combo.l)
    out = []
    for (a1, b1), (a2, b2) in zip(kb, lb):
        lo = combo_endpoint_1d(combo.arc, a1, False, a2, False, False)[0]
        hi = combo_endpoint_1d(combo.arc, b1, False, b2, False, True)[0]
        out.append((lo.bounds(40)[0], hi.bounds(40)[1]))
    return out


def _cube_targets(z: Point, cube) -> list[Target]:
    """Targets equivalent to z ∈ M + cube, i.e. (z − cube) ∩ M ≠ ∅."""
    if cube is None:
        return [Target(tuple(Iv(c, c) for c in z))]
    if isinstance(cube, FinitePoints):
        return [Target(tuple(Iv(zi - vi, zi - vi)
                             for zi, vi in zip(z, v)))
                for v in cube.points]
    return [Target(tuple(Iv(zi - iv.hi, zi - iv.lo, iv.hi_open, iv.lo_open)
                         for zi, iv in zip(z, cube.intervals)))]


def _sum_iv(a_lo: Cert, a_lo_open, a_hi: Cert, a_hi_open, iv: Iv):
    return (a_lo + iv.lo, a_lo_open or iv.lo_open,
            a_hi + iv.hi, a_hi_open or iv.hi_open)


def _count_1d_interval(lo: Cert, lo_open, hi: Cert, hi_open,
                       lattice: Lattice) -> int:
    b = lattice.basis[0][0]
    if b < 0:
        b = -b
        lo, hi = -hi, -lo
        lo_open, hi_open = hi_open, lo_open
    return count_integers_between(lo * (1 / b), hi * (1 / b),
                                  lo_open, hi_open)


def _depth_for_tol(combo: PCombo, tol: Fraction, scale: Fraction) -> int:
    if combo.arc.fixed_ts is not None:
        return 130
    q = float(combo.p / (combo.p - 1))
    need = math.log2(max(2.0, float(scale) + 2.0) / float(tol))
    return min(400, int(q * (need + 6)) + 8)


def gcount_pcombo_plus_cube(k: SetRep, l: SetRep, weights, p,
                            cube: SetRep | None = None,
                            lattice: Lattice | None = None,
                            tol=Fraction(1, 10 ** 9)) -> CountResult:
    """Count lattice points of t.K +_p s.L + cube.

    weights is either a rational lambda (giving (1-λ, λ)) or a pair (t, s).
    cube may be an axis box (any boundary flags), a finite set, or None.
    """
    tol = Fraction(tol)
    if isinstance(weights, tuple):
        combo = PCombo(k, l, weights[0], weights[1], p)
    else:
        combo = PCombo.from_lambda(k, l, Fraction(weights), p)
    n = combo.dim
    lattice = lattice or Lattice.standard(n)
    if lattice.dim != n:
        raise ValueError("lattice dimension mismatch")

    # one-dimensional closed form: the combination is a single interval
    boxy_cube = cube is None or isinstance(cube, AxisBox)
    finite_ops = isinstance(k, FinitePoints) or isinstance(l, FinitePoints)
    if n == 1 and boxy_cube and not (finite_ops and combo.arc.fixed_ts is not None):
        iv = combo_interval_1d(combo)
        ends = (iv.lo, iv.lo_open, iv.hi, iv.hi_open)
        if cube is not None:
            ends = _sum_iv(*ends, cube.intervals[0])
        try:
            return CountResult(_count_1d_interval(*ends, lattice))
        except AmbiguousComparison:
            pass  # endpoint equality undecidable: fall through to the solver

    bbox = _combo_bbox(combo)
    if cube is not None:
        cb = bounding_box(cube)
        bbox = [(a + c, b + d) for (a, b), (c, d) in zip(bbox, cb)]
    scale = max((max(abs(a), abs(b)) for a, b in bbox), default=F1)
    depth = _depth_for_tol(combo, tol, scale)
    work_bits = max(40, math.ceil(math.log2(max(2.0, float(scale))))
                    + tol.denominator.bit_length() + 12)

    targets = {}
    owner = {}
    for u in itertools.product(*lattice.coord_ranges(bbox)):
        z = lattice.point(u)
        for i, tgt in enumerate(_cube_targets(z, cube)):
            targets[(u, i)] = tgt
            owner[(u, i)] = z
    status = cover_targets(combo.k, combo.l, combo.arc, targets,
                           work_bits=work_bits, max_depth=depth)
    per_point: dict[Point, str] = {}
    for tid, st in status.items():
        z = owner[tid]
        cur = per_point.get(z, "out")
        if st == IN or cur == IN:
            per_point[z] = IN
        elif st == AMB or cur == AMB:
            per_point[z] = AMB
    count = sum(1 for st in per_point.values() if st == IN)
    amb = tuple(sorted(z for z, st in per_point.items() if st == AMB))
    return CountResult(count, amb)


def gcount_refined(obj, m: int, cube: SetRep | None = None,
                   tol=Fraction(1, 10 ** 9)) -> CountResult:
    """Count over the refined lattice 2^(-m) Z^n."""
    if isinstance(obj, PCombo):
        lat = Lattice.refined(obj.dim, m)
        return gcount_pcombo_plus_cube(obj.k, obj.l, (obj.w1, obj.w2),
                                       obj.p, cube, lat, tol)
    if cube is not None:
        raise ValueError("cube dilation only applies to combinations")
    return gcount(obj, Lattice.refined(obj.dim, m))
