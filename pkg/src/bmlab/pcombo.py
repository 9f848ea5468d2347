"""L_p combinations of sets: t.K +_p s.L with lambda.K = lambda^(1/p) K.

Two equivalent views are implemented. For convex bodies containing the
origin the combination is the body whose support function is the weighted
p-mean of the operand support functions. For arbitrary bounded sets it is
the union over mu in [0, 1] of (1-mu)^(1/q) t^(1/p) K + mu^(1/q) s^(1/p) L;
membership and distance queries go through the certified arc solvers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .arc import (Arc, Target, cover_targets, linear_extreme, make_arc,
                  min_dist)
from .certified import Cert
from .rationals import Ext, check_p
from .sets import (AxisBox, FinitePoints, Iv, ScaledSet, SetRep, VPolytope,
                   bounding_box, contains_origin, is_closed, make_point,
                   minkowski_sum, scale_exact, support_function)

INSIDE = "inside"
OUTSIDE = "outside"
AMBIGUOUS = "ambiguous"


@dataclass(frozen=True)
class MembershipVerdict:
    kind: str
    gap: Cert | None = None  # undecided distance enclosure when ambiguous


@dataclass(frozen=True)
class PCombo:
    """The binary combination t.K +_p s.L (weights before the 1/p root)."""

    k: SetRep
    l: SetRep
    w1: Fraction
    w2: Fraction
    p: Fraction
    arc: Arc = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "w1", Fraction(self.w1))
        object.__setattr__(self, "w2", Fraction(self.w2))
        object.__setattr__(self, "p", check_p(self.p))
        if self.k.dim != self.l.dim:
            raise ValueError("operands must share a dimension")
        object.__setattr__(self, "arc", make_arc(self.w1, self.w2, self.p))

    @classmethod
    def from_lambda(cls, k: SetRep, l: SetRep, lam, p) -> "PCombo":
        lam = Fraction(lam)
        if not 0 <= lam <= 1:
            raise ValueError("lambda must lie in [0, 1]")
        return cls(k, l, 1 - lam, lam, p)

    @property
    def dim(self) -> int:
        return self.k.dim


def p_scalar_mult(lam, s: SetRep, p) -> ScaledSet:
    """lambda . K = lambda^(1/p) K with a lazily certified factor."""
    lam = Fraction(lam)
    p = check_p(p)
    if lam < 0:
        raise ValueError("scalar weight must be nonnegative")
    return ScaledSet(s, Cert.rational_pow(lam, 1 / p))


def _require_support_path(s: SetRep):
    if isinstance(s, FinitePoints):
        raise TypeError("support form needs a convex set, not FinitePoints")
    if isinstance(s, AxisBox) and not is_closed(s):
        raise ValueError("support form needs closed operands")
    if not contains_origin(s):
        raise ValueError("support form needs the origin in the set")


def p_combo_support(combo: PCombo, u) -> Cert:
    """Support function of the combination: (w1 h_K(u)^p + w2 h_L(u)^p)^(1/p).

    Both operands must be convex bodies containing the origin, so the
    support values are nonnegative and the two definitions coincide.
    """
    _require_support_path(combo.k)
    _require_support_path(combo.l)
    hk = support_function(combo.k, u)
    hl = support_function(combo.l, u)
    return linear_extreme(combo.arc, hk, hl, True)


def exact_realize(combo: PCombo) -> SetRep | None:
    """The combination as an exact SetRep when both coefficients are rational
    (p = 1, a zero weight, or perfect p-th root weights); None otherwise."""
    fx = combo.arc.fixed_ts
    if fx is None:
        return None
    t = fx[0].exact_value()
    s = fx[1].exact_value()
    if t is None or s is None:
        return None
    if t == 0:
        return scale_exact(combo.l, s)
    if s == 0:
        return scale_exact(combo.k, t)
    return minkowski_sum(scale_exact(combo.k, t), scale_exact(combo.l, s))


def chebyshev_distance(z, combo: PCombo) -> Cert:
    """Certified enclosure of inf over the combination of ||z - .||_inf."""
    return min_dist(combo.k, combo.l, combo.arc, make_point(z))


def p_combo_membership(z, combo: PCombo, tol=Fraction(1, 10 ** 9)) -> MembershipVerdict:
    """Certified membership of a rational point in the combination."""
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    z = make_point(z)
    tgt = Target(tuple(Iv(c, c) for c in z))
    depth = _depth_for(combo.arc, tol, z)
    res = cover_targets(combo.k, combo.l, combo.arc, {0: tgt},
                        max_depth=depth)
    if res[0] == "in":
        return MembershipVerdict(INSIDE)
    d = chebyshev_distance(z, combo)
    bits = max(12, tol.denominator.bit_length() - tol.numerator.bit_length() + 12)
    lo, hi = d.bounds(bits)
    if lo > 0:
        return MembershipVerdict(OUTSIDE)
    if hi - lo > tol:
        lo, hi = d.bounds(2 * bits)
        if lo > 0:
            return MembershipVerdict(OUTSIDE)
    return MembershipVerdict(AMBIGUOUS, gap=d)


def _depth_for(arc: Arc, tol: Fraction, z) -> int:
    """Bisection depth so that arc rectangles resolve below tol.

    Coefficient widths shrink like (delta mu)^(1/q) near the endpoints,
    hence the factor q on the bit budget.
    """
    import math
    if arc.fixed_ts is not None:
        return 130
    q = float(arc.p / (arc.p - 1)) if arc.p != 1 else 1.0
    scale = max((abs(float(c)) for c in z), default=1.0) + 2.0
    need = math.log2(max(2.0, scale) / float(tol))
    return min(400, int(q * (need + 6)) + 8)


# ---------------------------------------------------------------------------
# exact one-dimensional combinations with boundary flags
# ---------------------------------------------------------------------------

def combo_endpoint_1d(arc: Arc, k: Fraction, k_open: bool,
                      l: Fraction, l_open: bool,
                      maximize: bool) -> tuple[Cert, bool]:
    """Extreme of the 1-D combination of intervals ending at k and l.

    Returns the certified extreme value together with an openness flag:
    True when the extreme is a supremum/infimum that the combination does
    not attain (an open operand endpoint enters with positive coefficient).
    """
    k, l = Fraction(k), Fraction(l)
    fx = arc.fixed_ts
    if fx is not None:
        t0 = fx[0].exact_value()
        s0 = fx[1].exact_value()
        val = fx[0] * k + fx[1] * l
        op = (k_open and t0 != 0) or (l_open and s0 != 0)
        return val, op
    if not maximize:
        val, op = combo_endpoint_1d(arc, -k, k_open, -l, l_open, True)
        return -val, op
    if k >= 0 and l >= 0:
        if k == 0 and l == 0:
            return Cert.exact(0), k_open and l_open
        if k == 0:
            return arc.c2 * l, l_open  # attained at mu = 1 where t = 0
        if l == 0:
            return arc.c1 * k, k_open
        return linear_extreme(arc, k, l, True), k_open or l_open
    if k >= 0 > l:
        return arc.c1 * k, k_open  # mu = 0 kills the L term
    if l >= 0 > k:
        return arc.c2 * l, l_open
    m1 = arc.c1 * k
    m2 = arc.c2 * l
    sep = m1.separate(m2)
    if sep == 1:
        return m1, k_open
    if sep == -1:
        return m2, l_open
    if sep == 0:
        return m1, k_open and l_open
    return Cert.max_of([m1, m2]), k_open or l_open


@dataclass(frozen=True)
class CertIv:
    """A 1-D interval with certified endpoints and openness flags."""

    lo: Cert
    hi: Cert
    lo_open: bool = False
    hi_open: bool = False


def combo_interval_1d(combo: PCombo) -> CertIv:
    """The 1-D combination as a single interval.

    Valid for interval operands with any p, and for finite operands when
    p > 1 (each pair curve is a continuum through c1 x and c2 y, so the
    union of curves is connected). The exact finite case p = 1 must go
    through exact_realize instead.
    """
    if combo.dim != 1:
        raise ValueError("combo_interval_1d needs dimension 1")
    finite = isinstance(combo.k, FinitePoints) or isinstance(combo.l, FinitePoints)
    if finite and combo.arc.fixed_ts is not None:
        raise ValueError("a degenerate-coefficient combination of finite "
                         "sets is not an interval; use exact_realize")
    (klo, khi), = bounding_box(combo.k)
    (llo, lhi), = bounding_box(combo.l)
    ko_lo = ko_hi = lo_lo = lo_hi = False
    if isinstance(combo.k, AxisBox):
        ko_lo, ko_hi = combo.k.intervals[0].lo_open, combo.k.intervals[0].hi_open
    if isinstance(combo.l, AxisBox):
        lo_lo, lo_hi = combo.l.intervals[0].lo_open, combo.l.intervals[0].hi_open
    lo, lof = combo_endpoint_1d(combo.arc, klo, ko_lo, llo, lo_lo, False)
    hi, hif = combo_endpoint_1d(combo.arc, khi, ko_hi, lhi, lo_hi, True)
    return CertIv(lo, hi, lof, hif)
