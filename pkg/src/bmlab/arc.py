"""The coefficient arc of an L_p combination and certified solvers over it.

For weights (w1, w2) and exponent p, the coefficient pairs of the pointwise
p-combination are (t, s) = (w1^(1/p) (1-mu)^(1/q), w2^(1/p) mu^(1/q)) for
mu in [0, 1]; they sweep the concave arc (t/c1)^q + (s/c2)^q = 1 in the
nonnegative quadrant. Every membership, distance and counting question about
the combination reduces to a question about this one-parameter family, so
the branch-and-bound engines here work on mu-segments, enclosing (t, s) by
exact rational rectangles (t is decreasing and s increasing in mu) and
bounding the combination set by exact boxes or polytope LPs.

Soundness over completeness: every "in"/"out" verdict is certified by exact
rational arithmetic; what cannot be separated is reported as ambiguous.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from heapq import heappop, heappush

from .certified import DEFAULT_BITS, MAX_BITS, Cert, perfect_root
from .rationals import check_p
from .sets import (AxisBox, FinitePoints, Iv, SetRep, VPolytope, bounding_box,
                   box_corners, contains_origin, is_closed)
from .simplex import OPTIMAL, lp_feasible, solve_lp

F0 = Fraction(0)
F1 = Fraction(1)


@dataclass
class Arc:
    """Coefficient arc data for weights (w1, w2) and exponent p >= 1."""

    w1: Fraction
    w2: Fraction
    p: Fraction
    c1: Cert
    c2: Cert
    invq: Fraction  # 1/q = 1 - 1/p; zero when p = 1
    _cache: dict = field(default_factory=dict)

    @property
    def fixed_ts(self) -> tuple[Cert, Cert] | None:
        """The single coefficient pair when the arc degenerates.

        p = 1 pins (t, s) = (w1, w2); a zero weight forces mu to the
        endpoint and the combination collapses to the scaled other term.
        """
        if self.p == 1:
            return Cert.exact(self.w1), Cert.exact(self.w2)
        if self.w1 == 0:
            return Cert.exact(0), self.c2
        if self.w2 == 0:
            return self.c1, Cert.exact(0)
        return None

    def ts(self, mu: Fraction, bits: int) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        """Exact enclosure (t_lo, t_hi, s_lo, s_hi) of the pair at mu."""
        key = (mu, bits)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        fx = self.fixed_ts
        if fx is not None:
            tlo, thi = fx[0].bounds(bits)
            slo, shi = fx[1].bounds(bits)
            out = (max(tlo, F0), thi, max(slo, F0), shi)
            self._cache[key] = out
            return out
        t = self.c1 * Cert.rational_pow(1 - mu, self.invq)
        s = self.c2 * Cert.rational_pow(mu, self.invq)
        tlo, thi = t.bounds(bits)
        slo, shi = s.bounds(bits)
        out = (max(tlo, F0), thi, max(slo, F0), shi)
        self._cache[key] = out
        return out

    def rect(self, mu1: Fraction, mu2: Fraction, bits: int):
        """Rectangle enclosing all pairs for mu in [mu1, mu2]."""
        a = self.ts(mu1, bits)
        b = self.ts(mu2, bits)
        return (b[0], a[1], a[2], b[3])  # t decreasing, s increasing


def make_arc(w1, w2, p) -> Arc:
    w1, w2 = Fraction(w1), Fraction(w2)
    p = check_p(p)
    if w1 < 0 or w2 < 0 or (w1 == 0 and w2 == 0):
        raise ValueError("weights must be nonnegative, not both zero")
    c1 = Cert.rational_pow(w1, 1 / p)
    c2 = Cert.rational_pow(w2, 1 / p)
    return Arc(w1, w2, p, c1, c2, 1 - 1 / p)


def linear_extreme(arc: Arc, k: Fraction, l: Fraction, maximize: bool) -> Cert:
    """Extreme value of t*k + s*l over the whole arc (endpoints included).

    The maximum of a nonnegative direction is the Hoelder bound
    (w1 k^p + w2 l^p)^(1/p); mixed signs push the optimum to an endpoint.
    """
    k, l = Fraction(k), Fraction(l)
    fx = arc.fixed_ts
    if fx is not None:
        return fx[0] * k + fx[1] * l
    if not maximize:
        return -linear_extreme(arc, -k, -l, True)
    if k >= 0 and l >= 0:
        if k > 0 and l > 0:
            # factor out k: exact whenever (l/k)^p is rational, which keeps
            # ties like k = l certifiable instead of drowning in enclosures
            ratio = Cert.rational_pow(Fraction(l, k), arc.p).exact_value()
            if ratio is not None:
                return Cert.rational_pow(arc.w1 + arc.w2 * ratio, 1 / arc.p) * k
        base = (Cert.rational_pow(k, arc.p) * arc.w1
                + Cert.rational_pow(l, arc.p) * arc.w2)
        return base.pow(1 / arc.p)
    if k >= 0 > l:
        return arc.c1 * k
    if l >= 0 > k:
        return arc.c2 * l
    return Cert.max_of([arc.c1 * k, arc.c2 * l])


def point_on_pair_curve(arc: Arc, x, y, z) -> bool | None:
    """Exact membership of z on the curve {t(mu) x + s(mu) y}.

    Solves the linear system for (t, s) and verifies the arc equation
    t^q w1^(-q/p) + s^q w2^(-q/p) = 1 with exact root detection. Returns
    None when the verification cannot be decided exactly.
    """
    n = len(z)
    fx = arc.fixed_ts
    if fx is not None:
        diff = [Cert.wrap(zi) - (fx[0] * xi + fx[1] * yi)
                for zi, xi, yi in zip(z, x, y)]
        out = True
        for d in diff:
            sep = d.separate(0)
            if sep is None:
                return None
            if sep != 0:
                return False
        return out
    if all(c == 0 for c in x) and all(c == 0 for c in y):
        return all(c == 0 for c in z)
    if all(c == 0 for c in x):
        return _scaled_point_hit(y, z, arc.w2, arc.p)
    if all(c == 0 for c in y):
        return _scaled_point_hit(x, z, arc.w1, arc.p)
    # rank-2 attempt: two rows with a nonzero minor
    for i in range(n):
        for j in range(i + 1, n):
            det = x[i] * y[j] - x[j] * y[i]
            if det == 0:
                continue
            t = (z[i] * y[j] - z[j] * y[i]) / det
            s = (x[i] * z[j] - x[j] * z[i]) / det
            if t < 0 or s < 0:
                return False
            if any(t * xi + s * yi != zi for xi, yi, zi in zip(x, y, z)):
                return False
            return _on_arc(arc, t, s)
    # rank 1: y = gamma x, z must be delta x
    base = next(i for i in range(n) if x[i] != 0)
    gamma = y[base] / x[base]
    if any(yi != gamma * xi for xi, yi in zip(x, y)):
        return False  # unreachable given minors vanish, kept for safety
    delta = z[base] / x[base]
    if any(zi != delta * xi for xi, zi in zip(x, z)):
        return False
    lo = linear_extreme(arc, F1, gamma, False)
    hi = linear_extreme(arc, F1, gamma, True)
    c_lo = lo.separate(delta)
    c_hi = hi.separate(delta)
    if c_lo is None or c_hi is None:
        return None
    return c_lo <= 0 <= c_hi  # the range is an interval (continuity)


def _scaled_point_hit(y, z, w: Fraction, p: Fraction) -> bool | None:
    """z in {s y : 0 <= s <= w^(1/p)} decided via s^p <= w exactly."""
    base = next((i for i in range(len(y)) if y[i] != 0), None)
    if base is None:
        return all(c == 0 for c in z)
    s = z[base] / y[base]
    if s < 0 or any(s * yi != zi for yi, zi in zip(y, z)):
        return False
    if p.denominator == 1:
        return s ** p.numerator <= w
    sep = Cert.rational_pow(s, p).separate(w)
    return None if sep is None else sep <= 0


def _on_arc(arc: Arc, t: Fraction, s: Fraction) -> bool | None:
    q = arc.p / (arc.p - 1)
    lhs = (Cert.rational_pow(t, q) / Cert.rational_pow(arc.w1, q / arc.p)
           + Cert.rational_pow(s, q) / Cert.rational_pow(arc.w2, q / arc.p))
    sep = lhs.separate(1)
    if sep is None:
        return None
    return sep == 0


# ---------------------------------------------------------------------------
# parts: the combination is handled pair-by-pair on box/polytope components
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Part:
    kind: str  # "box" | "poly"
    bounds: tuple  # ((lo, hi), ...) for boxes
    vertices: tuple  # vertex tuple for polytopes (box corners otherwise)
    absmax: Fraction
    has_origin: bool


def _mk_box_part(bounds) -> Part:
    bounds = tuple((Fraction(a), Fraction(b)) for a, b in bounds)
    am = max((max(abs(a), abs(b)) for a, b in bounds), default=F0)
    org = all(a <= 0 <= b for a, b in bounds)
    return Part("box", bounds, tuple(box_corners(bounds)), am, org)


def _mk_poly_part(vertices) -> Part:
    vertices = tuple(tuple(Fraction(c) for c in v) for v in vertices)
    am = max(abs(c) for v in vertices for c in v)
    bounds = tuple((min(v[i] for v in vertices), max(v[i] for v in vertices))
                   for i in range(len(vertices[0])))
    return Part("poly", bounds, vertices, am, False)


def parts_of(s: SetRep) -> list[Part]:
    """Decompose a set into the components the pair solvers understand."""
    if isinstance(s, FinitePoints):
        return [_mk_box_part([(c, c) for c in p]) for p in s.points]
    if isinstance(s, AxisBox):
        if not is_closed(s):
            raise ValueError("p-combination operands must be closed sets")
        return [_mk_box_part([(iv.lo, iv.hi) for iv in s.intervals])]
    part = _mk_poly_part(s.vertices)
    if contains_origin(s):
        part = Part(part.kind, part.bounds, part.vertices, part.absmax, True)
    return [part]


def _combo_box(T: Fraction, S: Fraction, pk: Part, pl: Part):
    return [(T * a1 + S * a2, T * b1 + S * b2)
            for (a1, b1), (a2, b2) in zip(pk.bounds, pl.bounds)]


def _poly_pair(T, S, pk: Part, pl: Part):
    vk = pk.vertices
    vl = pl.vertices
    return [tuple(T * a + S * b for a, b in zip(v, w)) for v in vk for w in vl]


def _lp_in_hull_box(z_lo, z_hi, verts) -> bool:
    """Exact: does conv(verts) meet the closed box [z_lo, z_hi]?"""
    n = len(z_lo)
    m = len(verts)
    # gamma >= 0, sum gamma = 1, z_lo <= sum gamma v <= z_hi
    a_ub = []
    b_ub = []
    for i in range(n):
        a_ub.append([v[i] for v in verts])
        b_ub.append(z_hi[i])
        a_ub.append([-v[i] for v in verts])
        b_ub.append(-z_lo[i])
    return lp_feasible(a_ub=a_ub, b_ub=b_ub,
                       a_eq=[[F1] * m], b_eq=[F1], nvar=m)


def _dist_point_box(z, bounds) -> Fraction:
    d = F0
    for zi, (lo, hi) in zip(z, bounds):
        if zi < lo:
            d = max(d, lo - zi)
        elif zi > hi:
            d = max(d, zi - hi)
    return d


def _dist_point_hull(z, verts) -> Fraction:
    m = len(verts)
    n = len(z)
    # vars: gamma (m), r; minimize r s.t. |z - sum gamma v| <= r
    c = [F0] * m + [F1]
    a_ub = []
    b_ub = []
    for i in range(n):
        a_ub.append([v[i] for v in verts] + [Fraction(-1)])
        b_ub.append(z[i])
        a_ub.append([-v[i] for v in verts] + [Fraction(-1)])
        b_ub.append(-z[i])
    status, val, _ = solve_lp(c, a_ub=a_ub, b_ub=b_ub,
                              a_eq=[[F1] * m + [F0]], b_eq=[F1])
    if status != OPTIMAL:
        raise AssertionError("distance LP must be solvable")
    return val


def _pair_dist(z, T, S, pk: Part, pl: Part) -> Fraction:
    """Exact dist_inf(z, T*pk + S*pl) for one coefficient pair."""
    if pk.kind == "box" and pl.kind == "box":
        return _dist_point_box(z, _combo_box(T, S, pk, pl))
    return _dist_point_hull(z, _poly_pair(T, S, pk, pl))


def _pair_meets_box(T, S, pk: Part, pl: Part, z_lo, z_hi) -> bool:
    """Exact: does T*pk + S*pl meet the closed box [z_lo, z_hi]?"""
    if pk.kind == "box" and pl.kind == "box":
        cb = _combo_box(T, S, pk, pl)
        return all(max(lo, a) <= min(hi, b)
                   for (a, b), (lo, hi) in zip(cb, zip(z_lo, z_hi)))
    return _lp_in_hull_box(z_lo, z_hi, _poly_pair(T, S, pk, pl))


def _point_in_pair(z, T, S, pk: Part, pl: Part) -> bool:
    return _pair_meets_box(T, S, pk, pl, list(z), list(z))


# ---------------------------------------------------------------------------
# exact segment ranges of linear forms along the arc
# ---------------------------------------------------------------------------
#
# l(mu) = t(mu) k + s(mu) l is monotone when k, l have opposite signs,
# concave when both are >= 0 and convex when both are <= 0, because t and s
# are concave in mu. Extremes therefore sit at segment endpoints except for
# the one interior stationary point, whose value is the closed-form global
# extreme; whether it falls inside a segment is decided by comparing
# mu/(1-mu) against (l/k)^p w2/w1 (the stationarity condition).

class _FormCache:
    """Per-solve cache of stationarity ratios, global extremes, and arc
    point enclosures (segment endpoints recur across the subdivision)."""

    def __init__(self, arc: Arc):
        self.arc = arc
        self.data: dict = {}
        self.ts_data: dict = {}

    def ts(self, mu: Fraction, bits: int):
        return self.arc.ts(mu, bits)  # Arc memoizes per (mu, bits)

    def get(self, k: Fraction, l: Fraction):
        hit = self.data.get((k, l))
        if hit is None:
            rho = Cert.rational_pow(l / k, self.arc.p) * (self.arc.w2 / self.arc.w1)
            gmax = linear_extreme(self.arc, k, l, True)
            hit = (rho, gmax)
            self.data[(k, l)] = hit
        return hit


def _odds_ratio(mu: Fraction) -> Fraction | None:
    return None if mu == 1 else mu / (1 - mu)  # None stands for +inf


def _form_at(ts, k: Fraction, l: Fraction) -> tuple[Fraction, Fraction]:
    tlo, thi, slo, shi = ts
    lo = (tlo if k >= 0 else thi) * k + (slo if l >= 0 else shi) * l
    hi = (thi if k >= 0 else tlo) * k + (shi if l >= 0 else slo) * l
    return lo, hi


def form_range(arc: Arc, cache: _FormCache, k: Fraction, l: Fraction,
               mu1: Fraction, mu2: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Enclosure of {t(mu) k + s(mu) l : mu in [mu1, mu2]}, endpoint-exact."""
    fx = arc.fixed_ts
    if fx is not None:
        t = fx[0].bounds(bits)
        s = fx[1].bounds(bits)
        return _form_at((t[0], t[1], s[0], s[1]), k, l)
    a = _form_at(cache.ts(mu1, bits), k, l)
    b = _form_at(cache.ts(mu2, bits), k, l)
    lo = min(a[0], b[0])
    hi = max(a[1], b[1])
    if k > 0 and l > 0:
        hi = max(hi, _interior_extreme(arc, cache, k, l, mu1, mu2, bits, hi))
    elif k < 0 and l < 0:
        lo = min(lo, -_interior_extreme(arc, cache, -k, -l, mu1, mu2, bits, -lo))
    return lo, hi


def _interior_extreme(arc, cache, k, l, mu1, mu2, bits, fallback) -> Fraction:
    """Upper bound for the concave case: the global maximum if the
    stationary point may lie in [mu1, mu2], the endpoint value otherwise."""
    rho, gmax = cache.get(k, l)
    r1 = _odds_ratio(mu1)
    r2 = _odds_ratio(mu2)
    budget = 2 * DEFAULT_BITS
    if r1 is not None and rho.separate(r1, budget) == -1:
        return fallback  # stationary point left of the segment
    if r2 is not None and rho.separate(r2, budget) == 1:
        return fallback  # right of the segment
    return gmax.bounds(bits)[1]


# ---------------------------------------------------------------------------
# target boxes (z + cube) with open/closed faces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Target:
    ivs: tuple[Iv, ...]

    def closure_bounds(self):
        return [iv.lo for iv in self.ivs], [iv.hi for iv in self.ivs]

    def shrunk(self, eps: Fraction):
        """Closed box strictly inside the target: every face pulled in by
        eps, open faces by a bit more. None if it collapses."""
        lo, hi = [], []
        for iv in self.ivs:
            a = iv.lo + eps * (F1 + Fraction(iv.lo_open))
            b = iv.hi - eps * (F1 + Fraction(iv.hi_open))
            if a > b:
                return None
            lo.append(a)
            hi.append(b)
        return lo, hi

    def expanded(self, eps: Fraction):
        return ([iv.lo - eps for iv in self.ivs],
                [iv.hi + eps for iv in self.ivs])

    def admits_box(self, lo, hi) -> bool:
        """Exact: every point of the closed box [lo, hi] lies in the target."""
        for iv, a, b in zip(self.ivs, lo, hi):
            if a < iv.lo or b > iv.hi:
                return False
            if iv.lo_open and a == iv.lo:
                return False
            if iv.hi_open and b == iv.hi:
                return False
        return True

    def meets_box(self, lo, hi) -> bool:
        """Exact: does the closed box [lo, hi] contain a point of the target?"""
        for iv, a, b in zip(self.ivs, lo, hi):
            m_lo = max(a, iv.lo)
            m_hi = min(b, iv.hi)
            if m_lo > m_hi:
                return False
            if m_lo == m_hi:
                if (iv.lo_open and m_lo == iv.lo) or (iv.hi_open and m_lo == iv.hi):
                    return False
        return True


def target_around(z, cube_ivs) -> Target:
    """The box z + cube as a Target."""
    return Target(tuple(Iv(iv.lo + c, iv.hi + c, iv.lo_open, iv.hi_open)
                        for iv, c in zip(cube_ivs, z)))


# ---------------------------------------------------------------------------
# engine 1: multi-target reachability ("is z + cube hit by the combination?")
# ---------------------------------------------------------------------------

IN, OUT, AMB = "in", "out", "amb"


def _inner_box(rect, pk: Part, pl: Part):
    """Box contained in T*pk + S*pl for every (t, s) in the rectangle."""
    tlo, thi, slo, shi = rect
    lo, hi = [], []
    for (a1, b1), (a2, b2) in zip(pk.bounds, pl.bounds):
        lo.append((thi if a1 >= 0 else tlo) * a1 + (shi if a2 >= 0 else slo) * a2)
        hi.append((tlo if b1 >= 0 else thi) * b1 + (slo if b2 >= 0 else shi) * b2)
    return lo, hi


def _try_hit(rect, mu_mid, arc: Arc, pk: Part, pl: Part, tgt: Target,
             bits: int, ts=None) -> bool:
    """Certified 'some arc point of this segment reaches the target'."""
    tlo, thi, slo, shi = ts if ts is not None else arc.ts(mu_mid, bits)
    err = (thi - tlo) * pk.absmax + (shi - slo) * pl.absmax
    Tm, Sm = (tlo + thi) / 2, (slo + shi) / 2
    if pk.kind == "box" and pl.kind == "box":
        # box within err of the true combination at mu_mid
        cb = _combo_box(Tm, Sm, pk, pl)
        # (a) the whole nearby combination sits inside the target
        if tgt.admits_box([a - err for a, _ in cb], [b + err for _, b in cb]):
            return True
        # (b) a certified sub-box of the combination meets the target
        ilo, ihi = _inner_box((tlo, thi, slo, shi), pk, pl)
        if all(a <= b for a, b in zip(ilo, ihi)) and tgt.meets_box(ilo, ihi):
            return True
        # (c) Lipschitz certificate: the midpoint combination box meets the
        # target shrunk by the (t, s) enclosure error, so the true box at
        # the nearby arc point still meets the target; this covers axes
        # where (b) collapses because one operand is degenerate there
        if err > 0:
            shr = tgt.shrunk(err * Fraction(65, 64))
            if shr is not None and all(
                    max(a, c) <= min(b, d)
                    for (a, b), c, d in zip(cb, shr[0], shr[1])):
                return True
        return False
    # polytope route: with the origin in both bodies the lower-corner pair
    # is dominated by every pair of the segment, giving an exact certificate
    if pk.has_origin and pl.has_origin:
        eps = Fraction(1, 1 << 30)
        shr = tgt.shrunk(eps if any(iv.lo_open or iv.hi_open for iv in tgt.ivs) else F0)
        if shr is None:
            return False
        return _pair_meets_box(tlo, slo, pk, pl, shr[0], shr[1])
    # generic Lipschitz certificate
    if err > 0:
        shr = tgt.shrunk(err * Fraction(65, 64))
        if shr is None:
            return False
        return _pair_meets_box(Tm, Sm, pk, pl, shr[0], shr[1])
    shr = tgt.shrunk(Fraction(1, 1 << 40))
    if shr is not None and _pair_meets_box(Tm, Sm, pk, pl, shr[0], shr[1]):
        return True
    cl = tgt.closure_bounds()
    if not any(iv.lo_open or iv.hi_open for iv in tgt.ivs):
        return _pair_meets_box(Tm, Sm, pk, pl, cl[0], cl[1])
    return False


def _target_infs(dirs, tgt: Target) -> list:
    """Per dual direction: the target's infimum of u.x and whether it is
    approached only through an open face."""
    out = []
    for u, _, _, _ in dirs:
        inf_cl = F0
        open_face = False
        for c, iv in zip(u, tgt.ivs):
            if c > 0:
                inf_cl += c * iv.lo
                open_face = open_face or iv.lo_open
            elif c < 0:
                inf_cl += c * iv.hi
                open_face = open_face or iv.hi_open
        out.append((inf_cl, open_face))
    return out


def _segment_excludes(arc, cache, dirs, pk: Part, pl: Part, tgt: Target,
                      mu1, mu2, bits) -> bool:
    """Certified 'no arc point of this segment reaches the target'.

    Per dual direction u, the combination's support is a linear form in
    (t, s); the segment is dead for the target when the support stays below
    the target's infimum of u.x. An exact tie still excludes when that
    infimum is only approached through an open face.
    """
    for (u, hk, hl, _), (inf_cl, open_face) in zip(dirs, _target_infs(dirs, tgt)):
        h_hi = form_range(arc, cache, hk, hl, mu1, mu2, bits)[1]
        if h_hi < inf_cl or (h_hi == inf_cl and open_face):
            return True
    return False


# ---------------------------------------------------------------------------
# exact tangency exclusion
# ---------------------------------------------------------------------------

def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _pow_cmp(n, w, beta, p) -> int:
    """Exact sign of n * w^(1/p) - beta for rational n, beta and w > 0."""
    sv, sb = _sign(n), _sign(beta)
    if sv != sb:
        return 1 if sv > sb else -1
    if sv == 0:
        return 0
    pa, pb = p.numerator, p.denominator
    return sv * _sign(abs(n) ** pa * w ** pb - abs(beta) ** pa)


def _broot_sum_cmp(A, B, C, b: int):
    """Exact sign of A^(1/b) + B^(1/b) - C^(1/b) for nonnegative rationals,
    or None when the radicals cannot be resolved (b > 2, imperfect powers)."""
    if b == 1:
        return _sign(A + B - C)
    if b == 2:
        # square both sides: A + B + 2 sqrt(AB) against C
        D = C - A - B
        if D < 0:
            return 1
        return _sign(4 * A * B - D * D)
    ra, rb, rc = (perfect_root(Fraction(v), b) for v in (A, B, C))
    if ra is not None and rb is not None and rc is not None:
        return _sign(ra + rb - rc)
    return None


def _arc_sup_le(arc: Arc, n1, n2, beta) -> bool:
    """Certified sup over the arc of n1 t + n2 s <= beta.

    The sup has a closed form: the Hoelder bound (w1 n1^p + w2 n2^p)^(1/p)
    when both coefficients are positive, an arc endpoint otherwise. False
    means 'greater or undecidable'.
    """
    p = arc.p
    if n1 > 0 and n2 > 0:
        if beta <= 0:
            return False
        pa, pb = p.numerator, p.denominator
        c = _broot_sum_cmp(arc.w1 ** pb * n1 ** pa,
                           arc.w2 ** pb * n2 ** pa, beta ** pa, pb)
        return c is not None and c <= 0
    return (_pow_cmp(n1, arc.w1, beta, p) <= 0
            and _pow_cmp(n2, arc.w2, beta, p) <= 0)


def _strict_constraints(pk: Part, pl: Part, tgt: Target) -> list:
    """Open target faces as strict linear constraints n1 t + n2 s > beta.

    The combination box of the pair meets the target on an axis iff its
    upper end clears the face's lower bound and vice versa; for polytope
    parts the bounding box gives a sound relaxation.
    """
    cons = []
    for (a1, b1), (a2, b2), iv in zip(pk.bounds, pl.bounds, tgt.ivs):
        if iv.lo_open:
            cons.append((b1, b2, iv.lo))
        if iv.hi_open:
            cons.append((-a1, -a2, -iv.hi))
    return cons


def _feasible_side(arc: Arc, n1, n2, t0, s0):
    """Given n1 t0 + n2 s0 = beta at the arc point (t0, s0), which side of
    mu0 can satisfy the strict constraint: 'L', 'R', 'none', or None."""
    if n1 > 0 and n2 > 0:
        # concave along the arc: the derivative sign at mu0 decides; a zero
        # derivative means the constraint line is tangent and the strict
        # inequality never holds
        q = 1 / arc.invq
        a, b = q.numerator, q.denominator
        lhs = n2 ** b * arc.w2 ** (a - b) * Fraction(s0) ** (b - a)
        rhs = n1 ** b * arc.w1 ** (a - b) * Fraction(t0) ** (b - a)
        d = _sign(lhs - rhs)
        if d == 0:
            return "none"
        return "L" if d < 0 else "R"
    if n1 > 0:
        return "L"  # strictly decreasing along the arc
    if n2 > 0:
        return "R"
    return None  # convex case: the level set need not be one-sided


def _tangency_excludes(arc: Arc, pk: Part, pl: Part, tgt: Target) -> bool:
    """Exact last-resort OUT certificate for boundary tangencies.

    Subdivision cannot separate an arc that touches an open target face
    exactly; the touch point is algebraic, and exclusion reduces to rational
    sign tests on the closed-form support values of the arc.
    """
    if arc.fixed_ts is not None or arc.invq == 0:
        return False
    cons = _strict_constraints(pk, pl, tgt)
    for n1, n2, beta in cons:
        if (n1, n2) != (F0, F0) and _arc_sup_le(arc, n1, n2, beta):
            return True
    q = 1 / arc.invq
    qa, qb = q.numerator, q.denominator
    for i in range(len(cons)):
        for j in range(i + 1, len(cons)):
            a1, a2, bi = cons[i]
            e1, e2, bj = cons[j]
            det = a1 * e2 - a2 * e1
            if det == 0:
                # anti-parallel pair: the two strict half-planes conflict
                # outright when the strip between them is empty
                g = None
                if a1 != 0 and -e1 / a1 > 0:
                    g = -e1 / a1
                elif a1 == 0 and e1 == 0 and a2 != 0 and -e2 / a2 > 0:
                    g = -e2 / a2
                if g is not None and (a1 * g == -e1 and a2 * g == -e2
                                      and g * bi + bj >= 0):
                    return True
                continue
            t0 = (bi * e2 - a2 * bj) / det
            s0 = (a1 * bj - bi * e1) / det
            if t0 <= 0 or s0 <= 0:
                continue
            on = _broot_sum_cmp(t0 ** qa / arc.w1 ** (qa - qb),
                                s0 ** qa / arc.w2 ** (qa - qb), F1, qb)
            if on != 0:
                continue
            si = _feasible_side(arc, a1, a2, t0, s0)
            sj = _feasible_side(arc, e1, e2, t0, s0)
            # both constraints bind at the same arc point; they are jointly
            # satisfiable only if they open toward the same side of it
            if si == "none" or sj == "none" or {si, sj} == {"L", "R"}:
                return True
    return False


_HINT_STEPS = 64


def _float_hints(arc: Arc, pk: Part, pl: Part, items) -> dict:
    """Float scan of the arc: for each target, the grid index of the
    coefficient pair with the most robust overlap, when one exists.

    Purely advisory; every hint is re-proved by the certified hit test.
    """
    p = float(arc.p)
    invq = float(arc.invq)
    c1 = float(arc.w1) ** (1.0 / p)
    c2 = float(arc.w2) ** (1.0 / p)
    kb = [(float(a), float(b)) for a, b in pk.bounds]
    lb = [(float(a), float(b)) for a, b in pl.bounds]
    grid = []
    for j in range(_HINT_STEPS + 1):
        mu = j / _HINT_STEPS
        t = c1 * (1.0 - mu) ** invq
        s = c2 * mu ** invq
        grid.append((j, [(t * a1 + s * a2, t * b1 + s * b2)
                         for (a1, b1), (a2, b2) in zip(kb, lb)]))
    hints = {}
    for tid, tgt in items:
        ti = [(float(iv.lo), float(iv.hi)) for iv in tgt.ivs]
        best_m, best_j = -1e300, None
        for j, cb in grid:
            m = min(min(ch, th) - max(cl, tl)
                    for (cl, ch), (tl, th) in zip(cb, ti))
            if m > best_m:
                best_m, best_j = m, j
        if best_m > 1e-7:
            hints[tid] = best_j
    return hints


def cover_targets(K: SetRep, L: SetRep, arc: Arc, targets: dict,
                  *, work_bits: int = 80, max_depth: int = 130) -> dict:
    """Decide, per target box, whether the p-combination of K and L meets it.

    targets maps an id to a Target; returns id -> "in" / "out" / "amb".
    """
    parts_k = parts_of(K)
    parts_l = parts_of(L)
    status = {tid: OUT for tid in targets}
    maybe: dict = {tid: False for tid in targets}
    for pk, pl in itertools.product(parts_k, parts_l):
        live = [tid for tid, st in status.items() if st != IN]
        if not live:
            break
        cache = _FormCache(arc)
        dirs = _pair_directions(pk, pl)
        if all(a == b for a, b in pk.bounds) and all(a == b for a, b in pl.bounds):
            # point pair: degenerate targets are decided by the exact
            # curve solve, which interval enclosures cannot certify
            x = [a for a, _ in pk.bounds]
            y = [a for a, _ in pl.bounds]
            rest = []
            for tid in live:
                tgt = targets[tid]
                if all(iv.lo == iv.hi for iv in tgt.ivs):
                    r = point_on_pair_curve(arc, x, y, [iv.lo for iv in tgt.ivs])
                    if r is True:
                        status[tid] = IN
                        continue
                    if r is False:
                        continue  # this pair's curve misses the target
                    maybe[tid] = True
                    continue
                rest.append(tid)
            live = rest
            if not live:
                continue
        if arc.fixed_ts is None and live:
            # float pre-pass: most targets sit well inside the combination
            # for some mu; one certified hit attempt at the hinted spot
            # resolves them without touching the subdivision
            hints = _float_hints(arc, pk, pl,
                                 [(tid, targets[tid]) for tid in live])
            rest = []
            half = Fraction(1, 2 * _HINT_STEPS)
            for tid in live:
                j = hints.get(tid)
                if j is None:
                    rest.append(tid)
                    continue
                mid = Fraction(j, _HINT_STEPS)
                m1, m2 = max(F0, mid - half), min(F1, mid + half)
                rect = arc.rect(m1, m2, work_bits)
                if _try_hit(rect, (m1 + m2) / 2, arc, pk, pl, targets[tid],
                            work_bits):
                    status[tid] = IN
                else:
                    rest.append(tid)
            live = rest
            if not live:
                continue
        inf_cache: dict = {}
        exc_cache: dict = {}
        stack = [(F0, F1, live, 0)]
        while stack:
            mu1, mu2, ids, depth = stack.pop()
            # precision grows in coarse steps so sibling segments and the
            # parent midpoint share cached ts evaluations
            bits = min(work_bits + 32 * (depth // 32), MAX_BITS)
            rect = arc.rect(mu1, mu2, bits)
            mu_mid = (mu1 + mu2) / 2
            ts_mid = cache.ts(mu_mid, bits)
            # form suprema and target face infima are shared across targets
            # and segments respectively; hoisting them out of the per-target
            # loop is what keeps many-target solves affordable
            hr = [form_range(arc, cache, hk, hl, mu1, mu2, bits)[1]
                  for _, hk, hl, _ in dirs]
            keep = []
            for tid in ids:
                if status[tid] == IN:
                    continue
                tgt = targets[tid]
                infs = inf_cache.get(tid)
                if infs is None:
                    infs = inf_cache[tid] = _target_infs(dirs, tgt)
                if any(h < f or (h == f and op)
                       for h, (f, op) in zip(hr, infs)):
                    continue
                if _try_hit(rect, mu_mid, arc, pk, pl, tgt, bits,
                            ts=ts_mid):
                    status[tid] = IN
                    continue
                keep.append(tid)
            if not keep:
                continue
            if depth >= max_depth or arc.fixed_ts is not None:
                if arc.fixed_ts is not None and work_bits + depth < MAX_BITS:
                    # degenerate arc: the only refinement is more precision
                    stack.append((mu1, mu2, keep, depth + 64))
                    continue
                for tid in keep:
                    exc = exc_cache.get(tid)
                    if exc is None:
                        exc = exc_cache[tid] = _tangency_excludes(
                            arc, pk, pl, targets[tid])
                    if not exc:
                        maybe[tid] = True
                continue
            stack.append((mu1, mu_mid, keep, depth + 1))
            stack.append((mu_mid, mu2, keep, depth + 1))
    for tid, st in status.items():
        if st != IN and maybe[tid]:
            status[tid] = AMB
    return status


# ---------------------------------------------------------------------------
# engine 2: certified Chebyshev distance from a point to the combination
# ---------------------------------------------------------------------------

def _primitive(u):
    from math import gcd
    den = 1
    for c in u:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in u]
    g = 0
    for c in ints:
        g = gcd(g, abs(c))
    return tuple(Fraction(c, g) for c in ints)


def _pair_directions(pk: Part, pl: Part):
    """Dual directions with combo support values linear in (t, s).

    dist_inf(z, C) = max over ||u||_1 <= 1 of z.u - h(C, u); the maximizer is
    a normal of C. Axis directions suffice for box pairs; in the plane the
    edge normals of both operands complete the normal fan of every
    combination, making the dual bound pointwise exact.
    """
    n = len(pk.bounds)
    dirs = set()
    for i in range(n):
        e = [Fraction(0)] * n
        e[i] = Fraction(1)
        dirs.add(tuple(e))
        e[i] = Fraction(-1)
        dirs.add(tuple(e))
    if n == 2 and (pk.kind == "poly" or pl.kind == "poly"):
        for part in (pk, pl):
            vs = part.vertices
            for a in range(len(vs)):
                for b in range(a + 1, len(vs)):
                    dx = vs[b][0] - vs[a][0]
                    dy = vs[b][1] - vs[a][1]
                    if dx == 0 and dy == 0:
                        continue
                    u = _primitive((dy, -dx))
                    dirs.add(u)
                    dirs.add((-u[0], -u[1]))
    out = []
    for u in sorted(dirs):
        hk = max(sum(c * x for c, x in zip(u, v)) for v in pk.vertices)
        hl = max(sum(c * x for c, x in zip(u, v)) for v in pl.vertices)
        out.append((u, hk, hl, sum(abs(c) for c in u)))
    return out


def _dist_lower(arc, cache, dirs, pk: Part, pl: Part, z,
                mu1, mu2, bits) -> Fraction:
    lb = F0
    for u, hk, hl, n1 in dirs:
        h_hi = form_range(arc, cache, hk, hl, mu1, mu2, bits)[1]
        lb = max(lb, (sum(c * zi for c, zi in zip(u, z)) - h_hi) / n1)
    if pk.kind == "box" and pl.kind == "box":
        return lb
    if len(pk.bounds) <= 2:
        return lb  # planar dual directions are complete
    # higher-dimensional polytopes: add the Lipschitz LP bound
    tlo, thi, slo, shi = arc.rect(mu1, mu2, bits)
    err = (thi - tlo) * pk.absmax + (shi - slo) * pl.absmax
    Tm, Sm = (tlo + thi) / 2, (slo + shi) / 2
    return max(lb, _pair_dist(z, Tm, Sm, pk, pl) - err)


def _dist_upper(mu, arc: Arc, z, pk: Part, pl: Part, bits: int) -> Fraction:
    tlo, thi, slo, shi = arc.ts(mu, bits)
    err = (thi - tlo) * pk.absmax + (shi - slo) * pl.absmax
    Tm, Sm = (tlo + thi) / 2, (slo + shi) / 2
    return _pair_dist(z, Tm, Sm, pk, pl) + err


def min_dist(K: SetRep, L: SetRep, arc: Arc, z) -> Cert:
    """Enclosure of inf over the combination of the l_inf distance to z."""
    z = tuple(Fraction(c) for c in z)
    parts_k = parts_of(K)
    parts_l = parts_of(L)
    pairs = list(itertools.product(parts_k, parts_l))

    def fn(bits: int):
        work = bits + 16
        cache = _FormCache(arc)
        dir_sets = [_pair_directions(pk, pl) for pk, pl in pairs]

        def lower_of(mu1, mu2, i):
            pk, pl = pairs[i]
            return _dist_lower(arc, cache, dir_sets[i], pk, pl, z,
                               mu1, mu2, work)

        upper = None
        heap = []
        for i, (pk, pl) in enumerate(pairs):
            for mu in (F0, Fraction(1, 2), F1):
                u = _dist_upper(mu, arc, z, pk, pl, work)
                upper = u if upper is None else min(upper, u)
            heappush(heap, (lower_of(F0, F1, i), F0, F1, i))
        gap_target = Fraction(1, 1 << bits)
        rounds = 0
        while heap and rounds < 20000:
            lb, mu1, mu2, i = heappop(heap)
            if lb >= upper or upper - lb <= gap_target:
                heappush(heap, (lb, mu1, mu2, i))
                break
            rounds += 1
            pk, pl = pairs[i]
            mu_mid = (mu1 + mu2) / 2
            upper = min(upper, _dist_upper(mu_mid, arc, z, pk, pl, work))
            if arc.fixed_ts is not None:
                work = min(work + 64, MAX_BITS)
                heappush(heap, (lower_of(mu1, mu2, i), mu1, mu2, i))
                if work >= MAX_BITS:
                    break
                continue
            for a, b in ((mu1, mu_mid), (mu_mid, mu2)):
                nlb = lower_of(a, b, i)
                if nlb < upper:
                    heappush(heap, (nlb, a, b, i))
        lower = min((h[0] for h in heap), default=upper)
        return min(lower, upper), upper

    return Cert(fn)
