"""Discrete Borell-Brascamp-Lieb evaluators.

An instance carries weights (lambda, p), an exponent alpha in [-1/n, +inf],
sets K, L and finitely supported f, g. The hypothesis constrains h at every
point t(mu) x + s(mu) y of the coefficient arc; the minimal admissible h is
the sup of the arc-weighted alpha-sum S(mu) = (t f(x)^alpha + s g(y)^alpha)^(1/alpha)
over the feasible mu of each support pair. The left-hand side of the
inequality sums the cube sup-convolution of h over lattice points of the
cube-dilated combination; with the minimal oracle that sup-convolution is
computed directly by relaxing the hit constraint to the open unit cube.

Objectives along the arc are handled through the same exact segment bounds
as the geometric solvers: S^alpha is a linear form in (t, s) with positive
coefficients, hence concave in mu with one interior stationary point.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from heapq import heappop, heappush

from .arc import (Arc, Target, _FormCache, _mk_box_part, _odds_ratio, _on_arc,
                  _pair_directions, _segment_excludes, _try_hit, cover_targets,
                  linear_extreme, make_arc)
from .certified import Cert
from .gridfun import GridFunction, sup_convolution
from .rationals import INF, NEG_INF, Ext, check_alpha, check_p
from .report import CheckReport, make_report
from .scalars import alpha_mean, alpha_sum, bbl_exponent
from .sets import (AxisBox, FinitePoints, Iv, SetRep, VPolytope, bounding_box,
                   box_corners, contains_point, make_point, minkowski_sum,
                   scale_exact)

F0 = Fraction(0)
F1 = Fraction(1)


class NonAdmissibleH(ValueError):
    """An explicit h fails the hypothesis on some support pair."""


@dataclass(frozen=True)
class BblInstance:
    n: int
    p: Fraction
    lam: Fraction
    alpha: Ext
    k: SetRep
    l: SetRep
    f: GridFunction
    g: GridFunction
    h: GridFunction | None = None  # None selects the minimal oracle

    def __post_init__(self):
        object.__setattr__(self, "p", check_p(self.p))
        object.__setattr__(self, "lam", Fraction(self.lam))
        object.__setattr__(self, "alpha", check_alpha(self.alpha, self.n))
        if not 0 < self.lam < 1:
            raise ValueError("lambda must lie in (0, 1)")
        if self.k.dim != self.n or self.l.dim != self.n:
            raise ValueError("set dimensions must equal n")
        if self.f.dim != self.n or self.g.dim != self.n:
            raise ValueError("function dimensions must equal n")
        if self.h is not None and self.h.dim != self.n:
            raise ValueError("h dimension must equal n")
        for pt, _ in self.f.support:
            if not contains_point(self.k, pt):
                raise ValueError(f"f has support {pt} outside K")
        for pt, _ in self.g.support:
            if not contains_point(self.l, pt):
                raise ValueError(f"g has support {pt} outside L")

    @property
    def h_mode(self) -> str:
        return "minimal" if self.h is None else "explicit"

    def pairs(self):
        """Support pairs (x, f(x), y, g(y)) with f(x) g(y) > 0."""
        return [(x, a, y, b)
                for x, a in self.f.support for y, b in self.g.support]

    def arc(self) -> Arc:
        # shared across all evaluation points so the coefficient enclosure
        # cache keeps paying off
        arc = self.__dict__.get("_arc")
        if arc is None:
            arc = make_arc(1 - self.lam, self.lam, self.p)
            object.__setattr__(self, "_arc", arc)
        return arc


def _ivl(lo: Fraction, hi: Fraction) -> Cert:
    lo, hi = Fraction(lo), Fraction(hi)
    return Cert(lambda bits: (lo, hi))


def _sup_cert(sure: list[Cert], maybe: list[Cert]) -> Cert:
    """sup of the sure values (0 if none); maybe values widen the upper end."""
    if not sure and not maybe:
        return Cert.exact(0)

    def fn(bits: int):
        lo = max([c.bounds(bits)[0] for c in sure], default=F0)
        hi = max([c.bounds(bits)[1] for c in sure + maybe], default=F0)
        return max(lo, F0), max(hi, lo, F0)

    return Cert(fn)


def _ts_at(arc: Arc, mu: Fraction) -> tuple[Cert, Cert]:
    fx = arc.fixed_ts
    if fx is not None:
        return fx
    t = arc.c1 * Cert.rational_pow(1 - mu, arc.invq)
    s = arc.c2 * Cert.rational_pow(mu, arc.invq)
    return t, s


# ---------------------------------------------------------------------------
# per-pair objectives S(mu) along the arc
# ---------------------------------------------------------------------------

class _FiniteObjective:
    """S(mu) = (t a^alpha + s b^alpha)^(1/alpha) for finite alpha != 0.

    The inner form F = t A + s B has positive coefficients, so it is concave
    in mu: its segment maximum is an endpoint value or the global Hoelder
    bound, and its minimum always sits at a segment endpoint.
    """

    def __init__(self, arc: Arc, a: Fraction, b: Fraction, alpha: Fraction):
        self.arc = arc
        self.alpha = Fraction(alpha)
        self.inv = 1 / self.alpha
        self.A = Cert.rational_pow(a, self.alpha)
        self.B = Cert.rational_pow(b, self.alpha)
        ap = self.alpha * arc.p
        self.rho = Cert.rational_pow(Fraction(b, a), ap) * (arc.w2 / arc.w1)
        self.gmax_f = (Cert.rational_pow(a, ap) * arc.w1
                       + Cert.rational_pow(b, ap) * arc.w2).pow(1 / arc.p)
        self.sup_cap = self.arc_sup().bounds(64)[1]

    def _f_bounds(self, mu: Fraction, bits: int):
        tlo, thi, slo, shi = self.arc.ts(mu, bits)
        alo, ahi = self.A.bounds(bits)
        blo, bhi = self.B.bounds(bits)
        return tlo * alo + slo * blo, thi * ahi + shi * bhi

    def _stationary_inside(self, mu1: Fraction, mu2: Fraction) -> bool:
        r1 = _odds_ratio(mu1)
        r2 = _odds_ratio(mu2)
        if r1 is not None and self.rho.separate(r1, 200) == -1:
            return False
        if r2 is not None and self.rho.separate(r2, 200) == 1:
            return False
        return True

    def seg_hi(self, mu1: Fraction, mu2: Fraction, bits: int) -> Fraction:
        f1 = self._f_bounds(mu1, bits)
        f2 = self._f_bounds(mu2, bits)
        if self.alpha > 0:
            fhi = max(f1[1], f2[1])
            if self._stationary_inside(mu1, mu2):
                fhi = max(fhi, self.gmax_f.bounds(bits)[1])
            if fhi <= 0:
                return F0
            return min(self.sup_cap,
                       Cert.rational_pow(fhi, self.inv).bounds(bits)[1])
        flo = min(f1[0], f2[0])
        if flo <= 0:
            return self.sup_cap  # coarse bounds touch 0: no useful cap yet
        return min(self.sup_cap,
                   Cert.rational_pow(flo, self.inv).bounds(bits)[1])

    def seg_lo(self, mu1: Fraction, mu2: Fraction, bits: int) -> Fraction:
        f1 = self._f_bounds(mu1, bits)
        f2 = self._f_bounds(mu2, bits)
        if self.alpha > 0:
            flo = min(f1[0], f2[0])
            if flo <= 0:
                return F0
            return Cert.rational_pow(flo, self.inv).bounds(bits)[0]
        fhi = max(f1[1], f2[1])
        if self._stationary_inside(mu1, mu2):
            fhi = max(fhi, self.gmax_f.bounds(bits)[1])
        return max(F0, Cert.rational_pow(fhi, self.inv).bounds(bits)[0])

    def value_at_ts(self, t: Cert, s: Cert) -> Cert:
        return (self.A * t + self.B * s).pow(self.inv)

    def value_at_mu(self, mu: Fraction) -> Cert:
        return self.value_at_ts(*_ts_at(self.arc, mu))

    def arc_sup(self) -> Cert:
        if self.alpha > 0:
            return self.gmax_f.pow(self.inv)
        # 1/alpha < 0: S is maximal where F is minimal, i.e. at an endpoint
        return Cert.max_of([self.value_at_ts(self.arc.c1, Cert.exact(0)),
                            self.value_at_ts(Cert.exact(0), self.arc.c2)])


class _InfObjective:
    """alpha = +inf (max) or -inf (min); interior mu gives max/min(a, b),
    the arc endpoints drop one term and give a or b respectively."""

    def __init__(self, a: Fraction, b: Fraction, maximize: bool):
        self.a, self.b = Fraction(a), Fraction(b)
        self.maximize = maximize
        self.vmax = max(self.a, self.b)
        self.vmin = min(self.a, self.b)
        self.sup_cap = self.vmax

    def _interior(self) -> Fraction:
        return self.vmax if self.maximize else self.vmin

    def seg_hi(self, mu1: Fraction, mu2: Fraction, bits: int) -> Fraction:
        hi = self._interior()
        if mu1 == 0:
            hi = max(hi, self.a)
        if mu2 == 1:
            hi = max(hi, self.b)
        return hi

    def seg_lo(self, mu1: Fraction, mu2: Fraction, bits: int) -> Fraction:
        lo = self._interior()
        if mu1 == 0:
            lo = min(lo, self.a)
        if mu2 == 1:
            lo = min(lo, self.b)
        return lo

    def value_at_ts(self, t: Cert, s: Cert) -> Cert:
        st = Cert.wrap(t).separate(0, 200)
        ss = Cert.wrap(s).separate(0, 200)
        if ss == 0:
            return Cert.exact(self.a)
        if st == 0:
            return Cert.exact(self.b)
        if st == 1 and ss == 1:
            return Cert.exact(self._interior())
        return _ivl(min(self.a, self.b, self._interior()), self.vmax)

    def value_at_mu(self, mu: Fraction) -> Cert:
        if mu == 0:
            return Cert.exact(self.a)
        if mu == 1:
            return Cert.exact(self.b)
        return Cert.exact(self._interior())

    def arc_sup(self) -> Cert:
        return Cert.exact(self.vmax)  # endpoints contribute a and b


def _make_objective(arc: Arc, a: Fraction, b: Fraction, alpha: Ext):
    if alpha == INF:
        return _InfObjective(a, b, True)
    if alpha == NEG_INF:
        return _InfObjective(a, b, False)
    return _FiniteObjective(arc, a, b, Fraction(alpha))


# ---------------------------------------------------------------------------
# exact-hit analysis: feasible mu of {t x + s y = z} per support pair
# ---------------------------------------------------------------------------

def _psi(arc: Arc, gamma: Fraction, mu: Fraction) -> Cert:
    t, s = _ts_at(arc, mu)
    return t + s * gamma


def _root_value(arc: Arc, gamma: Fraction, delta: Fraction,
                a: Fraction, b: Fraction, sign_at_a: int, obj) -> Cert:
    """S at the unique root of psi = delta inside [a, b], by bisection."""

    def fn(bits: int):
        lo_mu, hi_mu = a, b
        budget = min(400, bits + 120)
        for _ in range(bits + 24):
            mid = (lo_mu + hi_mu) / 2
            d = (_psi(arc, gamma, mid) - delta).separate(0, budget)
            if d == 0:
                return obj.value_at_mu(mid).bounds(bits)
            if d is None:
                break
            if d == sign_at_a:
                lo_mu = mid
            else:
                hi_mu = mid
        lo = obj.seg_lo(lo_mu, hi_mu, bits + 16)
        hi = obj.seg_hi(lo_mu, hi_mu, bits + 16)
        return max(F0, lo), max(hi, lo, F0)

    return Cert(fn)


def _rank1_values(arc: Arc, gamma: Fraction, delta: Fraction, obj):
    """Values of S over the roots of t + gamma s = delta (colinear pair)."""
    sure: list[Cert] = []
    maybe: list[Cert] = []
    hi_ext = linear_extreme(arc, F1, gamma, True)
    lo_ext = linear_extreme(arc, F1, gamma, False)
    s_hi = hi_ext.separate(delta, 400)
    s_lo = lo_ext.separate(delta, 400)
    if s_hi == -1 or s_lo == 1:
        return sure, maybe  # delta outside the range of psi
    e0 = arc.c1.separate(delta, 400)
    e1 = (arc.c2 * gamma).separate(delta, 400)
    if e0 == 0:
        sure.append(obj.value_at_mu(F0))
    if e1 == 0:
        sure.append(obj.value_at_mu(F1))
    if gamma < 0:
        # psi strictly decreasing: at most one interior root
        if e0 == 1 and e1 == -1:
            sure.append(_root_value(arc, gamma, delta, F0, F1, 1, obj))
        elif e0 is None or e1 is None:
            maybe.append(obj.arc_sup())
        return sure, maybe
    # gamma > 0: psi concave with interior peak hi_ext
    if s_hi == 0:
        # tangency: the single root is the stationary point, in closed form
        t = Cert.rational_pow(delta, 1 - arc.p) * arc.w1
        s = (Cert.rational_pow(delta, 1 - arc.p)
             * Cert.rational_pow(gamma, arc.p - 1) * arc.w2)
        sure.append(obj.value_at_ts(t, s))
        return sure, maybe
    if s_hi is None:
        maybe.append(obj.arc_sup())
        return sure, maybe
    # delta strictly below the peak: locate a mu with psi > delta
    rho = Cert.rational_pow(gamma, arc.p) * (arc.w2 / arc.w1)
    mu_m = (rho / (1 + rho)).midpoint(80)
    mu_m = min(max(mu_m, Fraction(1, 1 << 40)), 1 - Fraction(1, 1 << 40))
    sm = (_psi(arc, gamma, mu_m) - delta).separate(0, 400)
    if sm != 1:
        for j in range(1, 64):
            mu_m = Fraction(j, 64)
            sm = (_psi(arc, gamma, mu_m) - delta).separate(0, 400)
            if sm == 1:
                break
            if sm == 0:
                sure.append(obj.value_at_mu(mu_m))
        if sm != 1:
            maybe.append(obj.arc_sup())
            return sure, maybe
    # the superlevel set {psi >= delta} is an interval around mu_m; each
    # side holds exactly one crossing when its endpoint sits strictly below
    if e0 == -1:
        sure.append(_root_value(arc, gamma, delta, F0, mu_m, -1, obj))
    elif e0 is None:
        maybe.append(obj.arc_sup())
    if e1 == -1:
        sure.append(_root_value(arc, gamma, delta, mu_m, F1, 1, obj))
    elif e1 is None:
        maybe.append(obj.arc_sup())
    return sure, maybe


def _scaled_hit_values(arc: Arc, vec, z, w: Fraction, first_side: bool, obj):
    """One operand point is 0: the pair curve is {c vec : 0 <= c <= w^(1/p)}."""
    sure: list[Cert] = []
    maybe: list[Cert] = []
    base = next((i for i in range(len(vec)) if vec[i] != 0), None)
    if base is None:
        if all(c == 0 for c in z):
            sure.append(obj.arc_sup())
        return sure, maybe
    c0 = z[base] / vec[base]
    if c0 < 0 or any(c0 * vi != zi for vi, zi in zip(vec, z)):
        return sure, maybe
    sep = Cert.rational_pow(c0, arc.p).separate(w, 400)
    if sep == 1:
        return sure, maybe
    q = arc.p / (arc.p - 1)
    inner = 1 - Cert.rational_pow(c0, q) / Cert.rational_pow(w, q / arc.p)
    other = Cert.max_of([inner, Cert.exact(0)]).pow(1 / q)
    if first_side:
        # vec is the K point: c0 plays t, the matching s follows from mu
        val = obj.value_at_ts(Cert.exact(c0), arc.c2 * other)
    else:
        val = obj.value_at_ts(arc.c1 * other, Cert.exact(c0))
    if sep is None:
        maybe.append(val)
    else:
        sure.append(val)
    return sure, maybe


def _pair_exact_values(arc: Arc, x, y, z, obj):
    """S values over the feasible mu of t x + s y = z, exact analysis."""
    n = len(z)
    if all(c == 0 for c in x) and all(c == 0 for c in y):
        if all(c == 0 for c in z):
            return [obj.arc_sup()], []
        return [], []
    if all(c == 0 for c in x):
        return _scaled_hit_values(arc, y, z, arc.w2, False, obj)
    if all(c == 0 for c in y):
        return _scaled_hit_values(arc, x, z, arc.w1, True, obj)
    for i in range(n):
        for j in range(i + 1, n):
            det = x[i] * y[j] - x[j] * y[i]
            if det == 0:
                continue
            t = (z[i] * y[j] - z[j] * y[i]) / det
            s = (x[i] * z[j] - x[j] * z[i]) / det
            if t < 0 or s < 0:
                return [], []
            if any(t * xi + s * yi != zi for xi, yi, zi in zip(x, y, z)):
                return [], []
            val = obj.value_at_ts(Cert.exact(t), Cert.exact(s))
            on = _on_arc(arc, t, s)
            if on is True:
                return [val], []
            if on is None:
                return [], [val]
            return [], []
    base = next(i for i in range(n) if x[i] != 0)
    gamma = y[base] / x[base]
    delta = z[base] / x[base]
    if any(zi != delta * xi for xi, zi in zip(x, z)):
        return [], []
    return _rank1_values(arc, gamma, delta, obj)


# ---------------------------------------------------------------------------
# cube-relaxed sup: branch and bound over mu against an open box target
# ---------------------------------------------------------------------------

def _sup_relax(arc: Arc, items, tgt: Target, gap: Fraction,
               round_cap: int, depth_cap: int = 220,
               seed_lo: Fraction = F0,
               base_bits: int = 64) -> tuple[Fraction, Fraction]:
    """(lower, upper) for sup over pairs and feasible mu of S(mu).

    items: (part_x, part_y, dirs, objective) per support pair. A popped
    segment is dropped when certified unreachable; a certified hit raises
    the lower bound by the segment minimum of S. seed_lo pre-loads the
    incumbent with a bound established elsewhere.
    """
    cache = _FormCache(arc)
    best_lo = seed_lo
    amb_hi = F0
    heap = []
    seq = itertools.count()
    for idx, (pk, pl, dirs, obj) in enumerate(items):
        hi = obj.seg_hi(F0, F1, base_bits)
        heappush(heap, (-hi, next(seq), idx, F0, F1, 0))
    rounds = 0
    while heap and rounds < round_cap:
        neg_hi, _, idx, mu1, mu2, depth = heappop(heap)
        hi = -neg_hi
        if hi <= best_lo + gap:
            heappush(heap, (neg_hi, next(seq), idx, mu1, mu2, depth))
            break
        rounds += 1
        pk, pl, dirs, obj = items[idx]
        bits = base_bits + depth
        if _segment_excludes(arc, cache, dirs, pk, pl, tgt, mu1, mu2, bits):
            continue
        mu_mid = (mu1 + mu2) / 2
        if _try_hit(arc.rect(mu1, mu2, bits), mu_mid, arc, pk, pl, tgt, bits):
            best_lo = max(best_lo, obj.seg_lo(mu1, mu2, bits))
        if depth >= depth_cap:
            amb_hi = max(amb_hi, hi)
            continue
        for a, b in ((mu1, mu_mid), (mu_mid, mu2)):
            h = obj.seg_hi(a, b, bits + 1)
            if h > best_lo:
                heappush(heap, (-h, next(seq), idx, a, b, depth + 1))
    hi_total = max([best_lo, amb_hi] + [-e[0] for e in heap])
    return best_lo, hi_total


# ---------------------------------------------------------------------------
# the minimal admissible h and sides of the inequality
# ---------------------------------------------------------------------------

def _require_minimal(instance: BblInstance):
    if instance.h is not None:
        raise ValueError("instance carries an explicit h; the minimal "
                         "oracle only applies in minimal mode")
    if not isinstance(instance.k, FinitePoints) or \
            not isinstance(instance.l, FinitePoints):
        raise TypeError("minimal-oracle instances need FinitePoints K and L "
                        "so the support-pair sup is exhaustively computable")


def _in_open_cube(w, z) -> bool:
    return all(abs(a - b) < 1 for a, b in zip(w, z))


def _reaches_ts(w, z, top: int) -> bool:
    # a support point w of h feeds the extension at z iff z - w lies in
    # (-1, top)^n; the layer-cake step needs {h > r} + (-1, top)^n to be
    # a subset of the superlevel set of the extension, which forces this
    # orientation (for top = 1 it is the usual open unit cube)
    return all(-1 < zi - wi < top for wi, zi in zip(w, z))


def minimal_admissible_h(instance: BblInstance, z, relax_cube: bool = False,
                         tol=Fraction(1, 10 ** 9)) -> Cert:
    """Smallest value h may take at z consistent with the hypothesis.

    With relax_cube the hit constraint t x + s y = z is relaxed to
    t x + s y in z + (-1, 1)^n, which evaluates the cube sup-convolution of
    the minimal h directly. Returns 0 when no support pair is feasible.
    """
    _require_minimal(instance)
    z = make_point(z)
    if len(z) != instance.n:
        raise ValueError("point dimension mismatch")
    pairs = instance.pairs()
    if not pairs:
        return Cert.exact(0)
    lam, alpha = instance.lam, instance.alpha
    arc = instance.arc()
    if alpha == 0:
        # Prekopa-Leindler form: hypothesis read at mu = lambda only, where
        # the coefficients collapse to the exact pair (1 - lambda, lambda)
        vals = []
        for x, a, y, b in pairs:
            w = tuple((1 - lam) * xi + lam * yi for xi, yi in zip(x, y))
            ok = _in_open_cube(w, z) if relax_cube else w == z
            if ok:
                vals.append(Cert.rational_pow(a, 1 - lam)
                            * Cert.rational_pow(b, lam))
        return _sup_cert(vals, [])
    if arc.fixed_ts is not None:
        # p = 1 with lambda in (0, 1): one exact rational coefficient pair
        t0, s0 = 1 - lam, lam
        vals = []
        for x, a, y, b in pairs:
            w = tuple(t0 * xi + s0 * yi for xi, yi in zip(x, y))
            ok = _in_open_cube(w, z) if relax_cube else w == z
            if ok:
                vals.append(_fixed_value(a, b, t0, s0, alpha))
        return _sup_cert(vals, [])
    objs = instance.__dict__.get("_objs")
    if objs is None:
        objs = [_make_objective(arc, a, b, alpha) for _, a, _, b in pairs]
        object.__setattr__(instance, "_objs", objs)
    if not relax_cube:
        sure: list[Cert] = []
        maybe: list[Cert] = []
        for (x, _, y, _), obj in zip(pairs, objs):
            s_vals, m_vals = _pair_exact_values(arc, x, y, z, obj)
            sure.extend(s_vals)
            maybe.extend(m_vals)
        return _sup_cert(sure, maybe)
    tgt = Target(tuple(Iv(zi - 1, zi + 1, True, True) for zi in z))
    items = []
    exact_vals: list[Cert] = []
    c1hi = arc.c1.bounds(64)[1]
    c2hi = arc.c2.bounds(64)[1]
    for (x, _, y, _), obj in zip(pairs, objs):
        # pair image over the whole arc sits inside a static box; when that
        # box lies strictly inside the target every mu is feasible and the
        # sup is the closed-form arc supremum, no branching needed
        span = [(min(F0, c1hi * xi) + min(F0, c2hi * yi),
                 max(F0, c1hi * xi) + max(F0, c2hi * yi))
                for xi, yi in zip(x, y)]
        if all(iv.lo < a and b < iv.hi
               for (a, b), iv in zip(span, tgt.ivs)):
            exact_vals.append(obj.arc_sup())
            continue
        pk = _mk_box_part([(c, c) for c in x])
        pl = _mk_box_part([(c, c) for c in y])
        items.append((pk, pl, _pair_directions(pk, pl), obj))
    if not items:
        return _sup_cert(exact_vals, [])
    # tol caps the branching depth: coefficient widths shrink like
    # (delta mu)^(1/q), hence the factor q on the bit budget
    tol = Fraction(tol)
    q = float(instance.p / (instance.p - 1))
    tol_bits = tol.denominator.bit_length() - tol.numerator.bit_length()
    depth_cap = min(400, int(q * (tol_bits + 24)) + 32)

    def fn(bits: int):
        gap = Fraction(1, 1 << bits)
        cap = 3000 + 60 * bits
        seed = F0
        hi0 = F0
        for v in exact_vals:
            a, b = v.bounds(bits)
            seed = max(seed, a)
            hi0 = max(hi0, b)
        lo, hi = _sup_relax(arc, items, tgt, gap, cap, depth_cap, seed,
                            base_bits=max(40, bits + 8))
        return max(lo, seed), max(lo, hi, hi0, seed)

    return Cert(fn)


def _fixed_value(a, b, t0: Fraction, s0: Fraction, alpha: Ext) -> Cert:
    if alpha == INF:
        return Cert.exact(max(a, b))
    if alpha == NEG_INF:
        return Cert.exact(min(a, b))
    return alpha_sum(a, b, t0, s0, alpha)


# ---------------------------------------------------------------------------
# explicit-h admissibility
# ---------------------------------------------------------------------------

def validate_admissible(instance: BblInstance):
    """Check the hypothesis for an explicit h on every support pair.

    For p > 1 a nondegenerate pair sweeps a continuum of hypothesis points;
    a finitely supported h is zero at all but finitely many of them while
    the required bound stays positive, so such instances are rejected
    outright (only alpha = 0, p = 1, or all-zero pairs are checkable).
    """
    if instance.h is None:
        raise ValueError("no explicit h to validate")
    h = instance.h
    lam, alpha = instance.lam, instance.alpha
    arc = instance.arc()
    for x, a, y, b in instance.pairs():
        if alpha == 0:
            w = tuple((1 - lam) * xi + lam * yi for xi, yi in zip(x, y))
            need = Cert.rational_pow(a, 1 - lam) * Cert.rational_pow(b, lam)
        elif arc.fixed_ts is not None:
            w = tuple((1 - lam) * xi + lam * yi for xi, yi in zip(x, y))
            need = _fixed_value(a, b, 1 - lam, lam, alpha)
        elif all(c == 0 for c in x) and all(c == 0 for c in y):
            w = (F0,) * instance.n
            need = _make_objective(arc, a, b, alpha).arc_sup()
        else:
            raise NonAdmissibleH(
                "pair ({}, {}) sweeps a continuum of hypothesis points; no "
                "finitely supported h satisfies the hypothesis".format(x, y))
        sep = (Cert.exact(h.value(w)) - need).separate(0)
        if sep == -1:
            raise NonAdmissibleH(
                f"h({w}) = {h.value(w)} is below the required bound")
        if sep is None:
            raise NonAdmissibleH(f"h({w}) cannot be separated from the bound")


def validate_admissible_ts(instance: BblInstance, t: Fraction, s: Fraction):
    """Hypothesis check for the (t, s)-form: a single coefficient pair."""
    if instance.h is None:
        raise ValueError("no explicit h to validate")
    h = instance.h
    alpha = instance.alpha
    for x, a, y, b in instance.pairs():
        w = tuple(t * xi + s * yi for xi, yi in zip(x, y))
        if alpha == 0:
            need = Cert.rational_pow(a, t) * Cert.rational_pow(b, s)
        else:
            need = _fixed_value(a, b, t, s, alpha)
        sep = (Cert.exact(h.value(w)) - need).separate(0)
        if sep == -1:
            raise NonAdmissibleH(
                f"h({w}) = {h.value(w)} is below the required bound")
        if sep is None:
            raise NonAdmissibleH(f"h({w}) cannot be separated from the bound")


# ---------------------------------------------------------------------------
# the two sides of the discrete inequality
# ---------------------------------------------------------------------------

def _lambda_rhs(instance: BblInstance) -> tuple[Cert, Fraction, Fraction]:
    sf = instance.f.lattice_total()
    sg = instance.g.lattice_total()
    if sf == 0 or sg == 0:
        return Cert.exact(0), sf, sg
    beta = bbl_exponent(instance.alpha, instance.n, instance.p)
    return alpha_mean(sf, sg, instance.lam, beta), sf, sg


def _lattice_range(bbox, pad_lo, pad_hi):
    """Integer grid covering the padded rational box."""
    return [range(math.floor(lo + pad_lo), math.ceil(hi + pad_hi) + 1)
            for lo, hi in bbox]


def _combo_closure_bbox(instance: BblInstance):
    from .lattice import _combo_bbox
    from .pcombo import PCombo
    combo = PCombo(instance.k, instance.l, 1 - instance.lam, instance.lam,
                   instance.p)
    return combo, _combo_bbox(combo)


def check_discrete_bbl(instance: BblInstance, cube_exponent: str = "lambda",
                       ts: tuple[Fraction, Fraction] | None = None,
                       tol=Fraction(1, 10 ** 9)) -> CheckReport:
    """Evaluate the discrete inequality.

    cube_exponent "lambda": sum h-sup-convolution over lattice points of the
    p-combination dilated by (-1, 1)^n against the p alpha/(n alpha + 1)
    mean of the function sums. cube_exponent "ts": the linear-combination
    form with exact coefficients (t, s) (default (1 - lambda, lambda)),
    summation over t K + s L + (-1, ceil(t + s))^n and the alpha/(n alpha + 1)
    weighted sum on the right.
    """
    started = time.monotonic()
    if cube_exponent in ("lambda", "lambda-form"):
        if ts is not None:
            raise ValueError("ts coefficients only apply to the ts form")
        return _check_lambda_form(instance, Fraction(tol), started)
    if cube_exponent in ("ts", "ts-form"):
        return _check_ts_form(instance, ts, Fraction(tol), started)
    raise ValueError(f"unknown cube_exponent {cube_exponent!r}")


def _check_lambda_form(instance, tol, started) -> CheckReport:
    rhs, sf, sg = _lambda_rhs(instance)
    n = instance.n
    witness = {"sum_f": sf, "sum_g": sg, "p": instance.p,
               "lambda": instance.lam, "alpha": instance.alpha,
               "h_mode": instance.h_mode}
    if instance.h_mode == "minimal":
        _require_minimal(instance)
        combo, bbox = _combo_closure_bbox(instance)
        pts = sorted(itertools.product(*_lattice_range(bbox, -1, 1)))
        terms = [minimal_admissible_h(instance, z, relax_cube=True, tol=tol)
                 for z in pts]
        lhs = Cert.sum_of(terms)
        witness["lattice_points"] = len(pts)
        return make_report("dbbl-lambda", lhs, rhs, witness, started, tol)
    validate_admissible(instance)
    combo, bbox = _combo_closure_bbox(instance)
    from .lattice import _cube_targets
    from .sets import open_unit_cube
    cube = open_unit_cube(n)
    targets = {}
    for z in itertools.product(*_lattice_range(bbox, -1, 1)):
        zf = make_point(z)
        for i, tgt in enumerate(_cube_targets(zf, cube)):
            targets[(zf, i)] = tgt
    status = cover_targets(instance.k, instance.l, combo.arc, targets,
                           work_bits=96, max_depth=160)
    lo = F0
    amb = F0
    for (zf, _), st in sorted(status.items()):
        v = sup_convolution(instance.h, zf)
        if v == 0:
            continue
        if st == "in":
            lo += v
        elif st == "amb":
            amb += v
    lhs = _ivl(lo, lo + amb) if amb else Cert.exact(lo)
    witness["ambiguous_mass"] = amb
    return make_report("dbbl-lambda", lhs, rhs, witness, started, tol)


def _in_set_plus_open_cube(m: SetRep, cube: AxisBox, z) -> bool:
    """Exact: z in M + cube for an open-box cube."""
    ivs = cube.intervals
    if isinstance(m, FinitePoints):
        return any(all(iv.contains(zi - wi) for iv, zi, wi in zip(ivs, z, w))
                   for w in m.points)
    if isinstance(m, AxisBox):
        s = minkowski_sum(m, cube)
        return contains_point(s, z)
    raise TypeError("ts-form summation supports finite sets and boxes")


def _check_ts_form(instance, ts, tol, started) -> CheckReport:
    n = instance.n
    alpha = instance.alpha
    if ts is None:
        t, s = 1 - instance.lam, instance.lam
    else:
        t, s = Fraction(ts[0]), Fraction(ts[1])
    if t <= 0 or s <= 0:
        raise ValueError("ts coefficients must be positive")
    sf = instance.f.lattice_total()
    sg = instance.g.lattice_total()
    if sf == 0 or sg == 0:
        rhs = Cert.exact(0)
    elif alpha == 0:
        if t + s != 1:
            raise ValueError("alpha = 0 needs t + s = 1 (geometric form)")
        rhs = Cert.rational_pow(sf, t) * Cert.rational_pow(sg, s)
    else:
        rhs = alpha_sum(sf, sg, t, s, bbl_exponent(alpha, n, F1))
    witness = {"sum_f": sf, "sum_g": sg, "t": t, "s": s,
               "alpha": alpha, "h_mode": instance.h_mode}
    if instance.h_mode == "explicit":
        validate_admissible_ts(instance, t, s)
    else:
        _require_minimal(instance)
    m = minkowski_sum(scale_exact(instance.k, t), scale_exact(instance.l, s))
    top = math.ceil(t + s)
    cube = AxisBox(tuple(Iv(-1, top, True, True) for _ in range(n)))
    bbox = bounding_box(m)
    terms = []
    pair_vals = None
    if instance.h_mode == "minimal":
        pair_vals = [(tuple(t * xi + s * yi for xi, yi in zip(x, y)),
                      _ts_pair_value(a, b, t, s, alpha))
                     for x, a, y, b in instance.pairs()]
    for z in sorted(itertools.product(*_lattice_range(bbox, -1, top))):
        zf = make_point(z)
        if not _in_set_plus_open_cube(m, cube, zf):
            continue
        if instance.h_mode == "explicit":
            v = max((hv for w, hv in instance.h.support
                     if _reaches_ts(w, zf, top)), default=F0)
            if v:
                terms.append(Cert.exact(v))
        else:
            vals = [val for w, val in pair_vals if _reaches_ts(w, zf, top)]
            if vals:
                terms.append(Cert.max_of(vals))
    lhs = Cert.sum_of(terms)
    witness["contributing_points"] = len(terms)
    return make_report("dbbl-ts", lhs, rhs, witness, started, tol)


def _ts_pair_value(a, b, t: Fraction, s: Fraction, alpha: Ext) -> Cert:
    if alpha == 0:
        if t + s != 1:
            raise ValueError("alpha = 0 needs t + s = 1")
        return Cert.rational_pow(a, t) * Cert.rational_pow(b, s)
    return _fixed_value(a, b, t, s, alpha)


# ---------------------------------------------------------------------------
# arbitrary lattices by conjugation
# ---------------------------------------------------------------------------

def _conjugate_set(s: SetRep, lattice) -> SetRep:
    if isinstance(s, FinitePoints):
        return FinitePoints(tuple(lattice.coords(p) for p in s.points))
    if isinstance(s, VPolytope):
        return VPolytope(tuple(lattice.coords(p) for p in s.vertices))
    diag = all(sum(1 for c in row if c != 0) == 1
               for row in lattice._inv)
    if diag and all(lattice._inv[i][i] != 0 for i in range(lattice.dim)):
        out = []
        for i, iv in enumerate(s.intervals):
            c = lattice._inv[i][i]
            if c > 0:
                out.append(Iv(c * iv.lo, c * iv.hi, iv.lo_open, iv.hi_open))
            else:
                out.append(Iv(c * iv.hi, c * iv.lo, iv.hi_open, iv.lo_open))
        return AxisBox(tuple(out))
    from .sets import is_closed
    if is_closed(s):
        return VPolytope(tuple(lattice.coords(p)
                               for p in box_corners(bounding_box(s))))
    raise TypeError("open boxes cannot be conjugated through a skew basis")


def _conjugate_fun(f: GridFunction, lattice, domain: SetRep) -> GridFunction:
    return GridFunction(tuple((lattice.coords(pt), v)
                              for pt, v in f.support), domain)


def check_lattice_variant(instance: BblInstance, lattice,
                          cube_exponent: str = "lambda",
                          tol=Fraction(1, 10 ** 9)) -> CheckReport:
    """The inequality over an arbitrary lattice, conjugated to Z^n.

    The combination commutes with the linear map of the basis, so pulling
    sets and supports back through it reduces the statement to the integer
    lattice with the cube replaced by the image of the unit cube.
    """
    if lattice.dim != instance.n:
        raise ValueError("lattice dimension mismatch")
    k2 = _conjugate_set(instance.k, lattice)
    l2 = _conjugate_set(instance.l, lattice)
    conj = BblInstance(instance.n, instance.p, instance.lam, instance.alpha,
                       k2, l2,
                       _conjugate_fun(instance.f, lattice, k2),
                       _conjugate_fun(instance.g, lattice, l2),
                       None if instance.h is None else _conjugate_fun(
                           instance.h, lattice,
                           _conjugate_set(instance.h.domain, lattice)))
    rep = check_discrete_bbl(conj, cube_exponent, tol=tol)
    witness = dict(rep.witness)
    witness["lattice_basis"] = lattice.basis
    return CheckReport("dbbl-lattice", rep.verdict, rep.lhs, rep.rhs,
                       rep.slack, witness, rep.runtime_ms)
