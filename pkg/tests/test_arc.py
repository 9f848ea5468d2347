from fractions import Fraction

import pytest

from bmlab.arc import (IN, OUT, Target, cover_targets, linear_extreme,
                       make_arc, point_on_pair_curve)
from bmlab.certified import Cert
from bmlab.sets import FinitePoints, Iv, box, interval

F = Fraction


def fp(*pts):
    return FinitePoints(tuple(tuple(F(c) for c in p) for p in pts))


def test_make_arc_basic():
    arc = make_arc(F(1, 2), F(1, 2), 2)
    assert arc.invq == F(1, 2)
    assert arc.fixed_ts is None
    arc1 = make_arc(F(1, 3), F(2, 3), 1)
    t, s = arc1.fixed_ts
    assert t.exact_value() == F(1, 3)
    assert s.exact_value() == F(2, 3)


def test_fixed_ts_zero_weight():
    arc = make_arc(0, F(1, 4), 2)
    t, s = arc.fixed_ts
    assert t.exact_value() == 0
    assert s.exact_value() == F(1, 2)


def test_ts_rectangles_nested_and_monotone():
    arc = make_arc(F(1, 2), F(1, 2), 2)
    for mu in (F(0), F(1, 4), F(1, 2), F(1)):
        tlo, thi, slo, shi = arc.ts(mu, 60)
        assert tlo <= thi and slo <= shi
        t2lo, t2hi, s2lo, s2hi = arc.ts(mu, 120)
        assert tlo <= t2lo <= t2hi <= thi
        assert slo <= s2lo <= s2hi <= shi
    # t decreasing, s increasing along the arc
    a = arc.ts(F(1, 4), 80)
    b = arc.ts(F(3, 4), 80)
    assert a[0] > b[1]
    assert a[3] < b[2]


def test_ts_endpoints_exact():
    arc = make_arc(F(1, 4), F(1, 4), 2)
    tlo, thi, slo, shi = arc.ts(F(0), 60)
    assert tlo == thi == F(1, 2)  # (1/4)^(1/2) exactly
    assert slo == shi == 0


def test_linear_extreme_closed_form():
    # sup of t*1 + s*2 over the lambda=1/2, p=2 arc is sqrt(2.5)
    arc = make_arc(F(1, 2), F(1, 2), 2)
    e = linear_extreme(arc, F(1), F(2), True)
    assert e.separate(Cert.root(F(5, 2), 2)) is None
    # infimum of a positive linear form sits at an arc endpoint
    lo = linear_extreme(arc, F(1), F(2), False)
    assert lo.separate(Cert.root(F(1, 2), 2)) is None


def test_point_on_pair_curve():
    arc = make_arc(F(1, 2), F(1, 2), 2)
    # the curve through x=0, y=2 is the segment [0, sqrt 2]
    assert point_on_pair_curve(arc, (F(0),), (F(2),), (F(1),)) is True
    assert point_on_pair_curve(arc, (F(0),), (F(2),), (F(3, 2),)) is False
    # exact endpoint: s*2 = sqrt(2) at mu=1, irrational, so z=1.5 misses
    assert point_on_pair_curve(arc, (F(1),), (F(1),), (F(1),)) is True


def _targets(zs, r=F(1)):
    return {i: Target(tuple(Iv(c - r, c + r, True, True) for c in z))
            for i, z in enumerate(zs)}


def test_cover_targets_point_pair():
    arc = make_arc(F(1, 2), F(1, 2), 2)
    k, l = fp((0, 0)), fp((2, 2))
    # curve sweeps (2s, 2s), s in [0, sqrt(1/2)]: diagonal up to (r2, r2)
    tgts = _targets([(F(0), F(0)), (F(1), F(1)), (F(2), F(2)), (F(0), F(2))])
    st = cover_targets(k, l, arc, tgts)
    assert st[0] == IN and st[1] == IN
    assert st[2] == IN  # dist from (2,2) to (r2, r2) is 2 - r2 < 1
    assert st[3] == OUT


def test_cover_targets_boxes():
    arc = make_arc(F(1, 2), F(1, 2), 2)
    k, l = box([(0, 1), (0, 1)]), box([(0, 2), (0, 2)])
    # combination contains [0,1]^2 scaled and reaches sqrt(2.5) diagonally
    tgts = _targets([(F(1), F(1)), (F(5, 2), F(0)), (F(3), F(3))])
    st = cover_targets(k, l, arc, tgts)
    assert st[0] == IN
    assert st[1] == IN  # the x extent reaches sqrt(2.5) > 1.5
    assert st[2] == OUT  # both axes would need to exceed sqrt(2.5) < 2


def test_cover_targets_tangency_is_out():
    # the arc for lambda=1/3, p=3/2 passes through (t,s) = (2/3, 1/3);
    # the pair below touches the open box around z at exactly that point
    arc = make_arc(F(2, 3), F(1, 3), F(3, 2))
    k, l = fp((-3, 0)), fp((0, -3))
    tgt = Target((Iv(F(-4), F(-2), True, True), Iv(F(-3), F(-1), True, True)))
    st = cover_targets(k, l, arc, {0: tgt})
    assert st[0] == OUT


def test_cover_targets_degenerate_point_target():
    arc = make_arc(F(1, 2), F(1, 2), 2)
    k, l = fp((0,)), fp((2,))
    on = Target((Iv(F(1), F(1)),))
    off = Target((Iv(F(3, 2), F(3, 2)),))
    st = cover_targets(k, l, arc, {0: on, 1: off})
    assert st[0] == IN
    assert st[1] == OUT


def test_arc_rejects_bad_exponent():
    with pytest.raises(ValueError):
        make_arc(F(1, 2), F(1, 2), F(1, 2))
