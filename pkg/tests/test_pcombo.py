from fractions import Fraction

import pytest

from bmlab.certified import Cert
from bmlab.pcombo import (PCombo, chebyshev_distance, combo_interval_1d,
                          exact_realize, p_combo_membership, p_combo_support,
                          p_scalar_mult)
from bmlab.sets import FinitePoints, box, interval

F = Fraction


def fp(*pts):
    return FinitePoints(tuple(tuple(F(c) for c in p) for p in pts))


def test_p_scalar_mult():
    s = p_scalar_mult(F(1, 4), interval(0, 2), 2)
    assert s.factor.exact_value() == F(1, 2)
    assert s.realize().intervals[0].hi == 1
    s = p_scalar_mult(F(1, 2), interval(0, 2), 2)
    assert s.factor.exact_value() is None  # sqrt(1/2)
    with pytest.raises(ValueError):
        s.realize()


def test_combo_support_interval_endpoint():
    # [0,1] and [0,2] with lambda = 1/2, p = 2: support at u=1 is sqrt(2.5)
    combo = PCombo.from_lambda(interval(0, 1), interval(0, 2), F(1, 2), 2)
    h = p_combo_support(combo, (1,))
    assert h.separate(Cert.root(F(5, 2), 2)) is None
    assert h.bounds(100)[1] - h.bounds(100)[0] < F(1, 10 ** 25)


def test_combo_support_idempotent():
    # K = L makes the combination K itself for every lambda and p
    k = box([(0, 2), (0, 3)])
    combo = PCombo.from_lambda(k, k, F(1, 3), F(3, 2))
    for u in ((1, 0), (0, 1), (1, 1)):
        hk = sum(F(c) * b for c, (a, b) in zip(u, [(0, 2), (0, 3)]))
        h = p_combo_support(combo, u)
        assert h.separate(hk) in (0, None)
        assert abs(h - hk).bounds(120)[1] < F(1, 10 ** 30)


def test_combo_support_p1_is_linear():
    combo = PCombo.from_lambda(interval(0, 1), interval(0, 2), F(1, 2), 1)
    assert p_combo_support(combo, (1,)).exact_value() == F(3, 2)


def test_exact_realize():
    combo = PCombo.from_lambda(fp((0,), (1,)), fp((0,), (2,)), F(1, 2), 1)
    r = exact_realize(combo)
    assert r.points == ((F(0),), (F(1, 2),), (F(1),), (F(3, 2),))
    assert exact_realize(PCombo.from_lambda(fp((0,)), fp((2,)), F(1, 2), 2)) is None
    # zero weight collapses to the scaled other operand
    combo = PCombo(fp((1,)), fp((2,)), 0, F(1, 4), 2)
    assert exact_realize(combo).points == ((F(1),),)


def test_membership_1d():
    combo = PCombo.from_lambda(interval(0, 1), interval(0, 2), F(1, 2), 2)
    assert p_combo_membership((1,), combo).kind == "inside"
    assert p_combo_membership((F(8, 5),), combo).kind == "outside"
    assert p_combo_membership((0,), combo).kind == "inside"


def test_membership_point_pair():
    # {0} +_2 {2} at lambda 1/2 sweeps [0, sqrt(2)] union ... a single curve
    combo = PCombo.from_lambda(fp((0,)), fp((2,)), F(1, 2), 2)
    assert p_combo_membership((1,), combo).kind == "inside"
    assert p_combo_membership((F(3, 2),), combo).kind == "outside"


def test_chebyshev_distance():
    combo = PCombo.from_lambda(fp((0,)), fp((2,)), F(1, 2), 2)
    # the combination is the segment [0, sqrt 2]; distance from 3
    d = chebyshev_distance((3,), combo)
    assert d.separate(3 - Cert.root(2, 2)) is None
    inside = chebyshev_distance((1,), combo)
    assert inside.bounds(80)[1] < F(1, 10 ** 9)


def test_combo_interval_1d():
    combo = PCombo.from_lambda(interval(0, 1), interval(0, 2), F(1, 2), 2)
    iv = combo_interval_1d(combo)
    assert iv.lo.exact_value() == 0
    assert iv.hi.separate(Cert.root(F(5, 2), 2)) is None
    assert not iv.lo_open and not iv.hi_open
    with pytest.raises(ValueError):
        combo_interval_1d(PCombo.from_lambda(fp((0,)), fp((2,)), F(1, 2), 1))


def test_operand_validation():
    with pytest.raises(ValueError):
        p_combo_membership((0,), PCombo.from_lambda(
            interval(0, 1, True, False), interval(0, 1), F(1, 2), 2))
    with pytest.raises(ValueError):
        PCombo.from_lambda(interval(0, 1), fp((0, 0), (1, 1)), F(1, 2), 2)


def test_symmetry():
    a, b = fp((0, 0), (1, 2)), fp((2, 1))
    d1 = chebyshev_distance((2, 2), PCombo.from_lambda(a, b, F(1, 3), 2))
    d2 = chebyshev_distance((2, 2), PCombo.from_lambda(b, a, F(2, 3), 2))
    assert abs(d1 - d2).bounds(100)[1] < F(1, 10 ** 25)
