from fractions import Fraction

import pytest

from bmlab.lattice import (Lattice, gcount, gcount_pcombo_plus_cube,
                           gcount_refined)
from bmlab.pcombo import PCombo
from bmlab.sets import (FinitePoints, VPolytope, box, cube, interval,
                        open_unit_cube, translate)

F = Fraction


def fp(*pts):
    return FinitePoints(tuple(tuple(F(c) for c in p) for p in pts))


def test_gcount_boxes():
    assert gcount(box([(0, 3), (0, 3)])).count == 16
    assert gcount(interval(0, 3, True, True)).count == 2
    assert gcount(interval(-1, F(1, 2), True, False)).count == 1
    assert gcount(cube(2, -1, 1)).count == 1  # open unit cube: origin only


def test_gcount_finite_and_polytope():
    assert gcount(fp((0, 0), (F(1, 2), F(1, 2)), (1, 1))).count == 2
    tri = VPolytope(((F(0), F(0)), (F(2), F(0)), (F(0), F(2))))
    assert gcount(tri).count == 6


def test_gcount_refined():
    assert gcount_refined(interval(0, 1), 1).count == 3
    assert gcount_refined(box([(0, 1), (0, 1)]), 1).count == 9
    # (2^(m+1) k + 1)^n points in [0, 2k]^n at refinement m+1... m=2 on [0,1]
    assert gcount_refined(interval(0, 1), 3).count == 9


def test_gcount_sublattice():
    lat = Lattice(((F(2), F(0)), (F(0), F(1))))
    assert gcount(box([(0, 3), (0, 1)]), lat).count == 4
    assert gcount(fp((1, 0), (2, 0)), lat).count == 1


def test_count_cube_family_is_sharp():
    # K = L = [0, m]^n: the combination is K again and the open-cube count
    # stays (m+1)^n for every lambda and p
    for m, n, p, lam in [(1, 1, 2, F(1, 2)), (2, 2, F(3, 2), F(1, 3)),
                         (3, 1, 3, F(1, 2)), (2, 1, 2, F(1, 4))]:
        k = box([(0, m)] * n)
        cr = gcount_pcombo_plus_cube(k, k, lam, p, open_unit_cube(n))
        assert cr.count == (m + 1) ** n
        assert not cr.ambiguous_points


def test_count_interval_pair():
    # [0,1] +_2 [0,2] with lambda 1/2 is [0, sqrt 2.5]; plus (-1,1): 3 points
    cr = gcount_pcombo_plus_cube(interval(0, 1), interval(0, 2), F(1, 2), 2,
                                 interval(-1, 1, True, True))
    assert cr.count == 3
    # without the cube the closed interval [0, sqrt 2.5] holds 0 and 1
    cr = gcount_pcombo_plus_cube(interval(0, 1), interval(0, 2), F(1, 2), 2)
    assert cr.count == 2


def test_count_point_pair_vs_interval_form():
    # {0} +_2 {2} sweeps [0, sqrt 2]
    cr = gcount_pcombo_plus_cube(fp((0,)), fp((2,)), F(1, 2), 2)
    assert cr.count == 2
    cr = gcount_pcombo_plus_cube(fp((0,)), fp((2,)), F(1, 2), 2,
                                 interval(-1, 1, True, True))
    assert cr.count == 3  # (-1, sqrt2 + 1) contains 0, 1, 2


def test_count_weight_pair_form():
    # explicit (t, s) weights instead of lambda
    cr = gcount_pcombo_plus_cube(interval(0, 1), interval(0, 2), (F(1), F(1)),
                                 2, interval(-1, 1, True, True))
    # 1.K +_2 1.L = [0, sqrt 5]; with the open cube: 0..3
    assert cr.count == 4


def test_count_translation_invariance_p1():
    # for p = 1 the combination translates by (1-lam) u + lam v when the
    # operands translate by u and v; integer shifts keep the count
    k, l = fp((0, 0), (2, 1)), fp((1, 1), (-1, 0))
    b1 = gcount_pcombo_plus_cube(k, l, F(1, 2), 1, open_unit_cube(2))
    b2 = gcount_pcombo_plus_cube(translate(k, (4, 2)), translate(l, (4, 2)),
                                 F(1, 2), 1, open_unit_cube(2))
    assert b1.count == b2.count


def test_count_conjugated_lattice():
    # counting over a scaled lattice equals counting the scaled problem
    k, l = interval(0, 1), interval(0, 2)
    lat = Lattice.refined(1, 2)
    a = gcount_pcombo_plus_cube(k, l, F(1, 2), 2, None, lat)
    b = gcount_refined(PCombo.from_lambda(k, l, F(1, 2), 2), 2)
    assert a.count == b.count
    # [0, sqrt 2.5] holds floor(4 sqrt 2.5) + 1 = 7 quarter-integers
    assert a.count == 7


def test_lattice_roundtrip():
    lat = Lattice(((F(1), F(1)), (F(0), F(2))))
    u = (3, -2)
    z = lat.point(u)
    assert lat.coords(z) == (F(3), F(-2))


def test_lattice_rejects_singular_basis():
    with pytest.raises(ValueError):
        Lattice(((F(1), F(2)), (F(2), F(4))))


def test_counts_match_membership_oracle():
    import itertools
    import sys
    sys.path.insert(0, "tests")
    from oracles import membership_classes

    cases = [
        (fp((0, 0), (1, 2)), fp((2, 1)), F(1, 2), F(2)),
        (fp((-2, 1)), fp((1, -1), (0, 3)), F(1, 3), F(3, 2)),
        (fp((0, 0)), fp((3, 3), (-3, 0)), F(1, 2), F(3, 2)),
    ]
    for k, l, lam, p in cases:
        cr = gcount_pcombo_plus_cube(k, l, lam, p, open_unit_cube(2))
        sure_in, margin = membership_classes(k.points, l.points, 1 - lam, lam,
                                             p, samples=200_000)
        assert not cr.ambiguous_points
        assert len(sure_in) <= cr.count <= len(sure_in) + len(margin)
