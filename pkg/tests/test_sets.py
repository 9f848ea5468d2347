from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bmlab.sets import (AxisBox, FinitePoints, Iv, VPolytope, bounding_box,
                        box, contains_origin, contains_point, cube, dim_of,
                        interval, is_closed, minkowski_sum, open_unit_cube,
                        scale_exact, support_function, translate)

F = Fraction


def test_iv_validation():
    Iv(0, 0)  # degenerate closed interval is fine
    with pytest.raises(ValueError):
        Iv(1, 0)
    with pytest.raises(ValueError):
        Iv(0, 0, True, False)  # an open endpoint empties it


def test_iv_contains():
    iv = Iv(0, 1, True, False)
    assert not iv.contains(F(0))
    assert iv.contains(F(1))
    assert iv.contains(F(1, 2))
    assert not iv.contains(F(2))


def test_finite_points_normalized():
    s = FinitePoints(((F(1), F(0)), (F(0), F(0)), (F(1), F(0))))
    assert s.points == ((F(0), F(0)), (F(1), F(0)))
    assert s.dim == 2
    with pytest.raises(ValueError):
        FinitePoints(())
    with pytest.raises(ValueError):
        FinitePoints(((F(0),), (F(0), F(1))))  # mixed dimensions


def test_cube_and_interval_builders():
    c = open_unit_cube(2)
    assert c.dim == 2
    assert not is_closed(c)
    assert contains_point(c, (0, 0))
    assert not contains_point(c, (1, 0))
    assert is_closed(interval(0, 3))
    assert cube(2, -1, 2).intervals[0] == Iv(-1, 2, True, True)


def test_contains_point_polytope():
    tri = VPolytope(((F(0), F(0)), (F(2), F(0)), (F(0), F(2))))
    assert contains_point(tri, (F(1, 2), F(1, 2)))
    assert contains_point(tri, (1, 1))  # on the hypotenuse
    assert not contains_point(tri, (2, 1))
    assert contains_origin(tri)


def test_bounding_box():
    s = FinitePoints(((F(-1), F(2)), (F(3), F(0))))
    assert bounding_box(s) == [(F(-1), F(3)), (F(0), F(2))]
    assert bounding_box(box([(0, 1), (2, 5)])) == [(F(0), F(1)), (F(2), F(5))]


def test_support_function():
    b = box([(0, 1), (0, 2)])
    assert support_function(b, (1, 1)) == 3
    assert support_function(b, (-1, 0)) == 0
    tri = VPolytope(((F(0), F(0)), (F(2), F(0)), (F(0), F(2))))
    assert support_function(tri, (1, 1)) == 2
    assert support_function(tri, (1, -1)) == 2


def test_translate_and_scale():
    s = FinitePoints(((F(0), F(0)), (F(1), F(2))))
    t = translate(s, (1, -1))
    assert t.points == ((F(1), F(-1)), (F(2), F(1)))
    d = scale_exact(interval(0, 2, False, True), F(3, 2))
    assert d.intervals[0] == Iv(0, 3, False, True)
    with pytest.raises(ValueError):
        scale_exact(interval(0, 2), F(-1))


def test_minkowski_sum_points():
    a = FinitePoints(((F(0),), (F(1),)))
    s = minkowski_sum(a, a)
    assert s.points == ((F(0),), (F(1),), (F(2),))


def test_minkowski_sum_boxes_tracks_open_flags():
    s = minkowski_sum(interval(0, 1), interval(0, 2, True, True))
    assert s.intervals[0] == Iv(0, 3, True, True)
    t = minkowski_sum(box([(0, 1), (0, 1)]), open_unit_cube(2))
    assert t.intervals == (Iv(-1, 2, True, True), Iv(-1, 2, True, True))


def test_dim_of():
    assert dim_of(open_unit_cube(3)) == 3
    assert dim_of(FinitePoints(((F(0),),))) == 1


coords = st.fractions(min_value=-5, max_value=5, max_denominator=32)


@given(st.lists(st.tuples(coords, coords), min_size=1, max_size=5),
       st.tuples(coords, coords))
@settings(max_examples=200)
def test_support_function_translation_covariant(pts, v):
    s = VPolytope(tuple(dict.fromkeys(tuple(map(F, p)) for p in pts)))
    hull_dirs = [(F(1), F(0)), (F(0), F(1)), (F(1), F(1)), (F(-1), F(2))]
    t = translate(s, v)
    for u in hull_dirs:
        shift = u[0] * F(v[0]) + u[1] * F(v[1])
        assert support_function(t, u) == support_function(s, u) + shift
