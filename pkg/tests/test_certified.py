from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bmlab.certified import (AmbiguousComparison, Cert, count_integers_between,
                             iroot, perfect_root)

F = Fraction


def test_iroot_examples():
    assert iroot(0, 2) == 0
    assert iroot(8, 3) == 2
    assert iroot(9, 3) == 2
    assert iroot(10 ** 12, 2) == 10 ** 6
    assert iroot(10 ** 12 - 1, 2) == 10 ** 6 - 1


@given(st.integers(min_value=0, max_value=10 ** 30),
       st.integers(min_value=1, max_value=7))
def test_iroot_is_floor_root(x, k):
    r = iroot(x, k)
    assert r ** k <= x < (r + 1) ** k


def test_perfect_root():
    assert perfect_root(F(4, 9), 2) == F(2, 3)
    assert perfect_root(F(8, 27), 3) == F(2, 3)
    assert perfect_root(F(2), 2) is None
    assert perfect_root(F(4, 8), 2) is None  # 1/2 is not a square


def test_exact_roundtrip():
    c = Cert.exact(F(3, 7))
    assert c.exact_value() == F(3, 7)
    assert c.is_exact()
    assert c.width() == 0
    assert float(c) == pytest.approx(3 / 7)


def test_root_enclosure_contains_value():
    c = Cert.root(2, 2)
    lo, hi = c.bounds(200)
    assert lo ** 2 <= 2 <= hi ** 2
    assert hi - lo < F(1, 10 ** 55)
    assert c.exact_value() is None


def test_root_of_perfect_power_is_exact():
    assert Cert.root(F(9, 4), 2).exact_value() == F(3, 2)
    assert Cert.rational_pow(8, F(2, 3)).exact_value() == 4


def test_rational_pow_negative_exponent():
    c = Cert.rational_pow(2, F(-1, 2))
    lo, hi = c.bounds(120)
    assert lo ** 2 <= F(1, 2) <= hi ** 2


def test_arithmetic_enclosures():
    r2 = Cert.root(2, 2)
    r3 = Cert.root(3, 2)
    s = r2 + r3
    prod = r2 * r3
    lo, hi = prod.bounds(150)
    assert lo ** 2 <= 6 <= hi ** 2
    # sqrt2 * sqrt3 = sqrt6
    assert prod.separate(Cert.root(6, 2)) is None
    assert (s - r3).separate(r2) is None
    assert abs(Cert.exact(-5)).exact_value() == 5


def test_division_by_enclosure():
    r2 = Cert.root(2, 2)
    half = 1 / (r2 * r2)
    assert half.separate(F(1, 2)) is None
    assert half.bounds(100)[0] > F(49, 100)
    with pytest.raises(AmbiguousComparison):
        (r2 / Cert.exact(0)).bounds(50)


def test_pow_integer_and_fractional():
    r2 = Cert.root(2, 2)
    assert r2.pow(2).separate(2) is None
    assert r2.pow(0).exact_value() == 1
    c = Cert.exact(F(5, 2)).pow(F(1, 2))
    lo, hi = c.bounds(100)
    assert lo ** 2 <= F(5, 2) <= hi ** 2


def test_separate_and_cmp():
    r2 = Cert.root(2, 2)
    assert r2.separate(F(3, 2)) == -1
    assert r2.separate(F(7, 5)) == 1
    assert r2.separate(r2) is None  # same value never separates
    assert Cert.exact(3).separate(3) == 0
    assert r2.cmp(F(3, 2)) == -1
    with pytest.raises(AmbiguousComparison):
        r2.cmp(r2)


def test_comparison_operators():
    r2 = Cert.root(2, 2)
    assert r2 < F(3, 2)
    assert r2 > 1
    assert Cert.exact(2) <= 2
    assert Cert.exact(2) >= 2


def test_floor_ceil():
    r2 = Cert.root(2, 2)
    assert r2.floor() == 1
    assert r2.ceil() == 2
    assert Cert.exact(3).floor() == 3
    assert Cert.exact(3).ceil() == 3
    assert Cert.exact(F(-5, 2)).floor() == -3


def test_max_min_sum_of():
    vals = [Cert.root(3, 2), Cert.exact(1), F(3, 2)]
    assert Cert.max_of(vals).separate(Cert.root(3, 2)) is None
    assert Cert.min_of(vals).exact_value() == 1
    total = Cert.sum_of(vals)
    assert total.separate(Cert.root(3, 2) + F(5, 2)) is None


def test_count_integers_between():
    r35 = Cert.root(F(7, 2), 2)  # about 1.87
    assert count_integers_between(Cert.exact(-1), r35, True, True) == 2
    assert count_integers_between(Cert.exact(0), Cert.exact(3), False, False) == 4
    assert count_integers_between(Cert.exact(0), Cert.exact(3), True, True) == 2
    assert count_integers_between(Cert.exact(2), Cert.exact(1), False, False) == 0
    # irrational endpoints separate from integers regardless of strictness
    assert count_integers_between(Cert.exact(0), Cert.root(2, 2), False, True) == 2


@given(st.fractions(min_value=F(1, 100), max_value=100, max_denominator=500),
       st.fractions(min_value=F(1, 100), max_value=100, max_denominator=500))
@settings(max_examples=200)
def test_product_enclosure_sound(a, b):
    c = Cert.root(a, 2) * Cert.root(b, 2)
    lo, hi = c.bounds(80)
    assert lo ** 2 <= a * b <= hi ** 2


@given(st.fractions(min_value=F(1, 50), max_value=50, max_denominator=500),
       st.integers(min_value=2, max_value=5),
       st.integers(min_value=30, max_value=120))
@settings(max_examples=200)
def test_root_bounds_nested(x, k, bits):
    c = Cert.root(x, k)
    lo1, hi1 = c.bounds(bits)
    lo2, hi2 = c.bounds(bits + 40)
    assert lo1 <= lo2 <= hi2 <= hi1
    assert lo1 ** k <= x <= hi1 ** k
