from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bmlab.certified import Cert
from bmlab.rationals import INF, NEG_INF
from bmlab.scalars import (alpha_mean, alpha_sum, bbl_exponent,
                           conjugate_exponent, holder_coefficients,
                           optimal_mu0)

F = Fraction

pos = st.fractions(min_value=F(1, 20), max_value=20, max_denominator=64)
lams = st.fractions(min_value=F(1, 10), max_value=F(9, 10), max_denominator=64)


def test_conjugate_exponent():
    assert conjugate_exponent(2) == 2
    assert conjugate_exponent(F(3, 2)) == 3
    assert conjugate_exponent(1) == INF
    with pytest.raises(ValueError):
        conjugate_exponent(F(1, 2))
    with pytest.raises(ValueError):
        conjugate_exponent(INF)


def test_alpha_mean_examples():
    assert alpha_mean(3, 3, F(1, 2), 2).exact_value() == 3
    m = alpha_mean(2, 3, F(1, 2), 2)
    assert m.separate(Cert.root(F(13, 2), 2)) is None  # sqrt 6.5
    assert alpha_mean(2, 3, F(1, 2), 1).exact_value() == F(5, 2)
    # geometric mean at alpha = 0
    g = alpha_mean(2, 8, F(1, 2), 0)
    assert g.separate(4) is None
    assert g.width() < F(1, 10 ** 20)
    assert alpha_mean(2, 8, F(1, 2), INF).exact_value() == 8
    assert alpha_mean(2, 8, F(1, 2), NEG_INF).exact_value() == 2


def test_alpha_mean_zero_convention():
    # a mean with a vanishing argument is 0 for every alpha
    for alpha in (NEG_INF, -1, 0, F(1, 2), 1, 2, INF):
        assert alpha_mean(0, 3, F(1, 2), alpha).exact_value() == 0
        assert alpha_mean(5, 0, F(1, 3), alpha).exact_value() == 0


def test_alpha_sum_examples():
    s = alpha_sum(2, 3, F(1, 2), F(1, 2), 2)
    assert s.separate(Cert.root(F(13, 2), 2)) is None
    assert alpha_sum(2, 2, 1, 1, F(3, 2)).separate(
        Cert.rational_pow(2, F(5, 3))) is None
    assert alpha_sum(5, 0, 1, 1, 2).exact_value() == 0
    assert alpha_sum(2, 3, F(1, 2), F(1, 2), INF).exact_value() == 3


def test_bbl_exponent_table():
    assert bbl_exponent(0, 2, 2) == 0
    assert bbl_exponent(1, 1, 2) == 1
    assert bbl_exponent(INF, 2, 2) == 1  # p/n
    assert bbl_exponent(INF, 3, F(3, 2)) == F(1, 2)
    assert bbl_exponent(F(-1, 2), 2, 2) == NEG_INF  # alpha = -1/n
    assert bbl_exponent(F(-1, 4), 2, 2) == F(2) * F(-1, 4) / F(1, 2)
    with pytest.raises(ValueError):
        bbl_exponent(F(-2, 3), 2, 2)  # below -1/n


def test_holder_coefficients():
    hp = holder_coefficients(F(1, 3), F(1, 3), 2)
    total = hp.t + hp.s
    # mu = lambda gives t + s = 1; the enclosure pins it without excluding 1
    assert total.separate(1) is None
    lo, hi = total.bounds(120)
    assert lo <= 1 <= hi and hi - lo < F(1, 10 ** 30)
    hp = holder_coefficients(F(1, 2), 0, 2)
    assert hp.s.exact_value() == 0
    assert hp.t.separate(Cert.root(F(1, 2), 2)) is None
    hp = holder_coefficients(F(1, 2), F(3, 4), 2)
    assert (hp.t + hp.s).separate(1) == -1  # strict for mu != lambda
    hp = holder_coefficients(F(1, 4), F(9, 10), 1)
    assert hp.t.exact_value() == F(3, 4)
    assert hp.s.exact_value() == F(1, 4)


@given(lams, st.fractions(min_value=0, max_value=1, max_denominator=64),
       st.sampled_from([F(3, 2), F(2), F(3)]))
@settings(max_examples=300)
def test_holder_sum_at_most_one(lam, mu, p):
    hp = holder_coefficients(lam, mu, p)
    total = hp.t + hp.s
    if mu == lam:
        assert total.separate(1) is None
        lo, hi = total.bounds(120)
        assert lo <= 1 <= hi
    else:
        assert total.separate(1) == -1


def test_optimal_mu0_example():
    # beta = 1/2, p = 2, lambda = 1/2, sums 1 and 4
    mu0 = optimal_mu0(F(1, 2), 2, F(1, 2), 1, 4)
    assert mu0.exact_value() == F(4, 5)


def test_optimal_mu0_equal_sums_is_lambda():
    for lam in (F(1, 3), F(2, 5)):
        assert optimal_mu0(lam, 2, F(1, 2), 3, 3).exact_value() == lam


@given(lams, st.sampled_from([(F(2), F(1, 2)), (F(3, 2), F(2, 3)),
                              (F(2), F(1)), (F(3, 2), F(2))]), pos, pos)
@settings(max_examples=200)
def test_optimal_mu0_closes_the_gap(lam, pb, sf, sg):
    """The alpha-sum at the optimal coefficients reproduces the mean."""
    p, beta = pb
    mu0 = optimal_mu0(lam, p, beta, sf, sg)
    m = mu0.exact_value()
    assert m is not None and 0 < m < 1
    hp = holder_coefficients(lam, m, p)
    lhs = (hp.t * Cert.rational_pow(sf, beta)
           + hp.s * Cert.rational_pow(sg, beta)).pow(1 / beta)
    rhs = alpha_mean(sf, sg, lam, p * beta)
    assert abs(lhs - rhs).bounds(140)[1] < F(1, 10 ** 30)


@given(pos, pos, lams,
       st.sampled_from([F(-1, 2), F(-1, 4), 0, F(1, 2), 1, 2, 3]),
       st.sampled_from([F(-1, 4), 0, F(1, 2), 1, 2, 3, INF]))
@settings(max_examples=300)
def test_mean_monotone_in_alpha(a, b, lam, a1, a2):
    if a2 != INF and a1 > a2:
        a1, a2 = a2, a1
    m1 = alpha_mean(a, b, lam, a1)
    m2 = alpha_mean(a, b, lam, a2)
    # the enclosures must never certify the reversed order
    assert not (m1.bounds(100)[0] > m2.bounds(100)[1])


@given(pos, pos, lams, st.sampled_from([F(-1, 2), 0, 1, 2, INF, NEG_INF]))
@settings(max_examples=300)
def test_mean_between_min_and_max(a, b, lam, alpha):
    m = alpha_mean(a, b, lam, alpha)
    lo, hi = m.bounds(100)
    assert min(a, b) <= hi and lo <= max(a, b)
