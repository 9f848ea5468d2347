"""alpha-sums, alpha-means, Hoelder coefficient pairs and the exponent transform.

Degenerate conventions: a sum with a zero factor is 0 for every alpha; the
exponents +inf and -inf give max and min; alpha = 0 is the weighted geometric
mean (only defined as a mean, with weights summing to 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .certified import Cert
from .rationals import INF, NEG_INF, Ext, as_fraction, check_p, is_finite

Num = "Cert | Fraction | int"


def conjugate_exponent(p: Ext) -> Ext:
    """Hoelder conjugate q with 1/p + 1/q = 1; q = +inf for p = 1."""
    p = check_p(p)
    if p == 1:
        return INF
    return p / (p - 1)


def alpha_sum(a, b, t: Fraction, s: Fraction, alpha: Ext) -> Cert:
    """(t a^alpha + s b^alpha)^(1/alpha); max/min at +-inf; 0 when ab = 0."""
    if alpha == 0:
        raise ValueError("alpha = 0 is only defined for means; use alpha_mean")
    t, s = Fraction(t), Fraction(s)
    if t <= 0 or s <= 0:
        raise ValueError("alpha_sum weights must be positive")
    ca, cb = Cert.wrap(a), Cert.wrap(b)
    sa, sb = ca.separate(0), cb.separate(0)
    if sa == -1 or sb == -1:
        raise ValueError("alpha_sum arguments must be nonnegative")
    if sa == 0 or sb == 0:
        return Cert.exact(0)
    if alpha == INF:
        return Cert.max_of([ca, cb])
    if alpha == NEG_INF:
        return Cert.min_of([ca, cb])
    alpha = Fraction(alpha)
    inner = ca.pow(alpha) * t + cb.pow(alpha) * s
    return inner.pow(1 / alpha)


def alpha_mean(a, b, lam: Fraction, alpha: Ext) -> Cert:
    """M_alpha(a, b; lam): alpha_sum with weights (1-lam, lam); geometric at 0."""
    lam = Fraction(lam)
    if not 0 < lam < 1:
        raise ValueError("lambda must lie in (0, 1)")
    if alpha == 0:
        ca, cb = Cert.wrap(a), Cert.wrap(b)
        if ca.separate(0) == 0 or cb.separate(0) == 0:
            return Cert.exact(0)
        return ca.pow(1 - lam) * cb.pow(lam)
    return alpha_sum(a, b, 1 - lam, lam, alpha)


def bbl_exponent(alpha: Ext, n: int, p: Ext) -> Ext:
    """The transformed exponent p*alpha/(n*alpha + 1) of the BBL conclusion.

    alpha = -1/n maps to -inf, alpha = +inf to p/n, alpha = 0 to 0.
    """
    p = check_p(p)
    if n < 1:
        raise ValueError("dimension must be positive")
    if alpha == INF:
        return p / n
    alpha = Fraction(alpha)
    if alpha < Fraction(-1, n):
        raise ValueError("alpha below -1/n")
    if alpha == Fraction(-1, n):
        return NEG_INF
    return p * alpha / (n * alpha + 1)


@dataclass(frozen=True)
class HolderPair:
    """Coefficients t = (1-lam)^(1/p) (1-mu)^(1/q), s = lam^(1/p) mu^(1/q).

    t + s <= 1 always, with equality exactly when mu = lam.
    """

    t: Cert
    s: Cert
    lam: Fraction
    mu: Fraction
    p: Fraction


def holder_coefficients(lam: Fraction, mu: Fraction, p: Ext) -> HolderPair:
    lam, mu = Fraction(lam), Fraction(mu)
    p = check_p(p)
    if not 0 < lam < 1:
        raise ValueError("lambda must lie in (0, 1)")
    if not 0 <= mu <= 1:
        raise ValueError("mu must lie in [0, 1]")
    if p == 1:
        # q = inf: the mu-dependent factors are read as 1
        return HolderPair(Cert.exact(1 - lam), Cert.exact(lam), lam, mu, p)
    invq = 1 - 1 / p
    t = Cert.rational_pow(1 - lam, 1 / p) * Cert.rational_pow(1 - mu, invq)
    s = Cert.rational_pow(lam, 1 / p) * Cert.rational_pow(mu, invq)
    return HolderPair(t, s, lam, mu, p)


def optimal_mu0(lam: Fraction, p: Ext, beta: Ext, sum_f, sum_g) -> Cert:
    """The mu_0 for which the (t, s) alpha-sum with exponent beta equals the
    p*beta-mean of the two sums, as used to close the Hoelder step."""
    lam = Fraction(lam)
    p = check_p(p)
    if not is_finite(beta) or beta == 0:
        raise ValueError("beta must be finite and nonzero")
    beta = as_fraction(beta)
    f = Cert.wrap(sum_f)
    g = Cert.wrap(sum_g)
    if f.separate(0) != 1 or g.separate(0) != 1:
        raise ValueError("sums must be positive")
    fp = f.pow(p * beta)
    gp = g.pow(p * beta)
    return gp * lam / (fp * (1 - lam) + gp * lam)
