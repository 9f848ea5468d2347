"""Parsing and formatting of exact rationals and extended-real exponents.

Rationals travel as text ("a/b" or "a"); exponents additionally allow
"inf" and "-inf". Extended values are represented in memory as Fraction
for finite values and the float infinities for the two endpoints, which
keeps ordinary comparison operators exact and meaningful.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

INF = float("inf")
NEG_INF = float("-inf")

Ext = Union[Fraction, float]  # Fraction, or +-inf


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_exponent(text: str) -> Ext:
    t = text.strip().lower()
    if t in ("inf", "+inf", "oo", "+oo"):
        return INF
    if t in ("-inf", "-oo"):
        return NEG_INF
    return parse_rational(text)


def format_exponent(x: Ext) -> str:
    if x == INF:
        return "inf"
    if x == NEG_INF:
        return "-inf"
    return format_rational(x)


def is_finite(x: Ext) -> bool:
    return isinstance(x, (Fraction, int))


def as_fraction(x: Ext) -> Fraction:
    if not is_finite(x):
        raise ValueError("exponent is not finite")
    return Fraction(x)


def check_p(p: Ext) -> Fraction:
    """Validate an L_p exponent: finite rational p >= 1."""
    if not is_finite(p):
        raise ValueError("p = infinity is not supported")
    p = Fraction(p)
    if p < 1:
        raise ValueError(f"p must be >= 1, got {format_rational(p)}")
    return p


def check_alpha(alpha: Ext, n: int) -> Ext:
    """Validate a BBL exponent: -1/n <= alpha <= +inf."""
    if alpha == INF:
        return alpha
    if alpha == NEG_INF or Fraction(alpha) < Fraction(-1, n):
        raise ValueError(f"alpha must satisfy alpha >= -1/{n}")
    return Fraction(alpha)
