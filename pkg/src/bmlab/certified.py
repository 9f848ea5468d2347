"""Certified real arithmetic: exact rational intervals with on-demand refinement.

A ``Cert`` wraps a function ``bits -> (lo, hi)`` returning an exact rational
enclosure of a real number; asking for more bits yields a tighter enclosure.
Rational values are carried as zero-width intervals, so exactness propagates
through field operations and is only lost at genuinely irrational roots.

Comparisons refine both sides until they separate; if they cannot be
separated at the maximum precision (roughly width 1e-300) the comparison
reports ambiguity instead of guessing.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, Union

#: default working precision, enclosure width about 1e-30
DEFAULT_BITS = 100
#: refinement floor, width about 1e-300
MAX_BITS = 1024

Rat = Union[Fraction, int]


class AmbiguousComparison(Exception):
    """Raised when two enclosures cannot be separated at maximum precision."""


def iroot(x: int, k: int) -> int:
    """Floor of the k-th root of a nonnegative integer."""
    if x < 0:
        raise ValueError("iroot of negative integer")
    if k == 1 or x in (0, 1):
        return x
    if k == 2:
        return math.isqrt(x)
    # Newton iteration on integers, seeded from the bit length.
    r = 1 << -(-x.bit_length() // k)
    while True:
        nr = ((k - 1) * r + x // r ** (k - 1)) // k
        if nr >= r:
            break
        r = nr
    while r ** k > x:
        r -= 1
    return r


def perfect_root(x: Fraction, k: int) -> Fraction | None:
    """Exact k-th root of a nonnegative rational, or None if irrational."""
    if x < 0:
        raise ValueError("root of negative rational")
    pn = iroot(x.numerator, k)
    if pn ** k != x.numerator:
        return None
    pd = iroot(x.denominator, k)
    if pd ** k != x.denominator:
        return None
    return Fraction(pn, pd)


def _root_interval(x: Fraction, k: int, bits: int) -> tuple[Fraction, Fraction]:
    """Enclosure of x**(1/k) for x >= 0 with granularity 2**-bits."""
    exact = perfect_root(x, k)
    if exact is not None:
        return exact, exact
    a, b = x.numerator, x.denominator
    scale = b << (k * bits)
    n = iroot(a * b ** (k - 1) << (k * bits), k)
    den = b << bits
    return Fraction(n, den), Fraction(n + 1, den)


def _round_out(lo: Fraction, hi: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Round an interval outward to denominator 2**bits (exact points kept)."""
    if lo == hi:
        return lo, hi
    scale = 1 << bits
    lo2 = Fraction(math.floor(lo * scale), scale)
    hi2 = Fraction(math.ceil(hi * scale), scale)
    return lo2, hi2


class Cert:
    """An enclosure of a real number, refinable to arbitrary precision."""

    __slots__ = ("_fn", "_bits", "_lo", "_hi")

    def __init__(self, fn: Callable[[int], tuple[Fraction, Fraction]]):
        self._fn = fn
        self._bits = -1
        self._lo: Fraction | None = None
        self._hi: Fraction | None = None

    # -- construction ------------------------------------------------------

    @staticmethod
    def exact(value: Rat) -> "Cert":
        v = Fraction(value)
        c = Cert(lambda bits: (v, v))
        c._bits, c._lo, c._hi = MAX_BITS, v, v
        return c

    @staticmethod
    def wrap(value: "Cert | Rat") -> "Cert":
        return value if isinstance(value, Cert) else Cert.exact(value)

    # -- evaluation --------------------------------------------------------

    def bounds(self, bits: int = DEFAULT_BITS) -> tuple[Fraction, Fraction]:
        if bits > MAX_BITS:
            bits = MAX_BITS
        if self._bits >= bits:
            return self._lo, self._hi  # cached tighter or equal
        lo, hi = self._fn(bits)
        if lo > hi:
            raise AssertionError("inverted enclosure")
        self._bits, self._lo, self._hi = bits, lo, hi
        return lo, hi

    @property
    def lo(self) -> Fraction:
        return self.bounds()[0]

    @property
    def hi(self) -> Fraction:
        return self.bounds()[1]

    def width(self, bits: int = DEFAULT_BITS) -> Fraction:
        lo, hi = self.bounds(bits)
        return hi - lo

    def is_exact(self, bits: int = DEFAULT_BITS) -> bool:
        lo, hi = self.bounds(bits)
        return lo == hi

    def exact_value(self) -> Fraction | None:
        lo, hi = self.bounds()
        return lo if lo == hi else None

    def midpoint(self, bits: int = DEFAULT_BITS) -> Fraction:
        lo, hi = self.bounds(bits)
        return (lo + hi) / 2

    def __float__(self) -> float:
        return float(self.midpoint())

    def __repr__(self) -> str:
        lo, hi = self.bounds()
        if lo == hi:
            return f"Cert({lo})"
        return f"Cert([{float(lo):.17g}, {float(hi):.17g}])"

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Cert | Rat") -> "Cert":
        o = Cert.wrap(other)

        def fn(bits: int) -> tuple[Fraction, Fraction]:
            a, b = self.bounds(bits + 4)
            c, d = o.bounds(bits + 4)
            return _round_out(a + c, b + d, bits + 2)

        return Cert(fn)

    __radd__ = __add__

    def __neg__(self) -> "Cert":
        def fn(bits: int) -> tuple[Fraction, Fraction]:
            a, b = self.bounds(bits)
            return -b, -a

        return Cert(fn)

    def __sub__(self, other: "Cert | Rat") -> "Cert":
        return self + (-Cert.wrap(other))

    def __rsub__(self, other: Rat) -> "Cert":
        return Cert.wrap(other) + (-self)

    def __mul__(self, other: "Cert | Rat") -> "Cert":
        o = Cert.wrap(other)

        def fn(bits: int) -> tuple[Fraction, Fraction]:
            a, b = self.bounds(bits + 8)
            c, d = o.bounds(bits + 8)
            prods = (a * c, a * d, b * c, b * d)
            return _round_out(min(prods), max(prods), bits + 2)

        return Cert(fn)

    __rmul__ = __mul__

    def __truediv__(self, other: "Cert | Rat") -> "Cert":
        o = Cert.wrap(other)

        def fn(bits: int) -> tuple[Fraction, Fraction]:
            c, d = o.bounds(bits + 8)
            b = bits + 8
            while c <= 0 <= d:
                if b >= MAX_BITS:
                    raise AmbiguousComparison("division by enclosure containing 0")
                b = min(2 * b, MAX_BITS)
                c, d = o.bounds(b)
            a, bb = self.bounds(bits + 8)
            quots = (a / c, a / d, bb / c, bb / d)
            return _round_out(min(quots), max(quots), bits + 2)

        return Cert(fn)

    def __rtruediv__(self, other: Rat) -> "Cert":
        return Cert.wrap(other) / self

    def __abs__(self) -> "Cert":
        def fn(bits: int) -> tuple[Fraction, Fraction]:
            a, b = self.bounds(bits)
            if a >= 0:
                return a, b
            if b <= 0:
                return -b, -a
            return Fraction(0), max(-a, b)

        return Cert(fn)

    # -- roots and rational powers ------------------------------------------

    @staticmethod
    def root(x: "Cert | Rat", k: int) -> "Cert":
        """Enclosure of the k-th root of a nonnegative value."""
        if k <= 0:
            raise ValueError("root order must be positive")
        c = Cert.wrap(x)

        def fn(bits: int) -> tuple[Fraction, Fraction]:
            lo, hi = c.bounds(k * (bits + 2))
            if hi < 0:
                raise ValueError("root of negative enclosure")
            lo = max(lo, Fraction(0))
            rlo = _root_interval(lo, k, bits + 2)[0]
            rhi = _root_interval(hi, k, bits + 2)[1]
            return _round_out(rlo, rhi, bits + 2)

        return Cert(fn)

    def pow(self, e: Fraction | int) -> "Cert":
        """self**e for a nonnegative enclosure and rational exponent."""
        e = Fraction(e)
        if e == 0:
            return Cert.exact(1)
        if e.denominator == 1 and e > 0:
            n = e.numerator

            def fn(bits: int) -> tuple[Fraction, Fraction]:
                lo, hi = self.bounds(bits + 4 + n.bit_length())
                if lo < 0:
                    raise ValueError("pow of negative enclosure")
                return _round_out(lo ** n, hi ** n, bits + 2)

            return Cert(fn)
        if e > 0:
            return Cert.root(self.pow(Fraction(e.numerator)), e.denominator)
        return Cert.exact(1) / self.pow(-e)

    @staticmethod
    def rational_pow(x: Rat, e: Fraction | int) -> "Cert":
        """x**e for a nonnegative rational base and rational exponent."""
        x = Fraction(x)
        e = Fraction(e)
        if x < 0:
            raise ValueError("rational_pow of negative base")
        if e == 0:
            return Cert.exact(1)
        if x == 0:
            if e < 0:
                raise ZeroDivisionError("0 to a negative power")
            return Cert.exact(0)
        inner = x ** e.numerator  # exact Fraction, handles negative numerator
        if e.denominator == 1:
            return Cert.exact(inner)
        return Cert.root(Cert.exact(inner), e.denominator)

    # -- lattice of enclosures ----------------------------------------------

    @staticmethod
    def max_of(values: Iterable["Cert | Rat"]) -> "Cert":
        cs = [Cert.wrap(v) for v in values]
        if not cs:
            raise ValueError("max_of of empty sequence")

        def fn(bits: int) -> tuple[Fraction, Fraction]:
            bs = [c.bounds(bits) for c in cs]
            return max(b[0] for b in bs), max(b[1] for b in bs)

        return Cert(fn)

    @staticmethod
    def min_of(values: Iterable["Cert | Rat"]) -> "Cert":
        cs = [Cert.wrap(v) for v in values]
        if not cs:
            raise ValueError("min_of of empty sequence")

        def fn(bits: int) -> tuple[Fraction, Fraction]:
            bs = [c.bounds(bits) for c in cs]
            return min(b[0] for b in bs), min(b[1] for b in bs)

        return Cert(fn)

    @staticmethod
    def sum_of(values: Iterable["Cert | Rat"]) -> "Cert":
        cs = [Cert.wrap(v) for v in values]
        if not cs:
            return Cert.exact(0)

        def fn(bits: int) -> tuple[Fraction, Fraction]:
            extra = max(4, len(cs).bit_length() + 2)
            lo = Fraction(0)
            hi = Fraction(0)
            for c in cs:
                a, b = c.bounds(bits + extra)
                lo += a
                hi += b
            return _round_out(lo, hi, bits + 2)

        return Cert(fn)

    # -- comparisons ---------------------------------------------------------

    def separate(self, other: "Cert | Rat", max_bits: int = MAX_BITS) -> int | None:
        """Certified comparison: -1, 0 (proven equal) or 1; None if undecided.

        0 is returned only when both enclosures are exact and equal; overlap
        of inexact enclosures at max_bits yields None.
        """
        o = Cert.wrap(other)
        # cheap precision first: most comparisons have real slack and
        # separate long before the tolerance-driven bit budget
        bits = min(32, max_bits)
        while True:
            a, b = self.bounds(bits)
            c, d = o.bounds(bits)
            if b < c:
                return -1
            if d < a:
                return 1
            if a == b and c == d:
                return 0 if a == c else (-1 if a < c else 1)
            if bits >= max_bits:
                return None
            bits = min(2 * bits, max_bits)

    def cmp(self, other: "Cert | Rat", max_bits: int = MAX_BITS) -> int:
        r = self.separate(other, max_bits)
        if r is None:
            raise AmbiguousComparison(f"cannot separate {self!r} and {other!r}")
        return r

    def __lt__(self, other: "Cert | Rat") -> bool:
        return self.cmp(other) < 0

    def __gt__(self, other: "Cert | Rat") -> bool:
        return self.cmp(other) > 0

    def __le__(self, other: "Cert | Rat") -> bool:
        return self.cmp(other) <= 0

    def __ge__(self, other: "Cert | Rat") -> bool:
        return self.cmp(other) >= 0

    # -- integer parts -------------------------------------------------------

    def floor(self, max_bits: int = MAX_BITS) -> int:
        """Certified floor; ambiguous only for an unprovably-integer value."""
        bits = DEFAULT_BITS
        while True:
            a, b = self.bounds(bits)
            fa, fb = math.floor(a), math.floor(b)
            if fa == fb:
                return fa
            if a == b:
                return fa
            if bits >= max_bits:
                raise AmbiguousComparison("floor does not separate")
            bits = min(2 * bits, max_bits)

    def ceil(self, max_bits: int = MAX_BITS) -> int:
        return -((-self).floor(max_bits))


def count_integers_between(lo: Cert, hi: Cert, lo_open: bool, hi_open: bool,
                           max_bits: int = MAX_BITS) -> int:
    """Number of integers z with lo (<|<=) z (<|<=) hi, certified.

    Endpoint membership is decided exactly when the endpoint enclosure is
    exact; an irrational endpoint separates from every integer on refinement.
    """
    lov = lo.exact_value()
    hiv = hi.exact_value()
    if hiv is not None:
        top = math.ceil(hiv) - 1 if hi_open else math.floor(hiv)
    else:
        # hi irrational or unresolved: strictness is immaterial once separated
        top = hi.floor(max_bits)
    if lov is not None:
        bot = math.floor(lov) + 1 if lo_open else math.ceil(lov)
    else:
        bot = lo.ceil(max_bits)
    return max(0, top - bot + 1)
