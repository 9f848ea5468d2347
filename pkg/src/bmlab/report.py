"""Check reports: certified two-sided comparisons with a verdict.

The verdict is derived from enclosure comparison only. Violation demands
lhs.upper < rhs.lower at some precision, HoldsWithEquality demands proven
equality (exact rationals) or overlapping enclosures both tighter than the
equality tolerance; everything else undecided stays ambiguous.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .certified import MAX_BITS, Cert

HOLDS = "Holds"
EQUALITY = "HoldsWithEquality"
AMBIGUOUS = "AmbiguousWithinTolerance"
VIOLATION = "Violation"

#: enclosures both tighter than this that still overlap count as equal
EQ_TOL = Fraction(1, 10 ** 20)


@dataclass(frozen=True)
class CheckReport:
    inequality_id: str
    verdict: str
    lhs: Cert
    rhs: Cert
    slack: Cert
    witness: dict = field(default_factory=dict)
    runtime_ms: int = 0

    @property
    def ok(self) -> bool:
        return self.verdict in (HOLDS, EQUALITY)


def _bits_for(tol: Fraction) -> int:
    need = (Fraction(tol).denominator.bit_length()
            - Fraction(tol).numerator.bit_length() + 16)
    return max(64, min(MAX_BITS, need))


def compare_sides(lhs: Cert, rhs: Cert, tol=Fraction(1, 10 ** 9)) -> str:
    bits = _bits_for(tol)
    sep = (lhs - rhs).separate(0, max_bits=bits)
    if sep is None:
        sep = (lhs - rhs).separate(0, max_bits=min(MAX_BITS, 4 * bits))
    if sep == 0:
        return EQUALITY
    if sep == 1:
        return HOLDS
    if sep == -1:
        return VIOLATION
    a, b = lhs.bounds(bits)
    c, d = rhs.bounds(bits)
    if b - a < EQ_TOL and d - c < EQ_TOL and a <= d and c <= b:
        return EQUALITY
    return AMBIGUOUS


def make_report(inequality_id: str, lhs: Cert, rhs: Cert, witness: dict,
                started: float, tol=Fraction(1, 10 ** 9)) -> CheckReport:
    verdict = compare_sides(lhs, rhs, tol)
    return CheckReport(inequality_id, verdict, lhs, rhs, lhs - rhs,
                       witness, int((time.monotonic() - started) * 1000))
