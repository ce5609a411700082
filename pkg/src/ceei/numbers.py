"""Numeric helpers shared by the whole engine.

All core math runs on plain Python numbers so that it works identically on
floats and on exact rationals (`fractions.Fraction`).  Exact mode exists so
the enumeration golden tests can compare allocation tables with no tolerance
at all; float mode is the default everywhere else.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Num = Union[int, float, Fraction]

#: Feasibility tolerance for per-item balance, relative to max(1, quantity).
FEAS_TOL = 1e-9
#: Entries above this may be clamped to zero when checking nonnegativity.
NEG_TOL = 1e-12
#: Default tolerance for KKT certificates.
KKT_TOL = 1e-7
#: Componentwise tolerance for deduplicating utility profiles (float mode).
PROFILE_TOL = 1e-6


def parse_number(value, exact: bool = False) -> Num:
    """Parse a JSON-ish scalar: int, float, or a "p/q" string.

    In exact mode everything becomes a Fraction; "p/q" strings are accepted
    in either mode.
    """
    if isinstance(value, bool):
        raise ValueError(f"expected a number, got {value!r}")
    if isinstance(value, str):
        frac = Fraction(value)
        return frac if exact else float(frac)
    if isinstance(value, (int, float)):
        if isinstance(value, float) and not _is_finite(value):
            raise ValueError(f"non-finite number {value!r}")
        if exact:
            return Fraction(value).limit_denominator(10**12) if isinstance(value, float) else Fraction(value)
        return value
    if isinstance(value, Fraction):
        return value if exact else float(value)
    raise ValueError(f"expected a number, got {value!r}")


def _is_finite(x: float) -> bool:
    return x == x and x not in (float("inf"), float("-inf"))


def is_exact(x: Num) -> bool:
    return isinstance(x, (Fraction, int))


def number_to_json(x: Num):
    """Serialize a number for JSON output (Fractions as "p/q" strings)."""
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return int(x)
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, float) and x.is_integer() and abs(x) < 2**53:
        return x
    return x


def close(a: Num, b: Num, tol: Num) -> bool:
    """|a - b| <= tol; with tol == 0 this is exact equality."""
    if tol == 0:
        return a == b
    return abs(a - b) <= tol


def profiles_equal(p: tuple, q: tuple, tol: Num) -> bool:
    return len(p) == len(q) and all(close(a, b, tol) for a, b in zip(p, q))


def ratio_cmp(n1: Num, d1: Num, n2: Num, d2: Num) -> int:
    """Compare n1/d1 against n2/d2 without dividing.

    Denominators may be zero (ratio treated as +infinity, which requires a
    positive or zero numerator by convention) or negative.  Returns -1/0/+1.
    """
    inf1 = d1 == 0
    inf2 = d2 == 0
    if inf1 and inf2:
        return 0
    if inf1:
        return 1
    if inf2:
        return -1
    lhs = n1 * d2
    rhs = n2 * d1
    if (d1 > 0) != (d2 > 0):
        lhs, rhs = rhs, lhs
    if lhs < rhs:
        return -1
    if lhs > rhs:
        return 1
    return 0
