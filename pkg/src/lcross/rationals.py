"""Helpers for exact rational values used throughout the package.

All probabilities, atom values, levels and thresholds are `fractions.Fraction`
instances.  Floats are rejected at the boundary so that rounding error cannot
enter an exact computation by accident.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Union

RationalLike = Union[int, str, Fraction]


def as_rational(x: RationalLike) -> Fraction:
    """Convert an int, Fraction, or string like "3/8" or "-2" to a Fraction.

    Floats are rejected: callers that start from floats must quantize
    explicitly before entering the exact layer.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational value")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse rational from {x!r}: {exc}") from exc
    raise TypeError(f"expected int, str or Fraction, got {type(x).__name__}")


def format_rational(q: Fraction) -> str:
    """Canonical lowest-terms string: "3" for integers, "3/8" otherwise."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def rational_gcd(a: Fraction, b: Fraction) -> Fraction:
    """Largest rational g with a/g and b/g both integers (gcd(x, 0) = |x|)."""
    a, b = Fraction(a), Fraction(b)
    num = gcd(a.numerator * b.denominator, b.numerator * a.denominator)
    return Fraction(num, a.denominator * b.denominator)
