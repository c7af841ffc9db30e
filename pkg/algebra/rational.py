"""Exact rationals: the coefficient field of every computation

``fractions.Fraction`` already keeps numerator and denominator reduced with a
positive denominator, so it is used directly as the Rational type.
"""

import re
from fractions import Fraction
from typing import Union

from tools.error_handling import FieldSyntaxError

Rational = Fraction
RationalLike = Union[int, Fraction]

_RATIONAL_RE = re.compile(r"\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def as_rational(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected int or Fraction, got {type(value).__name__}")


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q`` or ``p``"""
    match = _RATIONAL_RE.match(text)
    if not match:
        raise FieldSyntaxError(f"invalid rational {text!r}", 0, "p or p/q")
    numerator, denominator = match.groups()
    if denominator is not None and int(denominator) == 0:
        raise FieldSyntaxError("zero denominator", match.start(2), "positive integer")
    return Fraction(int(numerator), int(denominator or 1))


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def pivot_size(value: Fraction) -> int:
    """Bit size used to pick the cheapest pivot during elimination"""
    return abs(value.numerator).bit_length() + value.denominator.bit_length()
