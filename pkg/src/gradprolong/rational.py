"""Exact rational scalars.

All matrix entries are :class:`fractions.Fraction`.  Floats are refused
outright: a binary float almost never equals the decimal the user meant, and
the commutativity check relies on exact equality.
"""
import re
from fractions import Fraction
from numbers import Rational

_LITERAL = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(text):
    """Parse ``"a"`` or ``"a/b"`` into a Fraction.

    >>> parse_rational("-3/6")
    Fraction(-1, 2)
    """
    text = text.strip()
    if not _LITERAL.match(text):
        raise ValueError(f"not a rational literal: {text!r} (use 'a' or 'a/b')")
    return Fraction(text)


def as_rational(value):
    """Coerce ints, Fractions and rational literals; reject floats."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rational values")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def format_rational(value):
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
