"""Exact rational helpers shared by every module.

All quantities in this package are ``fractions.Fraction`` values; nothing is
ever rounded.  Rationals serialize as strings ``"p/q"`` in lowest terms (the
denominator is always written, so ``0`` serializes as ``"0/1"``).
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

__all__ = [
    "Rational",
    "as_fraction",
    "parse_rational",
    "format_rational",
    "parse_vector",
    "format_vector",
    "vector_lcm_denominator",
]

# t, volumes, coordinates, ... are all plain Fractions.
Rational = Fraction


def as_fraction(value) -> Fraction:
    """Coerce an int, Fraction, or "p/q" string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def parse_rational(text) -> Fraction:
    """Parse a rational from its wire form ("p/q" or "p") or a JSON int."""
    if isinstance(text, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, str):
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad rational {text!r}: {exc}") from None
    raise ValueError(f"bad rational {text!r} (floats are rejected; use 'p/q' strings)")


def format_rational(value) -> str:
    f = as_fraction(value)
    return f"{f.numerator}/{f.denominator}"


def parse_vector(items: Iterable) -> tuple[Fraction, ...]:
    return tuple(parse_rational(x) for x in items)


def format_vector(vec: Sequence) -> list[str]:
    return [format_rational(x) for x in vec]


def vector_lcm_denominator(vec: Sequence) -> int:
    """lcm of the denominators of a rational vector (1 for the empty vector)."""
    out = 1
    for x in vec:
        out = lcm(out, as_fraction(x).denominator)
    return out
