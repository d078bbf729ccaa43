"""Exact rationals: parsing, formatting and JSON encoding.

Rationals are plain :class:`fractions.Fraction` values. On the wire an
integer is written as a JSON number and any other rational as a ``"p/q"``
string.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable


class ParseError(ValueError):
    """Malformed textual input. ``pos`` is the 0-based offending offset."""

    def __init__(self, message: str, pos: int | None = None):
        self.pos = pos
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)


class InvariantViolation(RuntimeError):
    """An internal consistency check failed."""


def qq(x) -> Fraction:
    """Coerce ``x`` (int, Fraction, or ``"p/q"`` string) to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        try:
            num, _, den = s.partition("/")
            if den:
                return Fraction(int(num), int(den))
            return Fraction(int(num))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"not a rational: {x!r}") from None
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass 'p/q' strings")
    raise TypeError(f"cannot interpret {type(x).__name__} as a rational")


def qvec(xs: Iterable) -> tuple[Fraction, ...]:
    return tuple(qq(x) for x in xs)


def parse_vector(text: str) -> tuple[Fraction, ...]:
    """Parse ``"1,-2,3/4"`` (brackets optional) into a tuple of Fractions."""
    s = text.strip().strip("[]()")
    if not s:
        return ()
    return tuple(qq(part) for part in s.split(","))


def to_json(x):
    """Recursively encode Fractions for JSON output."""
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {str(k): to_json(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_json(v) for v in x]
    return x


def fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
