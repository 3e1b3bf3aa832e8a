"""Small shared helpers: natural ordering and canonical rational formatting."""

from __future__ import annotations

import re
from fractions import Fraction

_DIGIT_RUN = re.compile(r"(\d+)")


def natural_key(text: str) -> tuple:
    """Sort key that compares digit runs numerically: C9 < C11, T2 < T10.

    Mixed chunks stay comparable because every chunk is a (flag, int, str)
    triple: numeric chunks sort before textual ones of the same position.
    """
    parts = _DIGIT_RUN.split(text)
    key = []
    for part in parts:
        if not part:
            continue
        if part.isdigit():
            key.append((0, int(part), ""))
        else:
            key.append((1, 0, part))
    return tuple(key)


def parse_q(value) -> Fraction:
    """Parse a rational from int/float/str ('3', '1.5', '2/3')."""
    if isinstance(value, bool):
        raise ValueError(f"not a number: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, float):
        # Repr round-trips the intended decimal for anything a human typed.
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise ValueError(f"not a number: {value!r}")


def fmt_q(value: Fraction) -> str:
    """Canonical text for a rational: '3', '1.5', or '2/3'.

    Terminating decimals are printed with the fewest digits; everything
    else falls back to p/q.
    """
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    den = value.denominator
    twos = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    fives = 0
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{value.numerator}/{value.denominator}"
    digits = max(twos, fives)
    scaled = value.numerator * 10**digits // value.denominator
    sign = "-" if scaled < 0 else ""
    text = str(abs(scaled)).rjust(digits + 1, "0")
    return f"{sign}{text[:-digits]}.{text[-digits:]}"


def fmt_minutes(value: Fraction) -> str:
    """Clock text for whole minutes inside a day, else raw minutes."""
    value = Fraction(value)
    if value.denominator == 1 and 0 <= value < 1440:
        return f"{value.numerator // 60:02d}:{value.numerator % 60:02d}"
    return f"{fmt_q(value)}min"
