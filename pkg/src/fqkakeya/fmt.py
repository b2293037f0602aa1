"""Rendering of exact rationals for reports."""

from __future__ import annotations

from fractions import Fraction


def decimal6(x) -> str:
    """x rounded half-up to 6 decimals, computed exactly."""
    x = Fraction(x)
    sign = "-" if x < 0 else ""
    x = abs(x)
    scaled = (x.numerator * 10 ** 6 * 2 + x.denominator) // (2 * x.denominator)
    whole, frac = divmod(scaled, 10 ** 6)
    return f"{sign}{whole}.{frac:06d}"


def ratio(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def rational_json(x) -> dict:
    x = Fraction(x)
    return {"numerator": x.numerator, "denominator": x.denominator, "decimal": decimal6(x)}
