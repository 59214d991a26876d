"""Rational scalars and fixed-length rational vectors.

Vectors are plain tuples of ``fractions.Fraction``; this module provides the
small amount of arithmetic and formatting the rest of the library needs.
All arithmetic is exact — floats are rejected at the boundary.
"""

from fractions import Fraction
from math import gcd

from .errors import InputError

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def rat(value) -> Fraction:
    """Coerce ints, Fractions and 'p/q' strings to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {value!r}") from exc
    raise InputError(f"not an exact rational: {value!r} ({type(value).__name__})")


def vec(*entries) -> tuple:
    """Build a rational vector from ints/Fractions/strings."""
    return tuple(rat(e) for e in entries)


def as_vector(entries) -> tuple:
    return tuple(rat(e) for e in entries)


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vscale(c, a):
    return tuple(c * x for x in a)


def is_zero_vector(a) -> bool:
    return all(x == 0 for x in a)


def format_rat(q: Fraction) -> str:
    """Lowest-terms text form: '3', '-1/2'."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def primitive_integer(coeffs):
    """Scale a rational vector to coprime integers, preserving direction.

    Returns a tuple of ints; the zero vector maps to itself.
    """
    dens = [c.denominator for c in coeffs]
    lcm = 1
    for d in dens:
        lcm = lcm * d // gcd(lcm, d)
    ints = [int(c * lcm) for c in coeffs]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(ints)
