"""Rational scalars and their text encoding ("p/q", or "p" when q = 1)."""

from fractions import Fraction

Rational = Fraction


def Q(x):
    """Coerce ints, Fractions and "p/q" strings to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted: %r" % (x,))
    return Fraction(x)


def parse_rational(s):
    s = s.strip()
    if not s:
        raise ValueError("empty rational literal")
    if "/" in s:
        p, q = s.split("/")
        q = int(q)
        if q == 0:
            raise ValueError("zero denominator in %r" % s)
        return Fraction(int(p), q)
    return Fraction(int(s))


def format_rational(x):
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)
