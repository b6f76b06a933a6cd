"""Exact rational scalars.

All coefficients in the package are `gmpy2.mpq` values (arbitrary
precision, always reduced, positive denominator).  Strings of the form
"p/q" are the interchange format used in configs and output files.
"""

from fractions import Fraction

from gmpy2 import mpq

Rational = mpq

ZERO = mpq(0)
ONE = mpq(1)


def rat(value) -> mpq:
    """Coerce an int, string "p/q", Fraction or mpq to an mpq."""
    if isinstance(value, mpq):
        return value
    if isinstance(value, str):
        return mpq(Fraction(value))
    if isinstance(value, (int, Fraction)):
        return mpq(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def rat_str(value) -> str:
    """Render an mpq as "p/q" (or "p" for integers)."""
    return str(mpq(value))
