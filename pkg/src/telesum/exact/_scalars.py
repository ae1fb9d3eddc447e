"""Exact rational scalars.

All exact arithmetic in the engine runs on one rational type ``Q``.  We use
gmpy2's mpq (much faster gcd-heavy arithmetic than fractions.Fraction) and
fall back to the stdlib type when gmpy2 is unavailable.  Both expose
``.numerator`` / ``.denominator`` and hash/compare equal to each other, so
callers may mix them freely.
"""
from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as Q  # type: ignore
    from gmpy2 import gcd as _gcd
    from gmpy2 import mpz as _mpz

    def int_gcd(a: int, b: int) -> int:
        return int(_gcd(_mpz(a), _mpz(b)))

except ImportError:  # pragma: no cover - exercised only without gmpy2
    from math import gcd as _math_gcd

    Q = Fraction

    def int_gcd(a: int, b: int) -> int:
        return _math_gcd(a, b)


QLike = object  # ints, Fraction and mpq are all accepted where a Q is expected


def as_q(x) -> "Q":
    """Coerce an int / Fraction / mpq / digit string into Q."""
    if isinstance(x, str):
        return Q(Fraction(x))
    return Q(x)


def as_fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator)) if not isinstance(x, Fraction) else x


def q_gcd(a, b):
    """gcd on rationals: gcd(p1/q1, p2/q2) = gcd(p1, p2)/lcm(q1, q2), >= 0."""
    if a == 0:
        return abs(b)
    if b == 0:
        return abs(a)
    an, ad = int(a.numerator), int(a.denominator)
    bn, bd = int(b.numerator), int(b.denominator)
    num = int_gcd(abs(an), abs(bn))
    den = ad * bd // int_gcd(ad, bd)
    return Q(num, den)
