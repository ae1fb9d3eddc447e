"""Univariate polynomial utilities on top of MPoly: rational roots with
multiplicity, dispersion of a pair of shift polynomials, small helpers."""
from __future__ import annotations

from ._scalars import Q
from .mpoly import MPoly, mpoly_gcd


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def rational_roots(p: MPoly, var: str) -> list[tuple[Q, int]]:
    """All rational roots of a univariate polynomial with multiplicities,
    sorted by value.  Divisor enumeration on the integer-cleared trailing
    and leading coefficients, then deflation."""
    if p.vars_used() - {var}:
        raise ValueError("rational_roots needs a univariate polynomial")
    coeffs = p.to_univar(var)
    den = 1
    for c in coeffs:
        q = c.const_value()
        d = int(q.denominator)
        g = _gcd(den, d)
        den = den // g * d
    ic = [int(c.const_value() * den) for c in coeffs]
    roots: list[tuple[Q, int]] = []
    # root at zero
    t = 0
    while t < len(ic) - 1 and ic[t] == 0:
        t += 1
    if t:
        roots.append((Q(0), t))
        ic = ic[t:]
    if len(ic) <= 1:
        return roots
    for pnum in _divisors(ic[0]):
        for pden in _divisors(ic[-1]):
            if _gcd(pnum, pden) != 1:
                continue
            for sign in (1, -1):
                r = Q(sign * pnum, pden)
                m = 0
                while True:
                    quo, rem = _deflate(ic, r)
                    if rem != 0:
                        break
                    m += 1
                    ic = quo
                if m:
                    roots.append((r, m))
    roots.sort(key=lambda t: t[0])
    return roots


def _deflate(c: list[int], r: Q) -> tuple[list[int], Q]:
    """Synthetic division of sum(c[n] x^n) by (x - r); returns integer-cleared
    quotient coefficients and the remainder."""
    acc = Q(0)
    quo_q: list[Q] = []
    for x in reversed(c):
        acc = acc * r + x
        quo_q.append(acc)
    rem = quo_q.pop()
    quo_q.reverse()
    den = 1
    for q in quo_q:
        d = int(q.denominator)
        g = _gcd(den, d)
        den = den // g * d
    return [int(q * den) for q in quo_q], rem


def _gcd(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def dispersion_set(a: MPoly, b: MPoly, var: str, hmax: int = 64) -> list[int]:
    """All h in 0..hmax with gcd(a(x), b(x+h)) nonconstant in ``var``.
    Shift-bounded scan; hmax caps the search (arguments in this engine stay
    within small integer shift orbits)."""
    out = []
    if a.degree(var) <= 0 or b.degree(var) <= 0:
        return out
    for h in range(hmax + 1):
        g = mpoly_gcd(a, b.shift(var, h))
        if g.degree(var) > 0:
            out.append(h)
    return out
