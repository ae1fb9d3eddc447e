"""Dense univariate polynomial arithmetic modulo word-sized primes, plus the
reconstruction toolkit for lifting modular data back to exact rationals:
Newton interpolation, Cauchy rational-function recovery through the extended
Euclidean algorithm, two-prime CRT, and continued-fraction rational lifting.

Polynomials are ascending coefficient lists of ints in [0, p), trimmed, with
[] as zero.  Everything here is probabilistic-input, exact-output material:
callers must verify reconstructed objects symbolically."""
from __future__ import annotations

from ._scalars import Q

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _next_prime(n: int) -> int:
    n += 1 + (n % 2)
    while not _is_prime(n):
        n += 2
    return n


PRIMES = tuple(_next_prime((1 << 61) + (k << 32)) for k in range(16))
PRIME1, PRIME2 = PRIMES[0], PRIMES[1]


def ptrim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def pdeg(a: list) -> int:
    return len(a) - 1


def padd(a: list, b: list, p: int) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return ptrim(out)


def psub(a: list, b: list, p: int) -> list:
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return ptrim(out)


def pmul(a: list, b: list, p: int) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return ptrim([c % p for c in out])


def pscale(a: list, c: int, p: int) -> list:
    c %= p
    if c == 0:
        return []
    return [ai * c % p for ai in a]


def peval(a: list, x: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def pdivmod(a: list, b: list, p: int) -> tuple:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(b[-1], -1, p)
    rem = list(a)
    if len(rem) < len(b):
        return [], ptrim(rem)
    quo = [0] * (len(rem) - len(b) + 1)
    for k in range(len(quo) - 1, -1, -1):
        c = rem[k + len(b) - 1] * inv % p
        if c:
            quo[k] = c
            for i, bi in enumerate(b):
                rem[k + i] = (rem[k + i] - c * bi) % p
    return ptrim(quo), ptrim(rem)


def from_roots(xs: list, p: int) -> list:
    out = [1]
    for x in xs:
        out = pmul(out, [(-x) % p, 1], p)
    return out


def interp_newton(xs: list, ys: list, p: int) -> list:
    """Interpolating polynomial through (xs, ys), coefficients mod p."""
    m = len(xs)
    dd = [y % p for y in ys]
    consecutive = all(xs[i] - xs[i - 1] == 1 for i in range(1, m))
    for k in range(1, m):
        if consecutive:
            # all divided-difference denominators at level k equal k
            inv = pow(k % p, -1, p)
            for i in range(m - 1, k - 1, -1):
                dd[i] = (dd[i] - dd[i - 1]) * inv % p
        else:
            for i in range(m - 1, k - 1, -1):
                dd[i] = (dd[i] - dd[i - 1]) \
                    * pow((xs[i] - xs[i - k]) % p, -1, p) % p
    poly: list = []
    for k in range(m - 1, -1, -1):
        poly = pmul(poly, [(-xs[k]) % p, 1], p)
        poly = padd(poly, [dd[k]], p)
    return poly


def rat_fn_recon(xs: list, ys: list, p: int):
    """(num, den) with num/den matching the samples and den monic, found by
    running the extended Euclidean algorithm on (prod(x - xs), interpolant)
    until the remainder degree fits the numerator budget; None when the
    samples admit no such function (e.g. a sample hits a pole)."""
    m = len(xs)
    big = from_roots(xs, p)
    f = interp_newton(xs, ys, p)
    r0, r1 = big, f
    t0, t1 = [], [1]
    budget = (m - 1) // 2
    while pdeg(r1) > budget:
        q, r = pdivmod(r0, r1, p)
        r0, r1 = r1, r
        t0, t1 = t1, psub(t0, pmul(q, t1, p), p)
    num, den = r1, t1
    if not den:
        return None
    for x in xs:
        if peval(den, x, p) == 0:
            return None
    inv = pow(den[-1], -1, p)
    return pscale(num, inv, p), pscale(den, inv, p)


def crt2(a1: int, p1: int, a2: int, p2: int) -> int:
    return (a1 + p1 * ((a2 - a1) * pow(p1, -1, p2) % p2)) % (p1 * p2)


def rat_lift(a: int, modulus: int):
    """The rational n/d with n = a*d mod modulus and |n|, d below
    sqrt(modulus/2), via the half-extended Euclidean algorithm; None when no
    such small fraction exists."""
    from math import isqrt
    bound = isqrt(modulus // 2)
    r0, r1 = modulus, a % modulus
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > bound:
        return None
    from math import gcd
    if gcd(abs(t1), modulus) != 1:
        return None
    num, den = (r1, t1) if t1 > 0 else (-r1, -t1)
    return Q(num, den)
