"""Sparse multivariate polynomials over the rationals.

The engine works with a fixed, finite variable universe (the free symbols the
summation DSL admits).  Every polynomial carries exponents for the full
universe; unused variables simply stay at exponent zero.  Terms map exponent
tuples to nonzero rational coefficients.

gcd uses content/primitive-part recursion over a main variable with a
subresultant PRS, an integer-coefficient fast path for univariate input, and
a sound evaluation shortcut: if a random univariate image of the two primitive
parts is coprime (and the leading coefficients survive the evaluation), the
primitive parts themselves are coprime.
"""
from __future__ import annotations

import random
from typing import Iterable, Iterator, Sequence

from ._scalars import Q, as_q, int_gcd, q_gcd

SYMBOLS = ("N", "a", "b", "i", "j", "k")
NVARS = len(SYMBOLS)
VARIDX = {s: n for n, s in enumerate(SYMBOLS)}
_ZEXP = (0,) * NVARS

_rng = random.Random(0x5eed)


def _exp_add(e1: tuple, e2: tuple) -> tuple:
    return tuple(a + b for a, b in zip(e1, e2))


class MPoly:
    """Immutable-by-convention sparse polynomial; ``terms`` maps exponent
    tuples (length NVARS) to nonzero Q coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = terms or {}

    # -- constructors -------------------------------------------------

    @staticmethod
    def const(c) -> "MPoly":
        c = as_q(c)
        return MPoly({_ZEXP: c} if c != 0 else {})

    @staticmethod
    def var(name: str) -> "MPoly":
        e = [0] * NVARS
        e[VARIDX[name]] = 1
        return MPoly({tuple(e): Q(1)})

    @staticmethod
    def linear_form(symbols: Iterable[str], offset=0) -> "MPoly":
        """sum of the given symbols plus a constant offset."""
        terms: dict = {}
        for s in symbols:
            e = [0] * NVARS
            e[VARIDX[s]] = 1
            terms[tuple(e)] = terms.get(tuple(e), Q(0)) + 1
        off = as_q(offset)
        if off != 0:
            terms[_ZEXP] = off
        return MPoly({e: c for e, c in terms.items() if c != 0})

    # -- queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _ZEXP in self.terms)

    def const_value(self):
        if not self.terms:
            return Q(0)
        if not self.is_const():
            raise ValueError(f"not a constant: {self}")
        return self.terms[_ZEXP]

    def degree(self, var: str) -> int:
        """Degree in one variable; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        idx = VARIDX[var]
        return max(e[idx] for e in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def vars_used(self) -> frozenset:
        used = set()
        for e in self.terms:
            for n, p in enumerate(e):
                if p:
                    used.add(SYMBOLS[n])
        return frozenset(used)

    def lex_lead(self) -> tuple:
        """(exponent, coeff) of the lex-largest monomial."""
        if not self.terms:
            return (_ZEXP, Q(0))
        e = max(self.terms)
        return (e, self.terms[e])

    def __eq__(self, other) -> bool:
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None  # type: ignore

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- ring operations ------------------------------------------------

    def __neg__(self) -> "MPoly":
        return MPoly({e: -c for e, c in self.terms.items()})

    def __add__(self, other) -> "MPoly":
        if not isinstance(other, MPoly):
            other = MPoly.const(other)
        if len(self.terms) < len(other.terms):
            self, other = other, self
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s == 0:
                    del out[e]
                else:
                    out[e] = s
        return MPoly(out)

    def __sub__(self, other) -> "MPoly":
        if not isinstance(other, MPoly):
            other = MPoly.const(other)
        return self + (-other)

    __radd__ = __add__

    def __rsub__(self, other) -> "MPoly":
        return MPoly.const(other) - self

    def __mul__(self, other) -> "MPoly":
        if not isinstance(other, MPoly):
            c = as_q(other)
            if c == 0:
                return MPoly()
            return MPoly({e: v * c for e, v in self.terms.items()})
        if not self.terms or not other.terms:
            return MPoly()
        if other.is_const():
            return self * other.const_value()
        if self.is_const():
            return other * self.const_value()
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _exp_add(e1, e2)
                s = out.get(e)
                if s is None:
                    out[e] = c1 * c2
                else:
                    s = s + c1 * c2
                    if s == 0:
                        del out[e]
                    else:
                        out[e] = s
        return MPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- substitution / evaluation ---------------------------------------

    def to_univar(self, var: str) -> list["MPoly"]:
        """Dense coefficient list in ``var`` (index = power), coefficients
        polynomials in the remaining variables."""
        idx = VARIDX[var]
        d = self.degree(var)
        coeffs = [dict() for _ in range(d + 1)] if d >= 0 else []
        for e, c in self.terms.items():
            p = e[idx]
            rest = e[:idx] + (0,) + e[idx + 1:]
            coeffs[p][rest] = c
        return [MPoly(t) for t in coeffs]

    @staticmethod
    def from_univar(var: str, coeffs: Sequence["MPoly"]) -> "MPoly":
        idx = VARIDX[var]
        out: dict = {}
        for p, cf in enumerate(coeffs):
            for e, c in cf.terms.items():
                ee = e[:idx] + (e[idx] + p,) + e[idx + 1:]
                out[ee] = out.get(ee, Q(0)) + c
        return MPoly({e: c for e, c in out.items() if c != 0})

    def subst(self, var: str, value: "MPoly") -> "MPoly":
        """Substitute a polynomial for ``var`` (Horner)."""
        if self.degree(var) <= 0:
            return self
        coeffs = self.to_univar(var)
        res = coeffs[-1]
        for cf in reversed(coeffs[:-1]):
            res = res * value + cf
        return res

    def shift(self, var: str, delta: int) -> "MPoly":
        if delta == 0 or self.degree(var) <= 0:
            return self
        return self.subst(var, MPoly.var(var) + MPoly.const(delta))

    def eval_partial(self, bindings: dict) -> "MPoly":
        p = self
        for s, v in bindings.items():
            if p.degree(s) > 0:
                p = p.subst(s, MPoly.const(v))
        return p

    def eval_q(self, bindings: dict):
        """Full evaluation to a rational; all used variables must be bound."""
        out = Q(0)
        vals = {VARIDX[s]: as_q(v) for s, v in bindings.items()}
        for e, c in self.terms.items():
            t = c
            for n, p in enumerate(e):
                if p:
                    t = t * vals[n] ** p
            out = out + t
        return out

    def derivative(self, var: str) -> "MPoly":
        idx = VARIDX[var]
        out: dict = {}
        for e, c in self.terms.items():
            p = e[idx]
            if p:
                ee = e[:idx] + (p - 1,) + e[idx + 1:]
                out[ee] = out.get(ee, Q(0)) + c * p
        return MPoly({e: c for e, c in out.items() if c != 0})

    # -- content / division ----------------------------------------------

    def q_content(self):
        """Rational content (nonnegative); 0 for the zero polynomial."""
        c = Q(0)
        for v in self.terms.values():
            c = q_gcd(c, v)
            if c == 1:
                break
        return c

    def scale(self, q) -> "MPoly":
        q = as_q(q)
        if q == 0:
            return MPoly()
        return MPoly({e: c * q for e, c in self.terms.items()})

    def divexact(self, d: "MPoly") -> "MPoly":
        """Exact division; raises ValueError if not divisible."""
        if d.is_zero():
            raise ZeroDivisionError("mpoly divexact by zero")
        if d.is_const():
            return self.scale(Q(1) / d.const_value())
        if self.is_zero():
            return MPoly()
        var = _main_var(d)
        num = self.to_univar(var)
        den = d.to_univar(var)
        out: list[MPoly] = []
        while len(num) >= len(den):
            if num and num[-1].is_zero():
                num.pop()
                out.append(MPoly())
                continue
            lead = num[-1].divexact(den[-1])
            out.append(lead)
            k = len(num) - len(den)
            for n, c in enumerate(den):
                num[k + n] = num[k + n] - lead * c
            assert num[-1].is_zero()
            num.pop()
        if any(not c.is_zero() for c in num):
            raise ValueError("mpoly division not exact")
        out.reverse()
        return MPoly.from_univar(var, out)

    def divides(self, other: "MPoly") -> bool:
        try:
            other.divexact(self)
            return True
        except (ValueError, ZeroDivisionError):
            return False

    # -- printing ---------------------------------------------------------

    def __repr__(self) -> str:  # debug form
        return f"MPoly({self!s})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                SYMBOLS[n] + (f"^{p}" if p > 1 else "")
                for n, p in enumerate(e) if p
            )
            if mono:
                if c == 1:
                    s = mono
                elif c == -1:
                    s = "-" + mono
                else:
                    s = f"{c}*{mono}"
            else:
                s = str(c)
            parts.append(s)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


def _main_var(p: MPoly) -> str:
    for s in SYMBOLS:
        if p.degree(s) > 0:
            return s
    raise ValueError("constant polynomial has no main variable")


# -- gcd ------------------------------------------------------------------


def mpoly_gcd(a: MPoly, b: MPoly) -> MPoly:
    """Monic gcd (lex-leading coefficient 1); gcd(0,0) = 0.  Rational
    contents are units over the field, so constants collapse to 1."""
    if a.is_zero():
        return _monic(b)
    if b.is_zero():
        return _monic(a)
    if a.is_const() or b.is_const():
        return MPoly.const(1)
    av, bv = a.vars_used(), b.vars_used()
    common = av & bv
    if not common:
        return MPoly.const(1)
    if len(av) == 1 and av == bv:
        return _monic(_gcd_univar_q(a, b, next(iter(av))))
    small, big = (a, b) if len(a.terms) <= len(b.terms) else (b, a)
    if small.divides(big):
        return _monic(small)
    var = next(s for s in SYMBOLS if s in common)
    ac, ap = _content_pp(a, var)
    bc, bp = _content_pp(b, var)
    cont_g = mpoly_gcd(ac, bc)
    if _image_coprime(ap, bp, var):
        return cont_g
    g = None
    if len(av | bv) == 2:
        g = _gcd_bivar(ap, bp, var)
    if g is None:
        g = _prs_gcd(ap, bp, var)
    return _monic(g * cont_g)


def _monic(p: MPoly) -> MPoly:
    _, lc = p.lex_lead()
    if lc == 0 or lc == 1:
        return p
    return p.scale(Q(1) / lc)


def _content_pp(p: MPoly, var: str) -> tuple[MPoly, MPoly]:
    # smallest coefficients first: a unit content (the common case for
    # monic-in-var products) is then detected before any large gcd runs
    coeffs = sorted(p.to_univar(var), key=lambda c: len(c.terms))
    cont = MPoly()
    for c in coeffs:
        cont = mpoly_gcd(cont, c)
        if cont.is_const() and cont.const_value() == 1:
            break
    if cont.is_zero():
        return MPoly.const(1), p
    return cont, p.divexact(cont)


def _image_coprime(a: MPoly, b: MPoly, var: str) -> bool:
    """True if a random evaluation of the other variables proves the
    primitive parts coprime.  A positive-degree common factor survives any
    evaluation that keeps both leading coefficients nonzero, so a coprime
    image certifies coprimality; a non-coprime image proves nothing."""
    others = (a.vars_used() | b.vars_used()) - {var}
    if not others:
        return _gcd_univar_q(a, b, var).degree(var) == 0
    la = a.to_univar(var)[-1]
    lb = b.to_univar(var)[-1]
    for _ in range(4):
        binding = {s: _rng.randrange(3, 1000) for s in others}
        if la.eval_partial(binding).is_zero() or lb.eval_partial(binding).is_zero():
            continue
        ia = a.eval_partial(binding)
        ib = b.eval_partial(binding)
        return _gcd_univar_q(ia, ib, var).degree(var) == 0
    return False


def _gcd_univar_q(a: MPoly, b: MPoly, var: str) -> MPoly:
    """Univariate gcd via integer primitive PRS; monic-free (content 1,
    positive leading coefficient)."""
    ia = _int_coeffs(a, var)
    ib = _int_coeffs(b, var)
    g = _int_prs(ia, ib)
    terms: dict = {}
    idx = VARIDX[var]
    for p, c in enumerate(g):
        if c:
            e = [0] * NVARS
            e[idx] = p
            terms[tuple(e)] = Q(c)
    return MPoly(terms)


def _int_coeffs(p: MPoly, var: str) -> list[int]:
    coeffs = p.to_univar(var)
    den = 1
    for c in coeffs:
        if not c.is_const():
            raise ValueError("not univariate")
        q = c.const_value()
        d = int(q.denominator)
        den = den * d // int_gcd(den, d)
    return [int(c.const_value() * den) for c in coeffs]


def _int_primitive(c: list[int]) -> list[int]:
    g = 0
    for x in c:
        g = int_gcd(g, abs(x))
        if g == 1:
            return c
    if g == 0:
        return c
    return [x // g for x in c]


def _int_prs(a: list[int], b: list[int]) -> list[int]:
    a = _int_primitive(_trim(a))
    b = _int_primitive(_trim(b))
    if not a:
        return b or [1]
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(b) == 1:
            return [1]
        r = _int_prem(a, b)
        a, b = b, _int_primitive(_trim(r))
    if a and a[-1] < 0:
        a = [-x for x in a]
    return a


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _int_prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of integer coefficient lists."""
    a = list(a)
    lb = b[-1]
    while len(a) >= len(b):
        if a[-1] == 0:
            a.pop()
            continue
        la = a[-1]
        a = [x * lb for x in a]
        shift = len(a) - len(b)
        for n, c in enumerate(b):
            a[shift + n] -= la * c
        assert a[-1] == 0
        a.pop()
    return _trim(a)


def _prem_mp(a: list[MPoly], b: list[MPoly]) -> list[MPoly]:
    """Pseudo-remainder for univariate views with MPoly coefficients."""
    a = list(a)
    lb = b[-1]
    while len(a) >= len(b):
        if a[-1].is_zero():
            a.pop()
            continue
        la = a[-1]
        a = [x * lb for x in a]
        shift = len(a) - len(b)
        for n, c in enumerate(b):
            a[shift + n] = a[shift + n] - la * c
        assert a[-1].is_zero()
        a.pop()
        while a and a[-1].is_zero():
            a.pop()
    return a


def _gcd_bivar(a: MPoly, b: MPoly, var: str):
    """Gcd of primitive-in-var bivariate polynomials by evaluating the other
    variable, taking univariate gcds, and interpolating; None when the
    images misbehave (caller falls back to the subresultant PRS).

    Monic univariate images are rescaled by gcd(lc_a, lc_b) evaluated at the
    same point, which the true leading coefficient divides, so the rescaled
    image coefficients are polynomial in the second variable and Newton
    interpolation applies.  Images whose degree exceeds the minimum seen are
    unlucky evaluations and are dropped.  Exact trial division certifies the
    candidate."""
    others = (a.vars_used() | b.vars_used()) - {var}
    if len(others) != 1:
        return None
    y = next(iter(others))
    la = a.to_univar(var)[-1]
    lb = b.to_univar(var)[-1]
    lam = mpoly_gcd(la, lb)
    npts = (min(a.degree(y), b.degree(y)) + lam.degree(y) + 1)
    ts: list = []
    images: list = []
    dmin = None
    t = 2
    tries = 6 * npts + 30
    while len(ts) < npts and tries:
        tries -= 1
        t += 1
        binding = {y: t}
        if la.eval_partial(binding).is_zero() \
                or lb.eval_partial(binding).is_zero():
            continue
        g = _gcd_univar_q(a.eval_partial(binding), b.eval_partial(binding),
                          var)
        d = g.degree(var)
        if d == 0:
            return MPoly.const(1)
        if dmin is None or d < dmin:
            dmin, ts, images = d, [], []
        if d == dmin:
            scale = lam.eval_partial(binding).const_value()
            cl = [c.const_value() for c in g.to_univar(var)]
            ts.append(t)
            images.append([c * scale / cl[-1] for c in cl])
    if len(ts) < npts:
        return None
    coeffs = [_newton_interp_q(ts, [img[k] for img in images])
              for k in range(dmin + 1)]
    yidx = VARIDX[y]
    xidx = VARIDX[var]
    terms: dict = {}
    for k, cl in enumerate(coeffs):
        for py, c in enumerate(cl):
            if c:
                e = [0] * NVARS
                e[xidx] = k
                e[yidx] = py
                terms[tuple(e)] = c
    cand = MPoly(terms)
    if cand.is_zero():
        return None
    _, cand = _content_pp(cand, var)
    if cand.divides(a) and cand.divides(b):
        return cand
    return None


def _newton_interp_q(ts: list, vals: list) -> list:
    """Ascending Q coefficient list interpolating vals at ts."""
    n = len(ts)
    dd = list(vals)
    for k in range(1, n):
        for i in range(n - 1, k - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (ts[i] - ts[i - k])
    poly: list = []
    for k in range(n - 1, -1, -1):
        # poly <- poly*(x - ts[k]) + dd[k]
        shifted = [Q(0)] + poly
        scaled = [c * (-ts[k]) for c in poly] + [Q(0)]
        poly = [s + c for s, c in zip(shifted, scaled)]
        poly[0] = poly[0] + dd[k]
    while poly and poly[-1] == 0:
        poly.pop()
    return poly


def _prs_gcd(a: MPoly, b: MPoly, var: str) -> MPoly:
    """Subresultant PRS gcd of primitive (w.r.t. var) polynomials."""
    A = a.to_univar(var)
    B = b.to_univar(var)
    if len(A) < len(B):
        A, B = B, A
    g = MPoly.const(1)
    h = MPoly.const(1)
    while True:
        delta = len(A) - len(B)
        R = _prem_mp(A, B)
        if not R:
            break
        if len(R) == 1:
            return MPoly.const(1)
        divisor = g * h ** delta
        A, B = B, [c.divexact(divisor) for c in R]
        g = A[-1]
        if delta == 1:
            h = g
        elif delta > 1:
            h = (g ** delta).divexact(h ** (delta - 1))
    res = MPoly.from_univar(var, B)
    _, pp = _content_pp(res, var)
    return pp
