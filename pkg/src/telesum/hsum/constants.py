"""Polynomials in the formal constants (zeta values, sigma1, ln2, gamma).

Exact evaluation of a harmonic expression produces an element of
Q[zeta2, zeta3, ...]: a ConstPoly.  The constants stay formal here; numeric
values are attached in numeval.  sigma1 is the regularized divergent limit
of S_1 and never gets a numeric value.  Even zeta weights reduce to powers
of zeta2 (zeta4 = 2/5 zeta2^2, zeta6 = 8/35 zeta2^3), so weight-4 results
read as rational multiples of zeta2^2.
"""
from __future__ import annotations

from ..exact import Q, as_q

SIGMA1 = "sigma1"
LN2 = "ln2"
GAMMA = "gamma"

_EVEN_ZETA_IN_ZETA2 = {2: (Q(1), 1), 4: (Q(2, 5), 2), 6: (Q(8, 35), 3)}

Mono = tuple  # sorted tuple of (name, power)

_ONE: Mono = ()


def mono_mul(a: Mono, b: Mono) -> Mono:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for name, p in b:
        d[name] = d.get(name, 0) + p
    return tuple(sorted((n, p) for n, p in d.items() if p))


class ConstPoly:
    """{monomial: rational coefficient}; empty dict is zero."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = terms or {}

    @staticmethod
    def rational(c) -> "ConstPoly":
        c = as_q(c)
        return ConstPoly({_ONE: c} if c != 0 else {})

    @staticmethod
    def zeta(k: int, power: int = 1) -> "ConstPoly":
        """zeta_k^power with the even-weight rewrite applied."""
        if k < 2:
            raise ValueError(f"zeta_{k} is not a formal constant here")
        if k % 2 == 0:
            c, e = _EVEN_ZETA_IN_ZETA2[k]
            return ConstPoly({(("zeta2", e * power),): c ** power})
        return ConstPoly({((f"zeta{k}", power),): Q(1)})

    @staticmethod
    def symbol(name: str, power: int = 1) -> "ConstPoly":
        return ConstPoly({((name, power),): Q(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _ONE in self.terms)

    def rational_value(self) -> Q:
        if not self.terms:
            return Q(0)
        if not self.is_rational():
            raise ValueError(f"not rational: {self}")
        return self.terms[_ONE]

    def coeff_of(self, mono: Mono) -> Q:
        return self.terms.get(mono, Q(0))

    def uses(self, name: str) -> bool:
        return any(n == name for m in self.terms for n, _ in m)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConstPoly):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None  # type: ignore

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __neg__(self) -> "ConstPoly":
        return ConstPoly({m: -c for m, c in self.terms.items()})

    def __add__(self, other) -> "ConstPoly":
        if not isinstance(other, ConstPoly):
            other = ConstPoly.rational(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, Q(0)) + c
            if s == 0:
                out.pop(m, None)
            else:
                out[m] = s
        return ConstPoly(out)

    __radd__ = __add__

    def __sub__(self, other) -> "ConstPoly":
        if not isinstance(other, ConstPoly):
            other = ConstPoly.rational(other)
        return self + (-other)

    def __rsub__(self, other) -> "ConstPoly":
        return ConstPoly.rational(other) + (-self)

    def __mul__(self, other) -> "ConstPoly":
        if not isinstance(other, ConstPoly):
            c = as_q(other)
            if c == 0:
                return ConstPoly()
            return ConstPoly({m: v * c for m, v in self.terms.items()})
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = out.get(m, Q(0)) + c1 * c2
                if s == 0:
                    out.pop(m, None)
                else:
                    out[m] = s
        return ConstPoly(out)

    __rmul__ = __mul__

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            c = self.terms[m]
            mono = "*".join(n + (f"^{p}" if p > 1 else "") for n, p in m)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self) -> str:
        return f"ConstPoly({self!s})"
