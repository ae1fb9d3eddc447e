"""Reduced rational functions over the fixed variable universe.

Invariants: ``num`` and ``den`` share no factor, ``den`` is never zero, and
the denominator's lex-leading coefficient is 1, so equal functions compare
equal structurally.  Arithmetic stays in reduced form; this keeps the
elimination steps in the linear solver from accumulating spurious factors.
"""
from __future__ import annotations

from ._scalars import Q, as_q
from .mpoly import MPoly, mpoly_gcd


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num: MPoly, den: MPoly | None = None, _reduced: bool = False):
        if den is None:
            den = MPoly.const(1)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            if num.is_zero():
                den = MPoly.const(1)
            else:
                g = mpoly_gcd(num, den)
                if not (g.is_const() and g.const_value() == 1):
                    num = num.divexact(g)
                    den = den.divexact(g)
            _, lc = den.lex_lead()
            if lc != 1:
                inv = Q(1) / lc
                num = num.scale(inv)
                den = den.scale(inv)
        self.num = num
        self.den = den

    # -- constructors ---------------------------------------------------

    @staticmethod
    def const(c) -> "RatFunc":
        return RatFunc(MPoly.const(c), None, _reduced=True)

    @staticmethod
    def var(name: str) -> "RatFunc":
        return RatFunc(MPoly.var(name), None, _reduced=True)

    @staticmethod
    def of(x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, MPoly):
            return RatFunc(x)
        return RatFunc.const(as_q(x))

    # -- queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_const(self) -> bool:
        return self.num.is_const() and self.den.is_const()

    def const_value(self) -> Q:
        if not self.is_const():
            raise ValueError(f"not a constant: {self}")
        return self.num.const_value() / self.den.const_value()

    def is_poly(self) -> bool:
        return self.den.is_const()

    def as_poly(self) -> MPoly:
        if not self.is_poly():
            raise ValueError(f"not a polynomial: {self}")
        return self.num.scale(Q(1) / self.den.const_value())

    def vars_used(self) -> frozenset:
        return self.num.vars_used() | self.den.vars_used()

    def degree_drop(self, var: str) -> int:
        """deg(den) - deg(num) in var: by how many powers the function decays
        as the variable grows."""
        return self.den.degree(var) - self.num.degree(var)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFunc):
            if isinstance(other, (int, MPoly)) or type(other).__name__ in ("mpq", "Fraction"):
                other = RatFunc.of(other)
            else:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    __hash__ = None  # type: ignore

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    # -- field operations ---------------------------------------------------

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, _reduced=True)

    def __add__(self, other) -> "RatFunc":
        other = RatFunc.of(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        g = mpoly_gcd(self.den, other.den)
        if g.is_const():
            return RatFunc(self.num * other.den + other.num * self.den,
                           self.den * other.den)
        da = self.den.divexact(g)
        db = other.den.divexact(g)
        return RatFunc(self.num * db + other.num * da, da * other.den)

    __radd__ = __add__

    def __sub__(self, other) -> "RatFunc":
        return self + (-RatFunc.of(other))

    def __rsub__(self, other) -> "RatFunc":
        return RatFunc.of(other) + (-self)

    def __mul__(self, other) -> "RatFunc":
        other = RatFunc.of(other)
        if self.is_zero() or other.is_zero():
            return RatFunc.const(0)
        g1 = mpoly_gcd(self.num, other.den)
        g2 = mpoly_gcd(other.num, self.den)
        n1 = self.num if g1.is_const() and g1.const_value() == 1 else self.num.divexact(g1)
        d2 = other.den if g1.is_const() and g1.const_value() == 1 else other.den.divexact(g1)
        n2 = other.num if g2.is_const() and g2.const_value() == 1 else other.num.divexact(g2)
        d1 = self.den if g2.is_const() and g2.const_value() == 1 else self.den.divexact(g2)
        return RatFunc(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFunc":
        other = RatFunc.of(other)
        if other.is_zero():
            raise ZeroDivisionError("rational function division by zero")
        return self * RatFunc(other.den, other.num)

    def __rtruediv__(self, other) -> "RatFunc":
        return RatFunc.of(other) / self

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return (RatFunc.const(1) / self) ** (-n)
        return RatFunc(self.num ** n, self.den ** n, _reduced=(n <= 1))

    # -- substitution ----------------------------------------------------

    def subst(self, var: str, value: "RatFunc | MPoly") -> "RatFunc":
        value = RatFunc.of(value)
        d = max(self.num.degree(var), self.den.degree(var))
        if d <= 0:
            return self
        if value.is_poly():
            return RatFunc(self.num.subst(var, value.as_poly()),
                           self.den.subst(var, value.as_poly()))
        num = _subst_homog(self.num, var, value, d)
        den = _subst_homog(self.den, var, value, d)
        return RatFunc(num, den)

    def shift(self, var: str, delta: int) -> "RatFunc":
        if delta == 0:
            return self
        return RatFunc(self.num.shift(var, delta), self.den.shift(var, delta),
                       _reduced=True)

    def eval_partial(self, bindings: dict) -> "RatFunc":
        return RatFunc(self.num.eval_partial(bindings),
                       self.den.eval_partial(bindings))

    def eval_q(self, bindings: dict) -> Q:
        d = self.den.eval_q(bindings)
        if d == 0:
            raise ZeroDivisionError(f"pole of {self} at {bindings}")
        return self.num.eval_q(bindings) / d

    def __str__(self) -> str:
        if self.is_poly():
            return str(self.as_poly())
        ns = str(self.num)
        ds = str(self.den)
        if len(self.num.terms) > 1:
            ns = f"({ns})"
        if len(self.den.terms) > 1:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self) -> str:
        return f"RatFunc({self!s})"


def _subst_homog(p: MPoly, var: str, value: RatFunc, d: int) -> MPoly:
    """p with var := value, multiplied through by value.den**d."""
    coeffs = p.to_univar(var)
    out = MPoly()
    for pw, c in enumerate(coeffs):
        out = out + c * value.num ** pw * value.den ** (d - pw)
    return out
