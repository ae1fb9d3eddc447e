"""Infinite-argument limits of harmonic expressions.

limit_vec gives the regularized value of S_v at infinity as a polynomial in
the formal constants: divergent leading-1 heads are pushed into powers of
sigma1 through the quasi-shuffle algebra (S_1 * S_rest rearranged for the
leading term), convergent non-alternating sums reduce to the strict-sum
value table of weight <= 4, depth-1 alternating sums use the classical
eta-function values.

limit_expr sends one symbol to infinity inside a whole expression.  Per term
the decision is the net growth exponent: factorial factors contribute their
exponent balance (a negative balance kills the term outright), the rational
coefficient contributes numerator minus denominator degree, and leftover
symbolic growth (factorial bases mixing other symbols) must cancel exactly
since the other symbols range over all nonnegative integers.  Polynomial
decay dominates the logarithmic growth of any sum factor, so strictly
negative exponents drop the term; exponent zero keeps the leading rational
ratio times the sum limits.  Everything else raises, naming the term.
"""
from __future__ import annotations

from functools import lru_cache

from ..exact import Q, RatFunc
from .constants import ConstPoly
from .expr import Expr
from .vectors import s_to_z, stuffle_s

# strict-sum (Z) values at infinity, non-alternating, weight <= 4; even
# weights expressed through zeta2 powers
_Z_TABLE = {
    (2,): ConstPoly.zeta(2),
    (3,): ConstPoly.zeta(3),
    (4,): ConstPoly.zeta(4),
    (2, 1): ConstPoly.zeta(3),
    (3, 1): ConstPoly.zeta(4) * Q(1, 4),
    (2, 2): ConstPoly.zeta(4) * Q(3, 4),
    (2, 1, 1): ConstPoly.zeta(4),
}


class LimitError(ValueError):
    """The limit does not exist or lies outside the supported tables."""


@lru_cache(maxsize=None)
def limit_vec(vec: tuple) -> ConstPoly:
    """Regularized S_vec(infinity) in Q[zeta..., ln2, sigma1]."""
    if vec[0] == 1:
        # S_1 * S_rest = c * S_vec + other terms, all with fewer leading 1s
        rest = vec[1:]
        if not rest:
            return ConstPoly.symbol("sigma1")
        prod = stuffle_s((1,), rest)
        c_self = 0
        acc = ConstPoly.symbol("sigma1") * limit_vec(rest)
        for c, u in prod:
            if u == vec:
                c_self = c
            else:
                acc = acc - limit_vec(u) * c
        if c_self == 0:
            raise LimitError(f"regularization failed for {vec}")
        return acc * Q(1, c_self)
    if len(vec) == 1:
        m = vec[0]
        if m >= 2:
            return ConstPoly.zeta(m)
        if m == -1:
            return -ConstPoly.symbol("ln2")
        w = -m
        return ConstPoly.zeta(w) * (Q(1, 2 ** (w - 1)) - 1)
    if any(m < 0 for m in vec):
        raise LimitError(f"alternating limit of depth > 1 unsupported: {vec}")
    out = ConstPoly()
    for c, u in s_to_z(vec):
        if u not in _Z_TABLE:
            raise LimitError(f"strict-sum value {u} outside the weight-4 table")
        out = out + _Z_TABLE[u] * c
    return out


def limit_expr(e: Expr, sym: str) -> Expr:
    """Limit of e as sym -> infinity; result is an expression in the
    remaining symbols (sigma1 and friends enter as formal constants)."""
    out = Expr.zero()
    for key, coeff in e.terms.items():
        consts, sign, sums, facs = key
        balance = 0
        growth: dict[str, int] = {}
        for base, ex in facs:
            if sym in base:
                balance += ex
                for s in base:
                    if s != sym:
                        growth[s] = growth.get(s, 0) + ex
        if balance < 0:
            continue  # factorial decay beats polynomial and log growth
        if balance > 0:
            raise LimitError(f"factorial growth in {sym}: term {key}")
        t_const = coeff.num.degree(sym) - coeff.den.degree(sym)
        if any(g > 0 for g in growth.values()):
            raise LimitError(f"unbounded symbolic growth in {sym}: term {key}")
        if t_const < 0:
            continue
        if t_const > 0 or any(g < 0 for g in growth.values()):
            raise LimitError(
                f"term does not decay uniformly as {sym} grows: {key}")
        if sym in sign:
            raise LimitError(f"oscillating sign factor in {sym}: term {key}")
        # exponent exactly zero: leading rational ratio times sum limits
        lead = _leading_ratio(coeff, sym)
        part = Expr.from_term(consts, sign, (), (), lead)
        for (vec, base), p in sums:
            if sym in base:
                # shifts by the other base symbols vanish at infinity
                lv = limit_vec(vec)
                cp = lv
                for _ in range(p - 1):
                    cp = cp * lv
                part = part * Expr.const(cp)
            else:
                part = part * Expr({((), (), (((vec, base), p),), ()): RatFunc.const(1)})
        for base, ex in facs:
            if sym not in base:
                part = part * Expr({((), (), (), ((base, ex),)): RatFunc.const(1)})
        out = out + part
    return out


def _leading_ratio(coeff: RatFunc, sym: str) -> RatFunc:
    num = coeff.num.to_univar(sym)[-1]
    den = coeff.den.to_univar(sym)[-1]
    return RatFunc(num, den)
