"""Canonical algebra of harmonic-sum expressions.

An expression is a merged sum of terms
    coefficient * const-monomial * (-1)^(sign form) * prod S_v(arg) * prod (arg)!^e
with the coefficient a rational function of the free symbols.  Canonical form
pushes every sum and factorial argument to offset zero over its base symbols
(S_1(N+1) is stored as S_1(N) + 1/(N+1)), folds integer arguments to
rationals, and reduces sign exponents mod 2, so structural equality of the
term dictionaries is semantic equality.

Z-family (strict) sums are converted to the S basis on construction; the
printer re-emits only S forms.  Products are NOT linearized implicitly:
linearize() rewrites same-argument products through the quasi-shuffle
algebra, mixed-argument products stay as monomials.
"""
from __future__ import annotations

import math
from functools import lru_cache

from ..exact import MPoly, Q, RatFunc, VARIDX, as_q
from .constants import ConstPoly, mono_mul
from .vectors import as_vec, eval_s, stuffle_s, z_to_s

OFFSET_CAP = 64
BASE_SIZE_CAP = 3

# term key = (consts, sign, sums, facs):
#   consts: tuple[(name, power)] sorted     formal-constant monomial
#   sign:   tuple of symbols                (-1)^(sum of these symbols)
#   sums:   tuple[((vec, base), power)]     base = symbol tuple, offset 0
#   facs:   tuple[(base, exp)]              factorials of base forms, offset 0
_KEY1 = ((), (), (), ())


class SingularBinding(ValueError):
    """A coefficient has a pole at the requested bindings."""


def _base(syms) -> tuple:
    syms = tuple(syms)
    t = tuple(sorted(set(syms), key=VARIDX.__getitem__))
    if len(t) != len(syms):
        raise ValueError(f"repeated symbol in argument base {syms}")
    if not 0 < len(t) <= BASE_SIZE_CAP:
        raise ValueError(f"argument base {syms} outside the supported forms")
    return t


def _check_offset(delta: int) -> int:
    if abs(delta) > OFFSET_CAP:
        raise ValueError(f"argument offset {delta} exceeds cap {OFFSET_CAP}")
    return delta


class Expr:
    """terms: {key: RatFunc coefficient}, zero coefficients never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = terms or {}

    # -- constructors --------------------------------------------------

    @staticmethod
    def zero() -> "Expr":
        return Expr()

    @staticmethod
    def one() -> "Expr":
        return Expr({_KEY1: RatFunc.const(1)})

    @staticmethod
    def coeff(c) -> "Expr":
        r = RatFunc.of(c)
        return Expr({_KEY1: r} if not r.is_zero() else {})

    @staticmethod
    def harmonic(vec, syms, offset: int = 0, family: str = "S") -> "Expr":
        """S_vec(sum(syms) + offset); family 'Z' converts to the S basis."""
        vec = as_vec(vec)
        _check_offset(offset)
        if family == "Z":
            out = Expr.zero()
            for c, u in z_to_s(vec):
                out = out + Expr.harmonic(u, syms, offset) * c
            return out
        if family != "S":
            raise ValueError(f"unknown sum family {family!r}")
        base = _base(syms) if syms else ()
        if not base:
            if offset < 0:
                raise ValueError(f"harmonic sum at negative argument {offset}")
            return Expr.coeff(eval_s(vec, offset))
        return _sum_offset0(vec, base, offset)

    @staticmethod
    def sign(syms, offset: int = 0) -> "Expr":
        """(-1) ** (sum(syms) + offset)."""
        syms = list(syms)
        par = tuple(s for s in sorted(set(syms), key=VARIDX.__getitem__)
                    if syms.count(s) % 2)
        c = RatFunc.const(-1 if offset % 2 else 1)
        return Expr({((), par, (), ()): c})

    @staticmethod
    def factorial(syms, offset: int = 0, exponent: int = 1) -> "Expr":
        """(sum(syms) + offset)! ** exponent."""
        _check_offset(offset)
        base = _base(syms) if syms else ()
        if not base:
            if offset < 0:
                raise ValueError(f"factorial at negative argument {offset}")
            return Expr.coeff(Q(math.factorial(offset)) ** exponent)
        return _fac_power(base, offset, exponent)

    @staticmethod
    def const(name_or_poly, power: int = 1) -> "Expr":
        if isinstance(name_or_poly, ConstPoly):
            out: dict = {}
            for mono, q in name_or_poly.terms.items():
                out[(mono, (), (), ())] = RatFunc.const(q)
            return Expr(out)
        if name_or_poly.startswith("zeta"):
            return Expr.const(ConstPoly.zeta(int(name_or_poly[4:]), power))
        mono = ((name_or_poly, power),)
        return Expr({(mono, (), (), ()): RatFunc.const(1)})

    @staticmethod
    def from_term(consts, sign, sums, facs, coeff: RatFunc) -> "Expr":
        if coeff.is_zero():
            return Expr()
        return Expr({(consts, sign, sums, facs): coeff})

    # -- ring structure --------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Expr):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None  # type: ignore

    def __neg__(self) -> "Expr":
        return Expr({k: -c for k, c in self.terms.items()})

    def __add__(self, other) -> "Expr":
        if not isinstance(other, Expr):
            other = Expr.coeff(other)
        if len(self.terms) < len(other.terms):
            self, other = other, self
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            if s is None:
                out[k] = c
            else:
                s = s + c
                if s.is_zero():
                    del out[k]
                else:
                    out[k] = s
        return Expr(out)

    __radd__ = __add__

    def __sub__(self, other) -> "Expr":
        if not isinstance(other, Expr):
            other = Expr.coeff(other)
        return self + (-other)

    def __rsub__(self, other) -> "Expr":
        return Expr.coeff(other) + (-self)

    def __mul__(self, other) -> "Expr":
        if not isinstance(other, Expr):
            r = RatFunc.of(other)
            if r.is_zero():
                return Expr()
            return Expr({k: c * r for k, c in self.terms.items()})
        out: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = _key_mul(k1, k2)
                c = c1 * c2
                s = out.get(k)
                if s is None:
                    out[k] = c
                else:
                    s = s + c
                    if s.is_zero():
                        del out[k]
                    else:
                        out[k] = s
        return Expr(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Expr":
        if n < 0:
            raise ValueError("negative power of an expression")
        out = Expr.one()
        for _ in range(n):
            out = out * self
        return out

    # -- rewriting ----------------------------------------------------------

    def linearize(self) -> "Expr":
        """Quasi-shuffle every same-argument product of sums down to single
        nested sums; mixed-argument monomials are preserved."""
        out = Expr.zero()
        for (consts, sign, sums, facs), coeff in self.terms.items():
            groups: dict[tuple, list] = {}
            for (vec, base), p in sums:
                groups.setdefault(base, []).extend([vec] * p)
            part = Expr.from_term(consts, sign, (), facs, coeff)
            for base, vecs in sorted(groups.items()):
                combo = ((1, vecs[0]),)
                for u in vecs[1:]:
                    nxt: dict = {}
                    for c, w in combo:
                        for c2, w2 in stuffle_s(w, u):
                            nxt[w2] = nxt.get(w2, 0) + c * c2
                    combo = tuple((c, w) for w, c in nxt.items() if c)
                acc = Expr.zero()
                for c, w in combo:
                    acc = acc + Expr({((), (), (((w, base), 1),), ()): RatFunc.const(c)})
                part = part * acc
            out = out + part
        return out

    def shift_arg(self, sym: str, delta: int) -> "Expr":
        """Substitute sym -> sym + delta everywhere and re-canonicalize."""
        _check_offset(delta)
        if delta == 0:
            return self
        out = Expr.zero()
        for (consts, sign, sums, facs), coeff in self.terms.items():
            c = coeff.shift(sym, delta)
            if sym in sign and delta % 2:
                c = -c
            part = Expr.from_term(consts, sign, (), (), c)
            for (vec, base), p in sums:
                if sym in base:
                    part = part * _sum_offset0(vec, base, delta) ** p
                else:
                    part = part * Expr({((), (), (((vec, base), p),), ()): RatFunc.const(1)})
            for base, e in facs:
                if sym in base:
                    part = part * _fac_power(base, delta, e)
                else:
                    part = part * Expr({((), (), (), ((base, e),)): RatFunc.const(1)})
            out = out + part
        return out

    def substitute_symbol(self, sym: str, new: str, offset: int = 0) -> "Expr":
        """Substitute sym -> new + offset; new must not already occur."""
        if new in self.free_symbols():
            raise ValueError(f"target symbol {new} already occurs")
        _check_offset(offset)
        target = MPoly.var(new) + MPoly.const(offset)
        out = Expr.zero()
        for (consts, sign, sums, facs), coeff in self.terms.items():
            c = RatFunc(coeff.num.subst(sym, target), coeff.den.subst(sym, target))
            if sym in sign:
                sign = tuple(sorted((set(sign) - {sym}) | {new},
                                    key=VARIDX.__getitem__))
                if offset % 2:
                    c = -c
            part = Expr.from_term(consts, sign, (), (), c)
            for (vec, base), p in sums:
                if sym in base:
                    nb = _base([new if s == sym else s for s in base])
                    part = part * _sum_offset0(vec, nb, offset) ** p
                else:
                    part = part * Expr({((), (), (((vec, base), p),), ()): RatFunc.const(1)})
            for base, e in facs:
                if sym in base:
                    nb = _base([new if s == sym else s for s in base])
                    part = part * _fac_power(nb, offset, e)
                else:
                    part = part * Expr({((), (), (), ((base, e),)): RatFunc.const(1)})
            out = out + part
        return out

    def substitute_int(self, sym: str, value: int) -> "Expr":
        """Bind one symbol to a nonnegative integer."""
        if value < 0:
            raise ValueError("bindings must be nonnegative")
        out = Expr.zero()
        for (consts, sign, sums, facs), coeff in self.terms.items():
            try:
                c = coeff.eval_partial({sym: value})
            except ZeroDivisionError:
                raise SingularBinding(
                    f"coefficient {coeff} of term {(consts, sign, sums, facs)} "
                    f"has a pole at {sym}={value}") from None
            if sym in sign:
                sign = tuple(s for s in sign if s != sym)
                if value % 2:
                    c = -c
            part = Expr.from_term(consts, sign, (), (), c)
            for (vec, base), p in sums:
                if sym in base:
                    rest = tuple(s for s in base if s != sym)
                    sub = (_sum_offset0(vec, rest, value) if rest
                           else Expr.coeff(eval_s(vec, value)))
                    part = part * sub ** p
                else:
                    part = part * Expr({((), (), (((vec, base), p),), ()): RatFunc.const(1)})
            for base, e in facs:
                if sym in base:
                    rest = tuple(s for s in base if s != sym)
                    sub = (_fac_power(rest, value, e) if rest
                           else Expr.coeff(Q(math.factorial(value)) ** e))
                    part = part * sub
                else:
                    part = part * Expr({((), (), (), ((base, e),)): RatFunc.const(1)})
            out = out + part
        return out

    # -- evaluation -----------------------------------------------------------

    def eval_expr(self, bindings: dict) -> ConstPoly:
        """Exact value in Q[formal constants] at nonnegative integer bindings."""
        for s, v in bindings.items():
            if v < 0:
                raise ValueError(f"binding {s}={v} is negative")
        out = ConstPoly()
        for (consts, sign, sums, facs), coeff in self.terms.items():
            try:
                q = coeff.eval_q(bindings)
            except ZeroDivisionError:
                raise SingularBinding(
                    f"coefficient {coeff} of term with sums {sums} has a pole "
                    f"at {bindings}") from None
            if sum(bindings[s] for s in sign) % 2:
                q = -q
            for (vec, base), p in sums:
                n = sum(bindings[s] for s in base)
                q = q * eval_s(vec, n) ** p
            for base, e in facs:
                n = sum(bindings[s] for s in base)
                q = q * Q(math.factorial(n)) ** e
            if q != 0:
                out = out + ConstPoly({consts: q})
        return out

    def free_symbols(self) -> frozenset:
        syms = set()
        for (consts, sign, sums, facs), coeff in self.terms.items():
            syms |= coeff.vars_used()
            syms.update(sign)
            for (_, base), _ in sums:
                syms.update(base)
            for base, _ in facs:
                syms.update(base)
        return frozenset(syms)

    def map_coeff(self, fn) -> "Expr":
        out = {}
        for k, c in self.terms.items():
            c2 = fn(c)
            if not c2.is_zero():
                out[k] = c2
        return Expr(out)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms, key=repr):
            consts, sign, sums, facs = key
            bits = [f"({self.terms[key]})"]
            bits += [n + (f"^{p}" if p > 1 else "") for n, p in consts]
            if sign:
                bits.append("(-1)^(" + "+".join(sign) + ")")
            for (vec, base), p in sums:
                s = f"S({','.join(map(str, vec))};{'+'.join(base)})"
                bits.append(s + (f"^{p}" if p > 1 else ""))
            for base, e in facs:
                bits.append(f"fac({'+'.join(base)})" + (f"^{e}" if e != 1 else ""))
            parts.append("*".join(bits))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Expr({self!s})"


def _key_mul(k1: tuple, k2: tuple) -> tuple:
    c1, g1, s1, f1 = k1
    c2, g2, s2, f2 = k2
    consts = mono_mul(c1, c2)
    sign = tuple(sorted(set(g1) ^ set(g2), key=VARIDX.__getitem__))
    if not s2:
        sums = s1
    elif not s1:
        sums = s2
    else:
        d = dict(s1)
        for entry, p in s2:
            d[entry] = d.get(entry, 0) + p
        sums = tuple(sorted(d.items()))
    if not f2:
        facs = f1
    elif not f1:
        facs = f2
    else:
        d = dict(f1)
        for base, e in f2:
            v = d.get(base, 0) + e
            if v:
                d[base] = v
            else:
                del d[base]
        facs = tuple(sorted(d.items()))
    return (consts, sign, sums, facs)


def _entry_coeff(m: int, base: tuple, d: int) -> Expr:
    """sign(m)^(arg) / arg^|m| at arg = base sum + d."""
    arg = MPoly.linear_form(base, d)
    c = RatFunc(MPoly.const(1), arg ** abs(m))
    if m < 0:
        if d % 2:
            c = -c
        return Expr({((), base, (), ()): c})
    return Expr({_KEY1: c})


@lru_cache(maxsize=None)
def _sum_offset0(vec: tuple, base: tuple, delta: int) -> Expr:
    """S_vec(base sum + delta) rewritten over offset-0 atoms."""
    if not base:
        if delta < 0:
            raise ValueError(f"harmonic sum at negative argument {delta}")
        return Expr.coeff(eval_s(vec, delta))
    if delta == 0:
        return Expr({((), (), (((vec, base), 1),), ()): RatFunc.const(1)})
    tail_vec = vec[1:]
    if delta > 0:
        head = _sum_offset0(vec, base, delta - 1)
        tail = _sum_offset0(tail_vec, base, delta) if tail_vec else Expr.one()
        return head + _entry_coeff(vec[0], base, delta) * tail
    head = _sum_offset0(vec, base, delta + 1)
    tail = _sum_offset0(tail_vec, base, delta + 1) if tail_vec else Expr.one()
    return head - _entry_coeff(vec[0], base, delta + 1) * tail


def _fac_power(base: tuple, delta: int, e: int) -> Expr:
    """(base sum + delta)!^e as cofactor * (base sum)!^e."""
    if e == 0:
        return Expr.one()
    arg = MPoly.linear_form(base, 0)
    cof = RatFunc.const(1)
    if delta > 0:
        acc = MPoly.const(1)
        for l in range(1, delta + 1):
            acc = acc * (arg + MPoly.const(l))
        cof = RatFunc.of(acc)
    elif delta < 0:
        acc = MPoly.const(1)
        for l in range(0, -delta):
            acc = acc * (arg - MPoly.const(l))
        cof = RatFunc(MPoly.const(1), acc)
    return Expr({((), (), (), ((base, e),)): cof ** e})
