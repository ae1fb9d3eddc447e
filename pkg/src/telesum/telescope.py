"""Indefinite and creative telescoping for harmonic summands.

The solver looks for g with g(j+1) - g(j) = f(j) (indefinite) or
c_0(N) f(N,j) + ... + c_d(N) f(N+d,j) = g(j+1) - g(j) (creative).  Every
summand splits into kernel classes: the sign factor and the factorial
factors involving the summation variable.  A shift maps each class to itself
up to the rational ratio rho(j) = K(j+1)/K(j), so with the ansatz

    g = sum over classes K, basis monomials M of x_{K,M}(j) * M * K

the defining identity decouples by strictly descending weight of the
var-dependent sum monomials: shifting a monomial only produces strictly
lighter suffix corrections.  Each step is then a single first-order
parameterized equation rho(j) x(j+1) - x(j) = rhs(j), solved exactly with a
shift-orbit universal denominator and a leading-coefficient degree bound.

Free parameters (the c_i and homogeneous freedoms of g) are carried through
the cascade as explicit coordinates.  A step's solution set is the nullspace
of a small homogeneous linear system in (numerator coefficients, parameters);
the cascade re-expresses its whole state (parameter matrix, partial g,
residuals) in that nullspace's coordinates, so constraints and newly
appearing freedoms propagate uniformly and order independently.

Returned certificates are re-verified twice: the defining identity must
reduce to the canonical zero expression, and it must hold at random integer
points as exact rational equality.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import gcd

from .exact import (LinSolveError, MPoly, Q, RatFunc, mpoly_gcd,
                    solve_linear)
from .hsum import Expr, SingularBinding
from .hsum.limits import LimitError, limit_expr
from .hsum.vectors import weight as vec_weight

DEG_CAPS = (12, 24, 48, 96)
MAX_ORDER = 6

_rng = random.Random(0x7E1E)


class TelescopeError(ValueError):
    pass


# ---------------------------------------------------------------- data types


class HyperTerm:
    """A single hypergeometric term in var: rational prefactor, optional sign
    factor, factorial factors, no harmonic sums.  The defining invariant is
    that the shift quotient f(var+1)/f(var) is a rational function."""

    def __init__(self, expr: Expr, var: str):
        if len(expr.terms) != 1:
            raise ValueError("hypergeometric term must be a single product")
        ((key, _),) = expr.terms.items()
        if key[2]:
            raise ValueError(f"harmonic sums {key[2]} in hypergeometric term")
        self.expr = expr
        self.var = var

    @property
    def ratio(self) -> RatFunc:
        ((key, coeff),) = self.expr.terms.items()
        ((key2, coeff2),) = self.expr.shift_arg(self.var, 1).terms.items()
        assert key2 == key, "shift left the kernel class"
        return coeff2 / coeff

    def anchor(self, j0: int) -> Expr:
        """f(j0) in the remaining symbols."""
        return self.expr.substitute_int(self.var, j0)


@dataclass
class Summand:
    """One hypergeometric carrier times a harmonic-sum expression."""
    term: HyperTerm
    harmonic: Expr

    @property
    def var(self) -> str:
        return self.term.var

    def expr(self) -> Expr:
        return self.term.expr * self.harmonic


@dataclass
class Certificate:
    """Telescoping certificate.

    coeffs is None for indefinite telescoping (g(var+1) - g(var) = f) and a
    list of polynomials in param for creative telescoping
    (sum coeffs[i] * f(param+i) = g(var+1) - g(var))."""
    g: Expr
    var: str
    coeffs: list | None = None
    param: str | None = None

    @property
    def order(self) -> int | None:
        return None if self.coeffs is None else len(self.coeffs) - 1

    def lhs(self, f: Expr) -> Expr:
        if self.coeffs is None:
            return f
        out = Expr.zero()
        for i, c in enumerate(self.coeffs):
            out = out + f.shift_arg(self.param, i) * RatFunc.of(c)
        return out

    def delta_g(self) -> Expr:
        return self.g.shift_arg(self.var, 1) - self.g

    def verify(self, f: Expr, spots: int = 100) -> bool:
        lhs = self.lhs(f)
        delta = self.delta_g()
        if not (delta - lhs).is_zero():
            return False
        syms = sorted(lhs.free_symbols() | self.g.free_symbols())
        checked = trials = 0
        while checked < spots and trials < 4 * spots:
            trials += 1
            binding = {s: _rng.randint(1, 25) for s in syms}
            try:
                if delta.eval_expr(binding) != lhs.eval_expr(binding):
                    return False
            except SingularBinding:
                continue
            checked += 1
        return True


@dataclass
class SumEquation:
    """sum coeffs[i] * T(param+i) = rhs with T(param) the partial sum of the
    summand over var = lower..bound; rhs carries the boundary terms."""
    coeffs: list
    rhs: Expr
    bound: str
    lower: int
    var: str
    param: str | None


# ------------------------------------------------------ kernel decomposition


def _split_key(key: tuple, var: str):
    """(kernel class, monomial) parts of a canonical term key."""
    consts, sign, sums, facs = key
    ksign = tuple(s for s in sign if s == var)
    osign = tuple(s for s in sign if s != var)
    kfacs = tuple((b, e) for b, e in facs if var in b)
    ofacs = tuple((b, e) for b, e in facs if var not in b)
    return (ksign, kfacs), (consts, osign, sums, ofacs)


def _atom(cls: tuple, mono: tuple) -> tuple:
    """(canonical key, expression) for kernel class times monomial."""
    ksign, kfacs = cls
    consts, osign, sums, ofacs = mono
    e = Expr.from_term((), ksign, (), kfacs, RatFunc.const(1)) * \
        Expr.from_term(consts, osign, sums, ofacs, RatFunc.const(1))
    ((key, _),) = e.terms.items()
    return key, e


def _class_ratio(cls: tuple, var: str) -> RatFunc:
    ksign, kfacs = cls
    kernel = Expr.from_term((), ksign, (), kfacs, RatFunc.const(1))
    ((_, coeff2),) = kernel.shift_arg(var, 1).terms.items()
    return coeff2


def _mono_weight(mono: tuple, var: str) -> int:
    _, _, sums, _ = mono
    return sum(vec_weight(vec) * p for (vec, base), p in sums if var in base)


def _closure(monos, var: str) -> list:
    """Downward closure of monomials under the suffix corrections produced by
    shifting var, sorted by strictly descending var-weight.  A factor
    S_v(...var...)^p expands under a shift into products of p suffixes of v
    (the empty suffix drops the factor), so the closure replaces each such
    power by every multiset of suffixes of that size."""
    seen: set = set()
    stack = list(monos)
    while stack:
        m = stack.pop()
        if m in seen:
            continue
        seen.add(m)
        consts, osign, sums, ofacs = m
        var_entries = [(vec, base, p) for (vec, base), p in sums if var in base]
        fixed = {(vec, base): p for (vec, base), p in sums if var not in base}
        choice_sets = []
        for vec, base, p in var_entries:
            suffixes = [vec[t:] for t in range(len(vec) + 1)]
            choice_sets.append(
                list(itertools.combinations_with_replacement(suffixes, p)))
        for combo in itertools.product(*choice_sets):
            d = dict(fixed)
            for (vec, base, p), chosen in zip(var_entries, combo):
                for sfx in chosen:
                    if sfx:
                        d[(sfx, base)] = d.get((sfx, base), 0) + 1
            cand = (consts, osign, tuple(sorted(d.items())), ofacs)
            if cand not in seen:
                stack.append(cand)
    return sorted(seen, key=lambda m: (-_mono_weight(m, var), m))


# --------------------------------------------- shift orbits and denominators


_SCAN = 150


def _linear_factors(p: MPoly, var: str):
    """Factors of p of the form var + (subset of other symbols) + c with
    integer c in [-150, 150]: list of (symbol subset, c, multiplicity) plus
    the var-dependent leftover (None when p splits completely).  Candidates
    are screened by evaluating the other symbols at fixed integers and
    testing the induced root; only an exact division confirms a factor, so
    stray evaluation roots are harmless."""
    out: dict = {}
    work = p
    others = sorted(p.vars_used() - {var})
    point = {s: Q(503 + 257 * k) for k, s in enumerate(others)}
    subsets: list = []
    for size in range(min(len(others), 2) + 1):
        subsets.extend(itertools.combinations(others, size))

    def img_coeffs():
        img = work.eval_partial(point)
        return [c.const_value() for c in img.to_univar(var)]

    coeffs = img_coeffs()
    for sub in subsets:
        if work.degree(var) < 1:
            break
        base = sum((point[s] for s in sub), Q(0))
        for c in range(-_SCAN, _SCAN + 1):
            if len(coeffs) < 2:
                break
            r = -base - c
            acc = Q(0)
            for cf in reversed(coeffs):
                acc = acc * r + cf
            if acc != 0:
                continue
            cand = MPoly.linear_form((var,) + sub, c)
            mult = 0
            while cand.divides(work):
                work = work.divexact(cand)
                mult += 1
            if mult:
                out[(sub, c)] = out.get((sub, c), 0) + mult
                coeffs = img_coeffs()
    factors = [(sub, c, m) for (sub, c), m in sorted(out.items())]
    leftover = work if work.degree(var) > 0 else None
    return factors, leftover


def _universal_denominator(rho: RatFunc, rhs_dens: list, var: str,
                           window: int) -> MPoly:
    """Universal denominator for rho(j) x(j+1) - x(j) = r(j): a pole chain
    of a rational solution ends upward at a root of rho.den or of a
    right-hand-side denominator, and downward one step past a root of
    rho.num or of a right-hand-side denominator, so matching top and bottom
    candidates by their integer shift distance and taking every offset in
    between covers all solution denominators.  Non-linear leftovers are
    covered by a window of shifts instead."""
    tops: dict = {}   # factor family (symbol subset) -> {offset: mult}
    bots: dict = {}
    opaque: list = []

    def factored(poly: MPoly) -> list:
        if poly.is_const():
            return []
        factors, leftover = _linear_factors(poly, var)
        if leftover is not None:
            opaque.append(leftover)
        return factors

    def add(dst: dict, factors: list, delta: int) -> None:
        for sub, c, mult in factors:
            fam = dst.setdefault(sub, {})
            fam[c + delta] = fam.get(c + delta, 0) + mult

    add(tops, factored(rho.den), 0)
    add(bots, factored(rho.num), -1)
    dens: list = []
    for d in rhs_dens:
        if not any(d == e for e in dens):
            dens.append(d)
    for d in dens:
        fd = factored(d)
        add(tops, fd, 0)
        add(bots, fd, 0)   # a right-hand-side pole may stand alone
        add(bots, fd, -1)
    u = MPoly.const(1)
    for sub in sorted(set(tops) & set(bots)):
        P, B = tops[sub], bots[sub]
        for h in sorted({q - p for p in P for q in B if q >= p},
                        reverse=True):
            for p_off in sorted(P):
                m = min(P.get(p_off, 0), B.get(p_off + h, 0))
                if m <= 0:
                    continue
                P[p_off] -= m
                B[p_off + h] -= m
                for i in range(h + 1):
                    u = u * MPoly.linear_form((var,) + sub, p_off + i) ** m
    for blk in opaque:
        for h in range(-window, window + 1):
            u = u * blk.shift(var, h)
    return u


def _varfree_content(p: MPoly, var: str) -> MPoly:
    """Largest factor of p free of var (the content of p as a poly in var)."""
    if p.degree(var) == 0:
        return p
    g = MPoly()
    for c in sorted(p.to_univar(var), key=lambda c: len(c.terms)):
        if not c.is_zero():
            g = mpoly_gcd(g, c)
            if g.is_const():
                break
    return g


# --------------------------------------------------------------- the cascade


class _NoSolution(Exception):
    pass


class _Cascade:
    """All (lam, g) with sum_i lam[i] * parts[i] = g(var+1) - g(var).

    After each step the remaining solution space has dimension mu; lam is an
    (nparts x mu) matrix over the parameter field, gcols[t] the g accumulated
    for coordinate t, and residual[t] = sum_i lam[i][t] parts[i] -
    Delta(gcols[t]), supported on not-yet-processed monomials only."""

    def __init__(self, parts: list, var: str, window: int, cap: int):
        self.var = var
        self.window = window
        self.cap = cap
        self.clipped = False
        self.nparts = len(parts)
        self.mu = len(parts)
        one, zero = RatFunc.const(1), RatFunc.const(0)
        self.lam = [[one if i == t else zero for t in range(self.mu)]
                    for i in range(self.nparts)]
        self.gcols = [Expr.zero() for _ in range(self.mu)]
        self.residual = list(parts)

    def run(self) -> None:
        classes: dict = {}
        for part in self.residual:
            for key in part.terms:
                cls, mono = _split_key(key, self.var)
                classes.setdefault(cls, set()).add(mono)
        for cls in sorted(classes):
            for mono in _closure(classes[cls], self.var):
                self._step(cls, mono)
                if self.mu == 0:
                    raise _NoSolution
        for r in self.residual:
            assert r.is_zero(), f"cascade left a residual: {r}"

    def _step(self, cls: tuple, mono: tuple) -> None:
        var = self.var
        rho = _class_ratio(cls, var)
        key, atom = _atom(cls, mono)
        rhs = [r.terms.get(key, RatFunc.const(0)) for r in self.residual]
        rhs_dens = [r.den for r in rhs if not r.is_zero()]
        u = _universal_denominator(rho, rhs_dens, var, self.window)
        u1 = u.shift(var, 1)
        extra = MPoly.const(1)  # rhs denominator part not already inside u
        for r in rhs:
            if not r.is_zero():
                rem = r.den.divexact(mpoly_gcd(r.den, u))
                extra = extra * rem.divexact(mpoly_gcd(extra, rem))
        # the equation rho*x(j+1) - x(j) = rhs with x = p/u, multiplied by
        # rho.den * u * u1 * extra, becomes p1*p(j+1) - p0*p(j) = cleared
        p1 = rho.num * u * extra
        p0 = rho.den * u1 * extra
        clearer = rho.den * u * u1 * extra
        cleared = []
        for r in rhs:
            if r.is_zero():
                cleared.append(MPoly())
                continue
            if not r.den.divides(clearer):
                raise TelescopeError(f"denominator ansatz misses a pole: {r}")
            cleared.append(r.num * clearer.divexact(r.den))
        degr = max([c.degree(var) for c in cleared] + [-1])
        deg = self._degree_bound(p1, p0, degr, u)
        jvar = MPoly.var(var)
        nrows = max(p1.degree(var) + deg, p0.degree(var) + deg,
                    max([c.degree(var) for c in cleared] + [0])) + 1
        rows: list[dict] = [dict() for _ in range(nrows)]
        for t in range(deg + 1):
            col = p1 * (jvar + MPoly.const(1)) ** t - p0 * jvar ** t
            for pw, cf in enumerate(col.to_univar(var)):
                if not cf.is_zero():
                    rows[pw][t] = cf
        for s, cp in enumerate(cleared):
            for pw, cf in enumerate(cp.to_univar(var)):
                if not cf.is_zero():
                    rows[pw][deg + 1 + s] = -cf
        rows = [r for r in rows if r]
        try:
            sol = solve_linear(rows, deg + 1 + self.mu, [0] * len(rows))
        except LinSolveError as exc:
            raise TelescopeError(f"step solve inconclusive: {exc}") from exc
        self._recoordinate(sol.nullspace, deg, u, atom)

    def _degree_bound(self, p1: MPoly, p0: MPoly, degr: int,
                      u: MPoly) -> int:
        """Largest useful numerator degree: balance the leading terms of
        p1*x(j+1) - p0*x(j) against the right-hand sides; the equal-leading
        case adds the indicial integer root.  The denominator's own degree is
        always a candidate so constant solutions x = u/u stay reachable."""
        var = self.var
        d1, d0 = p1.degree(var), p0.degree(var)
        cands = [degr - max(d1, d0), u.degree(var)]
        if d1 == d0:
            c1 = p1.to_univar(var)
            c0 = p0.to_univar(var)
            if c1[-1] == c0[-1]:
                cands.append(degr - d1 + 1)
                s1 = c1[-2] if len(c1) > 1 else MPoly()
                s0 = c0[-2] if len(c0) > 1 else MPoly()
                diff = s0 - s1
                if not diff.is_zero() and c1[-1].divides(diff):
                    z = diff.divexact(c1[-1])
                    if z.is_const() and z.const_value().denominator == 1:
                        cands.append(int(z.const_value()))
        want = max(max(cands) + 2, 0)
        if want > self.cap:
            self.clipped = True
            return self.cap
        return want

    def _recoordinate(self, null: list, deg: int, u: MPoly,
                      atom: Expr) -> None:
        var = self.var
        gadd, dadd = [], []
        for v in null:
            p = RatFunc.const(0)
            for t in range(deg + 1):
                w = _as_rf(v[t])
                if not w.is_zero():
                    p = p + w * RatFunc.of(MPoly.var(var) ** t)
            x = p / RatFunc.of(u)
            ga = Expr.zero() if x.is_zero() else atom * x
            gadd.append(ga)
            dadd.append(ga.shift_arg(var, 1) - ga)
        weights = [[_as_rf(v[deg + 1 + t]) for t in range(self.mu)]
                   for v in null]
        self.lam = [[_dot(row, w) for w in weights] for row in self.lam]
        self.gcols = [_mix(self.gcols, w) + ga
                      for w, ga in zip(weights, gadd)]
        self.residual = [_mix(self.residual, w) - da
                         for w, da in zip(weights, dadd)]
        self.mu = len(null)
        self._rescale_coords()

    def _rescale_coords(self) -> None:
        """Rescale every mu coordinate so its lambda entries and residual
        coefficients are jointly polynomial and content-free.

        Elimination bases carry minor-ratio factors that are pure gauge (a
        coordinate scaling), yet they snowball through later right-hand
        sides; stripping them keeps coefficient degrees at their intrinsic
        size.  The scale must be free of the summation variable (it has to
        commute with the difference operator), so residual coefficients only
        contribute the var-free content of their numerator and denominator."""
        var = self.var
        for q in range(self.mu):
            lam_entries = [row[q] for row in self.lam
                           if not row[q].is_zero()]
            res_parts = [(_varfree_content(c.num, var),
                          _varfree_content(c.den, var))
                         for c in self.residual[q].terms.values()]
            if not lam_entries and not res_parts:
                continue
            den = MPoly.const(1)
            for d in ([e.den for e in lam_entries]
                      + [b for _a, b in res_parts]):
                den = den * d.divexact(mpoly_gcd(den, d))
            content = MPoly()
            for e in lam_entries:
                content = mpoly_gcd(content, (e * RatFunc.of(den)).num)
                if content.is_const():
                    break
            else:
                for a, b in res_parts:
                    content = mpoly_gcd(content, a * den.divexact(b))
                    if content.is_const():
                        break
            if den.is_const() and content.is_const():
                if den.const_value() == 1 and content.const_value() == 1:
                    continue
            s = RatFunc.of(den) / RatFunc.of(content)
            for row in self.lam:
                row[q] = row[q] * s
            self.gcols[q] = self.gcols[q] * s
            self.residual[q] = self.residual[q] * s


def _as_rf(x) -> RatFunc:
    return x if isinstance(x, RatFunc) else RatFunc.of(x)


def _dot(row: list, weights: list) -> RatFunc:
    acc = RatFunc.const(0)
    for lam_val, w in zip(row, weights):
        if not w.is_zero() and not lam_val.is_zero():
            acc = acc + lam_val * w
    return acc


def _mix(cols: list, weights: list) -> Expr:
    acc = Expr.zero()
    for col, w in zip(cols, weights):
        if not w.is_zero():
            acc = acc + col * w
    return acc


def _run_cascade(parts: list, var: str, window: int):
    """Scan the numerator degree caps; None when every cap fails.  A failed
    run that never clipped a degree bound cannot improve at a higher cap, so
    that None is sound; a clipped failure at the last cap is inconclusive and
    raises rather than misreport nonexistence."""
    clipped_last = False
    for cap in DEG_CAPS:
        cas = _Cascade(parts, var, window, cap)
        try:
            cas.run()
        except _NoSolution:
            clipped_last = cas.clipped
            if not cas.clipped:
                return None
            continue
        return cas
    if clipped_last:
        raise TelescopeError("degree bound exceeds every cap")
    return None


# ------------------------------------------------------------ public solvers


def _coerce_expr(f) -> Expr:
    if isinstance(f, Summand):
        return f.expr()
    if isinstance(f, HyperTerm):
        return f.expr
    return f


def gosper(t: HyperTerm) -> Certificate | None:
    """Hypergeometric antidifference of a pure term, or None."""
    return telescope_extended(t, t.var)


def telescope_extended(f, var: str | None = None,
                       window: int = 2) -> Certificate | None:
    """g with g(var+1) - g(var) = f over the shift-closed monomial basis
    generated by f; None when no such g exists within the degree caps."""
    if var is None:
        if not isinstance(f, (Summand, HyperTerm)):
            raise ValueError("var is required for a bare expression")
        var = f.var
    fe = _coerce_expr(f)
    if fe.is_zero():
        return Certificate(g=Expr.zero(), var=var)
    cas = _run_cascade([fe], var, window)
    if cas is None:
        return None
    # pin the coefficient of f to 1 inside the solution space
    sol = solve_linear([{t: cas.lam[0][t] for t in range(cas.mu)}],
                       cas.mu, [1])
    if sol.particular is None:
        return None
    g = _mix(cas.gcols, [_as_rf(w) for w in sol.particular])
    cert = Certificate(g=g, var=var)
    assert cert.verify(fe), "telescoping certificate failed re-verification"
    return cert


def creative_telescope(f, d: int | None = None, var: str | None = None,
                       param: str = "N") -> Certificate | None:
    """Creative telescoping: c_0(param) f + ... + c_d(param) f(param+d) =
    g(var+1) - g(var) with the c's not all zero.

    Explicit d: solve at that order (None when the c-space has no vector
    with c_d != 0).  d None: scan 1..MAX_ORDER for the minimal order.  The
    c-vector is normalized content-free with positive leading coefficient of
    c_d, picked from the echelon basis of the c-space, hence unique."""
    if var is None:
        if not isinstance(f, (Summand, HyperTerm)):
            raise ValueError("var is required for a bare expression")
        var = f.var
    fe = _coerce_expr(f)
    if d is None:
        for order in range(1, MAX_ORDER + 1):
            cert = creative_telescope(fe, order, var, param)
            if cert is not None:
                return cert
        return None
    if d < 1:
        raise ValueError("creative telescoping needs order >= 1")
    parts = [fe.shift_arg(param, i) for i in range(d + 1)]
    cas = _run_cascade(parts, var, d + 2)
    if cas is None:
        return None
    picked = _canonical_c(cas.lam, cas.mu, d)
    if picked is None:
        return None
    c_vec, mu_star = picked
    g = _mix(cas.gcols, mu_star)
    cert = Certificate(g=g, var=var, coeffs=c_vec, param=param)
    assert cert.verify(fe), "creative certificate failed re-verification"
    return cert


def _canonical_c(lam: list, mu: int, d: int):
    """Canonical nonzero c with c_d != 0 from the space {lam . mu}, plus the
    mu coordinates realizing it.

    The space is spanned by lam's columns; its reduced echelon basis is
    ordering-free, so picking the first echelon vector with nonzero last
    entry and normalizing it to a content-free integer-coefficient polynomial
    vector with positive leading coefficient of c_d fixes a representative
    independent of how the ansatz was enumerated."""
    rows = [[lam[i][t] for i in range(d + 1)] for t in range(mu)]
    basis = _rref(rows)
    pick = next((row for row in basis if not row[d].is_zero()), None)
    if pick is None:
        return None
    den = MPoly.const(1)
    for r in pick:
        if not r.is_zero():
            den = den * r.den.divexact(mpoly_gcd(den, r.den))
    polys = [(r * RatFunc.of(den)).as_poly() for r in pick]
    content = MPoly()
    for p in polys:
        content = mpoly_gcd(content, p)
    if not content.is_const():
        polys = [p.divexact(content) for p in polys]
    qs = [c for p in polys for c in p.terms.values()]
    denom = 1
    for q in qs:
        denom = denom * int(q.denominator) // gcd(denom, int(q.denominator))
    numer = 0
    for q in qs:
        numer = gcd(numer, int(q.numerator) * (denom // int(q.denominator)))
    polys = [p.scale(Q(denom, numer or 1)) for p in polys]
    _, lead = polys[d].lex_lead()
    if lead < 0:
        polys = [p.scale(Q(-1)) for p in polys]
    sol = solve_linear(
        [{t: lam[i][t] for t in range(mu)} for i in range(d + 1)],
        mu, [RatFunc.of(p) for p in polys])
    assert sol.particular is not None, "picked c left the c-space"
    return polys, [_as_rf(w) for w in sol.particular]


def _rref(rows: list) -> list:
    """Reduced row echelon basis of the span of the given RatFunc rows."""
    basis: list = []
    for row in rows:
        row = list(row)
        for brow, bl in basis:
            if not row[bl].is_zero():
                w = row[bl]
                row = [a - w * b for a, b in zip(row, brow)]
        lead = next((i for i, a in enumerate(row) if not a.is_zero()), None)
        if lead is None:
            continue
        inv = RatFunc.const(1) / row[lead]
        basis.append(([a * inv for a in row], lead))
    basis.sort(key=lambda rb: rb[1])
    for i, (row, lead) in enumerate(basis):
        for j in range(len(basis)):
            if j != i and not basis[j][0][lead].is_zero():
                w = basis[j][0][lead]
                basis[j] = ([a - w * b for a, b in zip(basis[j][0], row)],
                            basis[j][1])
    return [row for row, _ in basis]


# ---------------------------------------------------- summation consequences


def sum_certificate(cert: Certificate, f, lower: int,
                    bound: str) -> SumEquation:
    """Equation for the partial sum T(param) = sum_{var=lower..bound} f:
    sum coeffs[i] * T(param+i) = g(bound+1) - g(lower).

    Coefficient denominators of f and g must stay nonzero on the whole range
    (var >= lower, every other symbol >= 1); a violating linear factor is
    reported as an interior pole."""
    fe = _coerce_expr(f)
    var = cert.var
    for src_name, src in (("summand", fe), ("certificate", cert.g)):
        for _key, coeff in src.terms.items():
            factors, _leftover = _linear_factors(coeff.den, var)
            for sub, c, _ in factors:
                if lower + len(sub) + c < 1:
                    raise TelescopeError(
                        f"{src_name} has an interior pole: "
                        f"{'+'.join((var,) + sub)}{c:+d} vanishes on the range")
    rhs = cert.g.substitute_symbol(var, bound, 1) \
        - cert.g.substitute_int(var, lower)
    coeffs = cert.coeffs if cert.coeffs is not None else [MPoly.const(1)]
    return SumEquation(coeffs=coeffs, rhs=rhs, bound=bound, lower=lower,
                       var=var, param=cert.param)


def limit_inhomogeneity(eq: SumEquation, allow_sigma1: bool = False):
    """Recurrence for the infinite sum: the summation bound goes to infinity
    in the boundary terms.  A divergent boundary raises LimitError; with
    allow_sigma1 the formal sigma1 constant may survive in the inhomogeneity
    (for targets that are themselves regularized)."""
    from .recsolve import Recurrence

    rhs_inf = limit_expr(eq.rhs, eq.bound)
    if not allow_sigma1:
        for (consts, _, _, _) in rhs_inf.terms:
            if any(name == "sigma1" for name, _p in consts):
                raise LimitError(
                    "boundary limit keeps a sigma1 term; the sum needs "
                    "explicit regularization before this limit")
    return Recurrence(coeffs=list(eq.coeffs), inhomogeneity=rhs_inf,
                      param=eq.param if eq.param is not None else "N")
