"""Linear recurrences with polynomial coefficients: exact verification
against sequence values, guessing relations from exact data, and solving by
ansatz over harmonic-sum expressions with hypergeometric kernels."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .exact import (MPoly, Q, RatFunc, mpoly_gcd, q_gcd, solve_linear,
                    solve_linear_multi)
from .hsum import ConstPoly, Expr, all_vectors, weight
from .telescope import _linear_factors


class RecSolveError(ValueError):
    """Bad input to a recurrence operation: insufficient values, singular
    evaluation points, or inconsistent initial data."""


class AnsatzError(RecSolveError):
    """The configured ansatz space cannot supply the requested solution."""


def _as_mpoly(c) -> MPoly:
    if isinstance(c, MPoly):
        return c
    if isinstance(c, RatFunc):
        return c.as_poly()
    return MPoly.const(c)


def _as_const(v) -> ConstPoly:
    return v if isinstance(v, ConstPoly) else ConstPoly.rational(v)


def _values_fn(values):
    """Normalize a value table (mapping or callable) to int -> ConstPoly."""
    if callable(values) and not hasattr(values, "__getitem__"):
        return lambda n: _as_const(values(n))

    def get(n: int) -> ConstPoly:
        try:
            return _as_const(values[n])
        except (KeyError, IndexError):
            raise RecSolveError(f"insufficient values: no entry for N={n}")
    return get


def _int_roots(p: MPoly, var: str) -> list:
    factors, _leftover = _linear_factors(p, var)
    return [-c for sub, c, _m in factors if not sub]


@dataclass
class Recurrence:
    """sum coeffs[i](param) * T(param+i) = inhomogeneity(param)."""
    coeffs: list
    inhomogeneity: Expr = None
    param: str = "N"

    def __post_init__(self):
        self.coeffs = [_as_mpoly(c) for c in self.coeffs]
        if self.inhomogeneity is None:
            self.inhomogeneity = Expr.zero()
        if self.coeffs[-1].is_zero():
            raise RecSolveError("leading coefficient must be nonzero")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def valid_from(self) -> int:
        """Smallest N clear of leading-coefficient roots and rhs poles."""
        bad = _int_roots(self.coeffs[-1], self.param)
        for coeff in self.inhomogeneity.terms.values():
            bad.extend(_int_roots(coeff.den, self.param))
        return max(0, max(bad, default=-1) + 1)

    def residual(self, values, n: int) -> ConstPoly:
        """lhs - rhs at param = n; values maps integers to exact values."""
        get = _values_fn(values)
        acc = ConstPoly.rational(0)
        for i, c in enumerate(self.coeffs):
            acc = acc + get(n + i) * c.eval_q({self.param: Q(n)})
        return acc - self.inhomogeneity.eval_expr({self.param: n})


@dataclass
class VerifyReport:
    passed: bool
    start: int
    count: int
    first_fail: int | None = None
    residual: ConstPoly | None = None

    def __bool__(self) -> bool:
        return self.passed

    def __str__(self) -> str:
        if self.passed:
            return f"pass (N={self.start}..{self.start + self.count - 1})"
        return f"FAIL at N={self.first_fail}: residual {self.residual}"


def verify_recurrence(rec: Recurrence, values, start: int | None = None,
                      count: int = 40) -> VerifyReport:
    """Exact substitution check over count consecutive points."""
    if start is None:
        start = rec.valid_from
    for n in range(start, start + count):
        r = rec.residual(values, n)
        if not r.is_zero():
            return VerifyReport(False, start, count, n, r)
    return VerifyReport(True, start, count)


# ------------------------------------------------------------------ guessing


def guess_recurrence(values, max_order: int = 6, max_degree: int = 8, *,
                     start: int = 0, rhs_shapes=None, holdout: int = 10,
                     param: str = "N"):
    """Minimal (order, degree) relation sum c_i(N) F(N+i) = rhs fitting the
    exact values F(start), F(start+1), ...; rhs is a combination of the given
    shape expressions with polynomial coefficients (homogeneous when no
    shapes are given).  The last holdout equations are excluded from the fit
    and must be satisfied exactly.  Returns None when nothing fits."""
    vals = [_as_const(v) for v in values]
    shapes = list(rhs_shapes) if rhs_shapes else []
    monos = set()
    for v in vals:
        monos.update(v.terms)
    shape_vals: list[list[ConstPoly]] = []
    for s in shapes:
        col = [s.eval_expr({param: start + t}) for t in range(len(vals))]
        shape_vals.append(col)
        for v in col:
            monos.update(v.terms)
    monos = sorted(monos) or [()]
    attempted = False
    for order in range(1, max_order + 1):
        neq = len(vals) - order
        for deg in range(0, max_degree + 1):
            width = deg + 1
            ncoef = (order + 1) * width
            ncols = ncoef + len(shapes) * width
            nfit = neq - holdout
            if nfit * len(monos) < ncols:
                continue
            attempted = True
            rows = []
            for t in range(nfit):
                n = Q(start + t)
                pows = [n ** k for k in range(width)]
                for mono in monos:
                    row = {}
                    for i in range(order + 1):
                        cv = vals[t + i].coeff_of(mono)
                        if cv:
                            for k in range(width):
                                row[i * width + k] = cv * pows[k]
                    for s in range(len(shapes)):
                        cv = shape_vals[s][t].coeff_of(mono)
                        if cv:
                            for k in range(width):
                                row[ncoef + s * width + k] = -cv * pows[k]
                    if row:
                        rows.append(row)
            sol = solve_linear(rows, ncols, [0] * len(rows))
            for v in sol.nullspace:
                rec = _assemble_guess(v, order, deg, shapes, param)
                if rec is None:
                    continue
                if _guess_holds(rec, vals, shape_vals, start, order):
                    return rec
    if not attempted:
        raise RecSolveError(
            "insufficient values: no (order, degree) candidate leaves "
            f"{holdout} equations held out")
    return None


def _assemble_guess(v, order: int, deg: int, shapes, param: str):
    width = deg + 1
    x = MPoly.var(param)
    coeffs = []
    for i in range(order + 1):
        p = MPoly()
        for k in range(width):
            c = v[i * width + k]
            if c:
                p = p + x ** k * MPoly.const(c)
        coeffs.append(p)
    if coeffs[-1].is_zero():
        return None
    ncoef = (order + 1) * width
    rhs = Expr.zero()
    rhs_polys = []
    for s, shape in enumerate(shapes):
        p = MPoly()
        for k in range(width):
            c = v[ncoef + s * width + k]
            if c:
                p = p + x ** k * MPoly.const(c)
        rhs_polys.append(p)
    # joint content normalization with a lex-positive leading coefficient
    content = Q(0)
    for p in coeffs + rhs_polys:
        for c in p.terms.values():
            content = q_gcd(content, c)
    if content == 0:
        return None
    if coeffs[-1].lex_lead()[1] < 0:
        content = -content
    coeffs = [p * MPoly.const(1 / content) for p in coeffs]
    for s, shape in enumerate(shapes):
        rhs = rhs + shape * RatFunc.of(rhs_polys[s] * MPoly.const(1 / content))
    return Recurrence(coeffs=coeffs, inhomogeneity=rhs, param=param)


def _guess_holds(rec: Recurrence, vals, shape_vals, start: int,
                 order: int) -> bool:
    """Exact check of the candidate on every available equation."""
    for t in range(len(vals) - order):
        n = Q(start + t)
        acc = ConstPoly.rational(0)
        for i, c in enumerate(rec.coeffs):
            acc = acc + vals[t + i] * c.eval_q({rec.param: n})
        rhs = rec.inhomogeneity.eval_expr({rec.param: start + t})
        if not (acc - rhs).is_zero():
            return False
    return True


# ------------------------------------------------------------ ansatz solving


@dataclass(frozen=True)
class AnsatzConfig:
    """Search space for solve_recurrence: monomials in S-sums of total
    weight <= weight and depth <= depth, both plain and (-1)^N-twisted,
    rational-function coefficients, and factorial kernels (N!)^e with e in
    kernel_exponents (None = derived from the coefficient degrees)."""
    weight: int = 4
    depth: int = 2
    kernel_exponents: tuple | None = None
    degree_cap: int = 60
    extra_vectors: tuple = ()


@dataclass
class SolutionSpace:
    recurrence: Recurrence
    homogeneous: list
    particular: Expr
    constants: list | None = None
    clipped: bool = False

    @property
    def dimension(self) -> int:
        return len(self.homogeneous)


def _kernel_exponents(rec: Recurrence, cfg: AnsatzConfig) -> list:
    if cfg.kernel_exponents is not None:
        return sorted(set(cfg.kernel_exponents))
    # Petkovsek-style screen: a hypergeometric kernel (N!)^e needs the
    # coefficient ends to supply |e| extra linear factors
    exps = {0}
    gap = rec.coeffs[0].degree(rec.param) - rec.coeffs[-1].degree(rec.param)
    if 0 < abs(gap) <= 3:
        exps.add(gap)
    for (consts, sign, sums, facs) in rec.inhomogeneity.terms:
        for base, e in facs:
            if base == (rec.param,):
                exps.add(e)
    return sorted(exps)


def _ansatz_keys(rec: Recurrence, cfg: AnsatzConfig, rhs_parts) -> list:
    """Candidate term keys: closure of the generator monomials and every
    right-hand-side key under argument shifts."""
    param = rec.param
    vecs = [v for v in all_vectors(cfg.weight, cfg.depth)]
    vecs.extend(cfg.extra_vectors)
    monos = [()]
    for r in range(1, cfg.weight + 1):
        for combo in itertools.combinations_with_replacement(vecs, r):
            if sum(weight(v) for v in combo) <= cfg.weight:
                monos.append(combo)
    kexps = _kernel_exponents(rec, cfg)
    keys = set()
    for combo in monos:
        e = Expr.one()
        for v in combo:
            e = e * Expr.harmonic(v, (param,))
        for delta in (0, 1):
            for ke in kexps:
                w = e
                if delta:
                    w = w * Expr.sign((param,))
                if ke:
                    w = w * Expr.factorial((param,), 0, ke)
                keys.update(w.terms)
    for part in rhs_parts:
        keys.update(part.terms)
    stack = list(keys)
    while stack:
        atom = Expr.from_term(*stack.pop(), RatFunc.const(1))
        for k in atom.shift_arg(param, 1).terms:
            if k not in keys:
                keys.add(k)
                stack.append(k)
    return sorted(keys, key=lambda k: (-_key_weight(k), k))


def _key_weight(key: tuple) -> int:
    _consts, _sign, sums, _facs = key
    return sum(weight(vec) * p for (vec, _base), p in sums)


def _universal_denominator_rec(parts: list, rhs_dens: list, var: str,
                               d: int, window: int,
                               strict: bool = True) -> MPoly:
    """Universal denominator for sum_i e_i(N) x(N+i) = r(N): a pole chain of
    a rational solution ends upward at a root of e_0 and downward d past a
    root of e_d; right-hand-side poles can anchor either end anywhere within
    the operator span, so their factors join both candidate pools at every
    offset 0..-d.  Non-linear leftovers are covered by a shift window when
    strict; otherwise they are dropped, which keeps the bound small but can
    miss solutions (callers detect that and retry strictly)."""
    tops: dict = {}
    bots: dict = {}
    opaque: list = []
    dropped = [False]

    def factored(poly: MPoly) -> list:
        if poly.is_const():
            return []
        factors, leftover = _linear_factors(poly, var)
        if leftover is not None:
            if strict:
                opaque.append(leftover)
            else:
                dropped[0] = True
        return factors

    def add(dst: dict, factors: list, delta: int) -> None:
        for sub, c, mult in factors:
            fam = dst.setdefault(sub, {})
            fam[c + delta] = fam.get(c + delta, 0) + mult

    add(tops, factored(parts[0]), 0)
    add(bots, factored(parts[d]), -d)
    dens: list = []
    for den in rhs_dens:
        if not any(den == e for e in dens):
            dens.append(den)
    for den in dens:
        fd = factored(den)
        for i in range(d + 1):
            add(tops, fd, -i)
            add(bots, fd, -i)
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
    return u, dropped[0]


def _binom_poly(kvar: MPoly, s: int) -> MPoly:
    p = MPoly.const(Q(1, _fact(s)))
    for t in range(s):
        p = p * (kvar - MPoly.const(t))
    return p


def _fact(s: int) -> int:
    out = 1
    for t in range(2, s + 1):
        out *= t
    return out


def _degree_bound_rec(cleared: list, degr: int, var: str, cap: int):
    """Numerator degree bound by the leading-coefficient ladder: descend
    through the expansion of sum_i E_i(N) (N+i)^k until the coefficient of
    N^(b+k-t) is a nonzero polynomial in k; its nonnegative integer roots
    and the right-hand-side balance are the degree candidates."""
    b = max(p.degree(var) for p in cleared)
    cols = [p.to_univar(var) for p in cleared]
    kvar = MPoly.var(var)  # stands for the degree variable inside this scan
    for t in range(b + 2 * len(cleared) + 6):
        ct = MPoly()
        for i, col in enumerate(cols):
            for s in range(t + 1):
                r = b - t + s
                if 0 <= r < len(col) and not col[r].is_zero():
                    e = col[r].const_value()
                    ct = ct + _binom_poly(kvar, s) \
                        * MPoly.const(e * Q(i) ** s)
        if ct.is_zero():
            continue
        cands = [degr - b + t]
        for k in range(0, cap + 1):
            if ct.eval_q({var: Q(k)}) == 0:
                cands.append(k)
        want = max(max(cands) + 1, 0)
        return (cap, True) if want > cap else (want, False)
    raise AssertionError("leading-coefficient ladder did not terminate")


class _AnsatzCascade:
    """All (tau, h) with tau * q = sum_i c_i(N) h(N+i) and h supported on a
    fixed key set with rational-function coefficients.

    Keys are processed heaviest-first: argument shifts only ever couple a
    monomial to strictly lighter ones, so each key yields one linear problem
    for its own coefficient given everything already solved.  mu counts the
    free coordinates of the remaining solution space; tau[t] is the q-weight
    of coordinate t, hcols[t] its accumulated expression, and residual[t] =
    tau[t]*q - L[hcols[t]] restricted to unprocessed keys."""

    def __init__(self, rec: Recurrence, q: Expr, keys: list,
                 cfg: AnsatzConfig, strict: bool = True):
        self.coeffs = rec.coeffs
        self.param = rec.param
        self.d = rec.order
        self.cfg = cfg
        self.keys = keys
        self.strict = strict
        self.lossy = False
        self.clipped = False
        if q.is_zero():
            self.mu = 0
            self.tau: list = []
            self.hcols: list = []
            self.residual: list = []
        else:
            self.mu = 1
            self.tau = [Q(1)]
            self.hcols = [Expr.zero()]
            self.residual = [q]

    def run(self) -> None:
        # mu can grow from zero: a key whose diagonal equation has rational
        # solutions contributes fresh homogeneous directions at any point
        for key in self.keys:
            self._step(key)
        for r in self.residual:
            assert r.is_zero(), f"cascade left a residual: {r}"

    def _step(self, key: tuple) -> None:
        param, d = self.param, self.d
        atom = Expr.from_term(*key, RatFunc.const(1))
        shifts = [atom.shift_arg(param, i) for i in range(d + 1)]
        zero = RatFunc.const(0)
        diag = [RatFunc.of(self.coeffs[i]) * shifts[i].terms.get(key, zero)
                for i in range(d + 1)]
        rhs = [r.terms.get(key, zero) for r in self.residual]
        clear = MPoly.const(1)
        for e in diag:
            clear = clear * e.den.divexact(mpoly_gcd(clear, e.den))
        parts = [(e * RatFunc.of(clear)).as_poly() for e in diag]
        rhs = [r * RatFunc.of(clear) for r in rhs]
        u, dropped = _universal_denominator_rec(
            parts, [r.den for r in rhs if not r.is_zero()], param, d,
            window=d + 2, strict=self.strict)
        self.lossy = self.lossy or dropped
        # substitute x = y/u and multiply by prod_j u(N+j) plus whatever part
        # of the right-hand-side denominators that product still misses
        ushifts = [u.shift(param, j) for j in range(d + 1)]
        prod = MPoly.const(1)
        for us in ushifts:
            prod = prod * us
        extra = MPoly.const(1)
        for r in rhs:
            if not r.is_zero():
                rem = r.den.divexact(mpoly_gcd(r.den, prod))
                extra = extra * rem.divexact(mpoly_gcd(extra, rem))
        cleared = []
        for i in range(d + 1):
            cleared.append(parts[i] * prod.divexact(ushifts[i]) * extra)
        crhs = []
        for r in rhs:
            if r.is_zero():
                crhs.append(MPoly())
                continue
            full = prod * extra
            if not r.den.divides(full):
                raise AnsatzError(f"denominator ansatz misses a pole: {r}")
            crhs.append(r.num * full.divexact(r.den))
        degr = max([c.degree(param) for c in crhs] + [-1])
        deg, clip = _degree_bound_rec(cleared, degr, param,
                                      self.cfg.degree_cap)
        self.clipped = self.clipped or clip
        nvar = MPoly.var(param)
        nrows = max([c.degree(param) + deg for c in cleared]
                    + [c.degree(param) for c in crhs]) + 1
        rows: list[dict] = [dict() for _ in range(nrows)]
        for t in range(deg + 1):
            col = MPoly()
            for i in range(d + 1):
                col = col + cleared[i] * (nvar + MPoly.const(i)) ** t
            for pw, cf in enumerate(col.to_univar(param)):
                if not cf.is_zero():
                    rows[pw][t] = cf
        for s, cp in enumerate(crhs):
            for pw, cf in enumerate(cp.to_univar(param)):
                if not cf.is_zero():
                    rows[pw][deg + 1 + s] = -cf
        rows = [r for r in rows if r]
        sol = solve_linear(rows, deg + 1 + self.mu, [0] * len(rows))
        self._recoordinate(sol.nullspace, deg, u, atom, shifts)

    def _recoordinate(self, null: list, deg: int, u: MPoly, atom: Expr,
                      shifts: list) -> None:
        param = self.param
        hadd, dadd = [], []
        for v in null:
            p = RatFunc.const(0)
            for t in range(deg + 1):
                w = _as_rf(v[t])
                if not w.is_zero():
                    p = p + w * RatFunc.of(MPoly.var(param) ** t)
            x = p / RatFunc.of(u)
            if x.is_zero():
                hadd.append(Expr.zero())
                dadd.append(Expr.zero())
                continue
            hadd.append(atom * x)
            img = Expr.zero()
            for i in range(self.d + 1):
                img = img + shifts[i] * (RatFunc.of(self.coeffs[i])
                                         * x.shift(param, i))
            dadd.append(img)
        weights = [[_as_q(v[deg + 1 + t]) for t in range(self.mu)]
                   for v in null]
        self.tau = [_qdot(self.tau, w) for w in weights]
        self.hcols = [_emix(self.hcols, w) + ha
                      for w, ha in zip(weights, hadd)]
        self.residual = [_emix(self.residual, w) - da
                         for w, da in zip(weights, dadd)]
        self.mu = len(null)


def _as_rf(v) -> RatFunc:
    return v if isinstance(v, RatFunc) else RatFunc.const(v)


def _as_q(v) -> Q:
    if isinstance(v, RatFunc):
        assert v.num.is_const() and v.den.is_const()
        return v.num.const_value() / v.den.const_value()
    if isinstance(v, MPoly):
        return v.const_value()
    return Q(v)


def _qdot(xs: list, w: list) -> Q:
    acc = Q(0)
    for x, c in zip(xs, w):
        acc += x * c
    return acc


def _emix(es: list, w: list) -> Expr:
    acc = Expr.zero()
    for e, c in zip(es, w):
        if c:
            acc = acc + e * c
    return acc


def _normalize_solution(h: Expr) -> Expr:
    """Rescale by a rational (solutions only admit constant scaling) so the
    heaviest term's coefficient has lex-leading numerator and denominator
    coefficients 1."""
    if h.is_zero():
        return h
    key = max(h.terms, key=lambda k: (_key_weight(k), k))
    c = h.terms[key]
    return h * (c.den.lex_lead()[1] / c.num.lex_lead()[1])


def _const_sectors(q: Expr):
    """Split by constant monomial: list of (ConstPoly factor, Expr part)."""
    sectors: dict = {}
    for (consts, sign, sums, facs), coeff in q.terms.items():
        part = sectors.setdefault(consts, Expr.zero())
        sectors[consts] = part + Expr.from_term((), sign, sums, facs, coeff)
    out = []
    for consts in sorted(sectors):
        mono = ConstPoly({consts: Q(1)})
        out.append((mono, sectors[consts]))
    return out


def solve_recurrence(rec: Recurrence, ansatz: AnsatzConfig | None = None,
                     require_full: bool = False) -> SolutionSpace:
    """Homogeneous basis and particular solution within the ansatz space
    {rational(N) * (-1)^(dN) * (N!)^e * monomials in S-sums(N)}.

    Constant monomials of the inhomogeneity are handled sector by sector
    (the operator never mixes them), so the key set itself stays
    constant-free and the homogeneous basis is returned undressed.  With
    require_full, finding fewer than order-many homogeneous solutions is an
    error.

    Non-linear coefficient factors first get the cheap treatment: their pole
    chains are assumed empty.  Anything found that way is verified, so this
    can only lose solutions; if the space comes up short and a factor was
    in fact dropped, the solve reruns with the full shift-window
    denominator."""
    cfg = ansatz or AnsatzConfig()
    sectors = _const_sectors(rec.inhomogeneity)
    keys = _ansatz_keys(rec, cfg, [part for _m, part in sectors])
    lossy = [False]

    def attempt(strict: bool) -> SolutionSpace:
        homogeneous: list = []
        particular = Expr.zero()
        clipped = False
        first = True
        for mono, part in (sectors or [(ConstPoly.rational(1),
                                        Expr.zero())]):
            cascade = _AnsatzCascade(rec, part, keys, cfg, strict=strict)
            cascade.run()
            clipped = clipped or cascade.clipped
            lossy[0] = lossy[0] or cascade.lossy
            if not part.is_zero():
                anchor = next(
                    (t for t in range(cascade.mu) if cascade.tau[t]), None)
                if anchor is None:
                    raise AnsatzError(
                        "ansatz exhausted: no particular solution for the "
                        f"{mono} sector (homogeneous dimension "
                        f"{cascade.mu} of order {rec.order})")
                p = cascade.hcols[anchor] * (1 / cascade.tau[anchor])
                particular = particular + p * Expr.const(mono)
            else:
                anchor, p = None, Expr.zero()
            if first:
                for t in range(cascade.mu):
                    if t == anchor:
                        continue
                    h = cascade.hcols[t]
                    if anchor is not None and cascade.tau[t]:
                        h = h - p * cascade.tau[t]
                    if not h.is_zero():
                        homogeneous.append(_normalize_solution(h))
                first = False
        homogeneous.sort(key=lambda h: sorted(h.terms))
        return SolutionSpace(recurrence=rec, homogeneous=homogeneous,
                             particular=particular, clipped=clipped)

    try:
        space = attempt(strict=False)
        if lossy[0] and space.dimension < rec.order:
            space = attempt(strict=True)
    except AnsatzError:
        if not lossy[0]:
            raise
        space = attempt(strict=True)
    _check_space(space)
    if require_full and space.dimension < rec.order:
        raise AnsatzError(
            f"ansatz exhausted: found {space.dimension} of {rec.order} "
            "homogeneous solutions"
            + (" (degree cap reached)" if space.clipped else ""))
    return space


def _check_space(space: SolutionSpace, count: int = 40) -> None:
    rec = space.recurrence
    start = max(rec.valid_from, _pole_floor(space), 1)
    hom = Recurrence(coeffs=list(rec.coeffs), inhomogeneity=Expr.zero(),
                     param=rec.param)
    for h in space.homogeneous:
        vals = {n: h.eval_expr({rec.param: n})
                for n in range(start, start + count + hom.order)}
        rep = verify_recurrence(hom, vals, start, count)
        assert rep.passed, f"homogeneous candidate fails: {rep}"
    if not space.particular.is_zero() or not rec.inhomogeneity.is_zero():
        vals = {n: space.particular.eval_expr({rec.param: n})
                for n in range(start, start + count + rec.order)}
        rep = verify_recurrence(rec, vals, start, count)
        assert rep.passed, f"particular candidate fails: {rep}"


def _pole_floor(space: SolutionSpace) -> int:
    """First N at which every member expression can be evaluated."""
    worst = -1
    for e in space.homogeneous + [space.particular]:
        for coeff in e.terms.values():
            worst = max(worst, *(_int_roots(coeff.den, space.recurrence.param)
                                 or [-1]))
    return worst + 1


def fit_constants(space: SolutionSpace, values, *, verify: int = 10):
    """Constants k making particular + sum k_t h_t match the given values;
    returns the closed form and stores the constants on the space.

    The fit uses the first dimension-many value points; up to verify further
    points must then agree exactly (a mismatch means the solution space does
    not contain the data)."""
    rec = space.recurrence
    r = space.dimension
    if isinstance(values, (list, tuple)):
        values = dict(enumerate(values))
    if not isinstance(values, dict):
        raise RecSolveError("initial values must be a mapping N -> value")
    points = sorted(values)
    get = _values_fn(values)
    if len(points) < r:
        raise RecSolveError(
            f"insufficient values: {r} constants need {r} points")
    floor = max(_pole_floor(space), rec.valid_from)
    usable = [n for n in points if n >= floor]
    if len(usable) < r:
        raise RecSolveError(
            f"insufficient values: only {len(usable)} usable points lie at "
            f"N >= {floor}")
    fit, check = usable[:r], usable[r:r + verify]
    rows = []
    rhs_vals = []
    for n in fit:
        rows.append([h.eval_expr({rec.param: n}).rational_value()
                     for h in space.homogeneous])
        rhs_vals.append(get(n) - space.particular.eval_expr({rec.param: n}))
    monos = sorted(set().union(*(set(v.terms) for v in rhs_vals), {()}))
    rhs_list = [[v.coeff_of(m) for v in rhs_vals] for m in monos]
    parts, nullspace, _piv = solve_linear_multi(rows, r, rhs_list)
    if any(p is None for p in parts):
        raise RecSolveError(
            "inconsistent initial values: the solution space does not "
            "contain the data")
    if nullspace:
        raise RecSolveError(
            "singular initial-value window: homogeneous solutions are not "
            "independent at these points")
    constants = []
    for t in range(r):
        k = ConstPoly({m: _as_q(parts[j][t])
                       for j, m in enumerate(monos) if _as_q(parts[j][t])})
        constants.append(k)
    closed = space.particular
    for k, h in zip(constants, space.homogeneous):
        if not k.is_zero():
            closed = closed + h * Expr.const(k)
    for n in check:
        got = closed.eval_expr({rec.param: n})
        if not (got - get(n)).is_zero():
            raise RecSolveError(
                f"inconsistent initial values: fitted form fails at N={n}")
    space.constants = constants
    return closed
