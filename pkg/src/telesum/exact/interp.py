"""Parameterized linear solving by modular evaluation and reconstruction.

Fraction-free elimination on matrices over Q[x] suffers from minor-degree
blowup: intermediate entries are determinants whose degrees grow with every
pivot even when the final reduced solution is small.  This solver instead
specializes x at many integer points, row-reduces each specialization over
word-sized prime fields, reconstructs every needed solution entry as a
rational function (Cauchy interpolation per prime, CRT, continued-fraction
lifting), and certifies the reconstruction exactly against the original
matrix by evaluating the cleared residuals at degree-bound many points.
Only a certified result is returned; any failure gives None and the caller
falls back to symbolic elimination, so randomness affects running time,
never correctness.

Sample points and primes grow independently: a failed per-prime Cauchy
reconstruction means the entry's degree needs more points, while a failed
rational lift of CRT data means its coefficients need more primes (at which
point the established sample count is kept as a floor).  Primes stay below
2^31 so residue matrices row-reduce in vectorized int64 arithmetic without
overflow; rows are cleared to integer coefficients once so sampling never
needs a modular inverse.

The output convention matches linsolve: nullspace vectors carry 1 in their
free column, the particular solution sets every free column to 0, and an
inconsistent right-hand side shows up as a pivot inside its augmented
column."""
from __future__ import annotations

import numpy as np

from ._scalars import Q
from ._unipoly import _next_prime, peval, rat_fn_recon, rat_lift
from .mpoly import MPoly, mpoly_gcd
from .ratfunc import RatFunc

_X0 = 9973
_COUNTS = (17, 33, 65, 129, 257, 513, 1025, 2049)
_NPRIMES = (4, 8, 16, 24)

# distinct 31-bit primes: spacing far exceeds local prime gaps
PRIMES31 = tuple(_next_prime((1 << 31) - ((k + 1) << 21)) for k in range(28))


class _NeedPrimes(Exception):
    """CRT data will not lift at the current modulus."""


def try_solve_param(work: list, ncols: int, nrhs: int, var: str):
    """(particulars, nullspace, pivot_cols) for the augmented sparse MPoly
    matrix univariate in var, or None when reconstruction fails.

    work rows are dicts {col: MPoly}; columns >= ncols hold right-hand
    sides."""
    width = ncols + nrhs
    qrows: list = []   # sparse rows of ascending int coefficient lists
    rix: list = []     # entry row indices (into qrows)
    cix: list = []     # entry column indices
    ents: list = []    # entry coefficient lists
    lcms: list = []    # the denominator each row was cleared by
    maxdeg = 0
    for row in work:
        d = {}
        for c, e in row.items():
            if not e.is_zero():
                d[c] = _qlist(e, var)
        if not d:
            continue
        lcm = 1
        for cl in d.values():
            for q in cl:
                den = int(q.denominator)
                if den != 1:
                    lcm = lcm * den // _igcd(lcm, den)
        cleared = {c: [int(q * lcm) for q in cl] for c, cl in d.items()}
        i = len(qrows)
        qrows.append(cleared)
        lcms.append(lcm)
        for c, cl in cleared.items():
            rix.append(i)
            cix.append(c)
            ents.append(cl)
            maxdeg = max(maxdeg, len(cl) - 1)
    nrows = len(qrows)
    if nrows == 0:
        zero = RatFunc.const(0)
        return ([[zero] * ncols for _ in range(nrhs)],
                [_unit_vec(f, ncols) for f in range(ncols)], [])
    rix_a = np.asarray(rix, dtype=np.intp)
    cix_a = np.asarray(cix, dtype=np.intp)
    cmods: dict = {}   # prime -> int64 (nentries, maxdeg+1) coefficient array

    def coeffs_mod(p: int):
        got = cmods.get(p)
        if got is None:
            if any(l % p == 0 for l in lcms):
                cmods[p] = got = False   # row scale vanishes: prime unusable
            else:
                arr = np.zeros((len(ents), maxdeg + 1), dtype=np.int64)
                for e, cl in enumerate(ents):
                    for k, v in enumerate(cl):
                        arr[e, k] = v % p
                cmods[p] = got = arr
        return got

    cache: dict = {}   # x -> {prime: (reduced pivot rows, pivot tuple)}
    xs_order: list = []
    next_x = _X0
    count_floor = 0
    for nprimes in _NPRIMES:
        primes = [p for p in PRIMES31 if coeffs_mod(p) is not False][:nprimes]
        if len(primes) < nprimes:
            return None
        for count in _COUNTS:
            if count < maxdeg + 2 or count < count_floor:
                continue
            while len(xs_order) < count + 4:
                cache[next_x] = {}
                xs_order.append(next_x)
                next_x += 1
            for x in xs_order:
                got = cache[x]
                for p in primes:
                    if p not in got:
                        got[p] = _sample(coeffs_mod(p), rix_a, cix_a,
                                         nrows, width, x, p)
            pats = [_point_pattern(cache[x], primes) for x in xs_order]
            generic = min((pv for pv in pats if pv is not None),
                          key=lambda pv: (-len(pv), pv), default=None)
            if generic is None:
                continue
            good = [x for x, pv in zip(xs_order, pats) if pv == generic]
            if len(good) < count:
                continue
            try:
                res = _reconstruct(good[:count + 4], count, cache, primes,
                                   generic, ncols, nrhs, var)
            except _NeedPrimes:
                count_floor = count
                break
            if res is None:
                continue
            particulars, nullspace = res
            if _certify(qrows, ncols, particulars, nullspace, var, maxdeg):
                pivot_cols = [c for c in generic if c < ncols]
                return particulars, nullspace, pivot_cols
        else:
            return None
    return None


def _unit_vec(f: int, ncols: int) -> list:
    v = [RatFunc.const(0)] * ncols
    v[f] = RatFunc.const(1)
    return v


def _igcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _qlist(pol: MPoly, var: str) -> list:
    """Ascending coefficient list of a univariate polynomial, as Q."""
    return [m.const_value() for m in pol.to_univar(var)]


def _horner_int(cl: list, x: int):
    acc = 0
    for cf in reversed(cl):
        acc = acc * x + cf
    return acc


def _point_pattern(got: dict, primes: list):
    """The pivot tuple shared by every active prime at this point, or None
    when the primes disagree (some specialization was unlucky)."""
    pats = {got[p][1] for p in primes}
    return pats.pop() if len(pats) == 1 else None


def _sample(coeffs: np.ndarray, rix: np.ndarray, cix: np.ndarray,
            nrows: int, width: int, x: int, p: int) -> tuple:
    """(reduced pivot rows, pivot tuple) of the matrix mod p at var = x."""
    xm = x % p
    vals = np.zeros(len(coeffs), dtype=np.int64)
    for k in range(coeffs.shape[1] - 1, -1, -1):
        vals = (vals * xm + coeffs[:, k]) % p
    m = np.zeros((nrows, width), dtype=np.int64)
    m[rix, cix] = vals
    piv, red = _rref_mod(m, p)
    return red, tuple(piv)


def _rref_mod(m: np.ndarray, p: int):
    """Reduced row echelon form over F_p; (pivot cols, pivot row array).

    Entries stay in [0, p) with p < 2^31, so every intermediate product of
    two entries fits in int64."""
    nrows, width = m.shape
    piv_cols: list = []
    r = 0
    for c in range(width):
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        inv = pow(int(m[r, c]), -1, p)
        m[r, c:] = m[r, c:] * inv % p
        col = m[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            m[rows, c:] = (m[rows, c:] - col[rows, None] * m[r, c:]) % p
        piv_cols.append(c)
        r += 1
        if r == nrows:
            break
    return piv_cols, m[:r].astype(np.int32)


def _reconstruct(good: list, count: int, cache: dict, primes: list,
                 generic: tuple, ncols: int, nrhs: int, var: str):
    """Solution entries as rational functions from the sampled reduced rows;
    None when an entry needs more points, _NeedPrimes when it needs a larger
    lifting modulus.  Each entry is fitted on an adaptively grown prefix of
    the points and must reproduce every remaining sample."""
    pivots = [c for c in generic if c < ncols]
    pidx = {c: i for i, c in enumerate(generic)}
    free = [c for c in range(ncols) if c not in generic]

    def entry(row_i: int, col: int):
        ys = [[int(cache[x][p][0][row_i, col]) for x in good]
              for p in primes]
        return _lift_fn(good, ys, count, primes, var)

    zero = RatFunc.const(0)
    nullspace = []
    for f in free:
        v = [zero] * ncols
        v[f] = RatFunc.const(1)
        for pc in pivots:
            val = entry(pidx[pc], f)
            if val is None:
                return None
            v[pc] = -val
        nullspace.append(v)
    particulars: list = []
    for t in range(nrhs):
        if ncols + t in generic:
            particulars.append(None)  # rhs column is independent: no solution
            continue
        v = [zero] * ncols
        for pc in pivots:
            val = entry(pidx[pc], ncols + t)
            if val is None:
                return None
            v[pc] = val
        particulars.append(v)
    return particulars, nullspace


def _lift_fn(xs: list, ys_per_prime: list, count: int, primes: list,
             var: str):
    """Rational function through the samples, or None when count points do
    not pin one down.  The fit starts on a short prefix and grows until the
    reconstruction reproduces every held-out sample, so low-degree entries
    (the common case) never pay the full Cauchy cost."""
    if all(y == 0 for ys in ys_per_prime for y in ys):
        return RatFunc.const(0)
    recs = []
    for p, ys in zip(primes, ys_per_prime):
        xm = [x % p for x in xs]
        rec = None
        sub = 17
        while True:
            sub = min(sub, count)
            cand = rat_fn_recon(xm[:sub], ys[:sub], p)
            if cand is not None and _fits(cand, xm, ys, sub, p):
                rec = cand
                break
            if sub == count:
                break
            sub *= 2
        if rec is None:
            return None
        recs.append(rec)
    if len({(len(n), len(d)) for n, d in recs}) != 1:
        return None
    num = _lift_poly([r[0] for r in recs], primes, var)
    den = _lift_poly([r[1] for r in recs], primes, var)
    if num is None or den is None:
        raise _NeedPrimes
    return RatFunc(num, den)


def _fits(rec: tuple, xm: list, ys: list, sub: int, p: int) -> bool:
    num, den = rec
    for x, y in zip(xm[sub:], ys[sub:]):
        if peval(num, x, p) != y * peval(den, x, p) % p:
            return False
    return True


def _lift_poly(lists: list, primes: list, var: str):
    modulus = 1
    for p in primes:
        modulus *= p
    coeffs = []
    for vals in zip(*lists):
        acc, m = 0, 1
        for v, p in zip(vals, primes):
            acc += m * ((v - acc) * pow(m, -1, p) % p)
            m *= p
        q = rat_lift(acc, modulus)
        if q is None:
            return None
        coeffs.append(MPoly.const(q))
    return MPoly.from_univar(var, coeffs)


def _certify(qrows: list, ncols: int, particulars: list, nullspace: list,
             var: str, adeg: int) -> bool:
    """Exact verification: each vector, cleared to a polynomial vector, must
    satisfy its defining equations as polynomial identities; the residuals
    have known degree bounds, so vanishing at that many points decides it.
    qrows carry integer coefficients, so the inner products run over ints."""
    jobs = []  # (sparse Q-list vector, denominator Q-list, rhs column or None)
    vdeg = ddeg = 0
    for t, v in enumerate(particulars):
        if v is not None:
            jobs.append(_clear(v, var) + (ncols + t,))
    for v in nullspace:
        jobs.append(_clear(v, var) + (None,))
    if not jobs:
        return True
    for wl, dl, _rc in jobs:
        vdeg = max(vdeg, max((len(l) - 1 for l in wl.values()), default=0))
        ddeg = max(ddeg, len(dl) - 1)
    npts = adeg + max(vdeg, ddeg) + 2
    need = {c for wl, _dl, _rc in jobs for c in wl}
    for x in range(-npts - 1, -1):
        wvals = [({c: _horner_q(l, x) for c, l in wl.items()},
                  _horner_q(dl, x), rc) for wl, dl, rc in jobs]
        for row in qrows:
            av = {c: _horner_int(cl, x) for c, cl in row.items() if c in need}
            for wv, dv, rc in wvals:
                acc = 0
                for c, wc in wv.items():
                    a = av.get(c)
                    if a is not None:
                        acc = acc + a * wc
                rl = row.get(rc) if rc is not None else None
                if rl is not None:
                    acc = acc - _horner_int(rl, x) * dv
                if acc != 0:
                    return False
    return True


def _horner_q(cl: list, x: int):
    acc = Q(0)
    for cf in reversed(cl):
        acc = acc * x + cf
    return acc


def _clear(v: list, var: str):
    """Clear denominators: sparse dict of ascending Q coefficient lists for
    den*v, plus den's own list."""
    den = MPoly.const(1)
    for e in v:
        if not e.is_zero() and not e.den.is_const():
            den = den * e.den.divexact(mpoly_gcd(den, e.den))
    wl = {}
    for c, e in enumerate(v):
        if not e.is_zero():
            wl[c] = _qlist((e * RatFunc.of(den)).as_poly(), var)
    return wl, _qlist(den, var)
