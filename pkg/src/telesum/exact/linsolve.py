"""Exact linear solver over rational functions.

Forward elimination is fraction-free (Bareiss one-step): rows are cleared of
denominators up front, every update is (piv*a[i][j] - a[i][pc]*a[p][j]) / prev
with an exact division, so intermediate entries are minors of the cleared
matrix instead of reduced fractions with compounding gcd costs.  Pivots are
chosen Markowitz-style (least fill-in, then smallest entry) among structural
nonzeros.  Back-substitution runs over reduced rational functions.

The solver reports the full affine solution set: a particular solution plus a
nullspace basis in reduced row-echelon convention (each basis vector has a 1
in one free column and 0 in the others).  Inconsistency is signaled by
``particular is None`` and is distinct from an empty nullspace.
"""
from __future__ import annotations

from dataclasses import dataclass

from ._scalars import Q, as_q
from .mpoly import MPoly, mpoly_gcd
from .ratfunc import RatFunc


class LinSolveError(Exception):
    """Raised when exact elimination is refused as clearly infeasible."""


@dataclass
class LinearSolution:
    """particular is None iff the system is inconsistent."""
    particular: list | None
    nullspace: list[list]
    pivot_cols: list[int]


def solve_linear(rows, ncols: int, rhs) -> LinearSolution:
    """Solve rows . x = rhs.

    rows: list of sparse dicts {col: coeff} or dense lists; coefficients may
    be int, rational, MPoly or RatFunc.  Entries of the returned vectors are
    Q when every input was constant, RatFunc otherwise.
    """
    parts, nullspace, pivots = solve_linear_multi(rows, ncols, [rhs])
    return LinearSolution(parts[0], nullspace, pivots)


def solve_linear_multi(rows, ncols: int, rhs_list) -> tuple[list, list, list]:
    """One elimination shared across several right-hand sides.

    Returns (particulars, nullspace, pivot_cols): particulars[t] is the
    solution for rhs_list[t] (None if that rhs is inconsistent); the
    homogeneous nullspace is common to all.
    """
    nrhs = len(rhs_list)
    work, const_only = _normalize(rows, ncols, rhs_list)
    if not const_only and ncols >= 10:
        used = set()
        for row in work:
            for e in row.values():
                used |= e.vars_used()
        if len(used) == 1:
            from .interp import try_solve_param
            param = next(iter(used))
            res = try_solve_param(work, ncols, nrhs, param)
            if res is not None:
                return res
            maxdeg = max(e.degree(param) for row in work
                         for e in row.values())
            if maxdeg > 24:
                # fraction-free elimination on entries this large would
                # produce minor degrees far beyond practical bounds
                raise LinSolveError(
                    f"parametric elimination infeasible at degree {maxdeg}")
    # forward fraction-free elimination
    pivot_rows: list[tuple[dict, int, MPoly]] = []  # (row, pivot col, pivot)
    active = list(range(len(work)))
    prev = MPoly.const(1)
    pivoted_cols: set[int] = set()
    while True:
        sel = _select_pivot(work, active, ncols)
        if sel is None:
            break
        pr, pc = sel
        active.remove(pr)
        row_p = work[pr]
        piv = row_p[pc]
        for ri in active:
            row = work[ri]
            apc = row.pop(pc, None)
            if apc is None:
                for c in list(row):
                    row[c] = _divexact(piv * row[c], prev)
            else:
                for c in set(row) | set(row_p):
                    if c == pc:
                        continue
                    t = piv * row.get(c, _MP0) - apc * row_p.get(c, _MP0)
                    if t.is_zero():
                        row.pop(c, None)
                    else:
                        row[c] = _divexact(t, prev)
        prev = piv
        pivot_rows.append((row_p, pc, piv))
        pivoted_cols.add(pc)
    # leftover active rows have empty coefficient support; nonzero rhs there
    # marks that rhs inconsistent
    bad = [False] * nrhs
    for ri in active:
        for t in range(nrhs):
            if not work[ri].get(ncols + t, _MP0).is_zero():
                bad[t] = True
    free_cols = [c for c in range(ncols) if c not in pivoted_cols]
    zero = RatFunc.const(0)
    nullspace = []
    for f in free_cols:
        v = [zero] * ncols
        v[f] = RatFunc.const(1)
        _back_substitute(pivot_rows, v, lambda row: zero)
        nullspace.append(_finalize(v, const_only))
    particulars: list = []
    for t in range(nrhs):
        if bad[t]:
            particulars.append(None)
            continue
        v = [zero] * ncols
        _back_substitute(pivot_rows, v, lambda row: RatFunc.of(row.get(ncols + t, _MP0)))
        particulars.append(_finalize(v, const_only))
    return particulars, nullspace, [pc for _, pc, _ in pivot_rows]


_MP0 = MPoly()


def _back_substitute(pivot_rows, v: list, rhs_of) -> None:
    ncols = len(v)
    for row, pc, piv in reversed(pivot_rows):
        acc = rhs_of(row)
        for c, a in row.items():
            if c < ncols and c != pc and bool(v[c]):
                acc = acc - RatFunc.of(a) * v[c]
        v[pc] = acc / RatFunc.of(piv)


def _finalize(v: list, const_only: bool) -> list:
    if not const_only:
        return v
    return [x.const_value() for x in v]


def _divexact(a: MPoly, b: MPoly) -> MPoly:
    if b.is_const() and b.const_value() == 1:
        return a
    return a.divexact(b)


def _select_pivot(work, active, ncols):
    """Markowitz count over structural nonzeros, tie-broken by entry size and
    position; None when no eligible entry remains."""
    col_count: dict[int, int] = {}
    for ri in active:
        for c in work[ri]:
            if c < ncols:
                col_count[c] = col_count.get(c, 0) + 1
    best = None
    for ri in active:
        row = work[ri]
        rnnz = sum(1 for c in row if c < ncols)
        if rnnz == 0:
            continue
        for c, a in row.items():
            if c >= ncols:
                continue
            score = (rnnz - 1) * (col_count[c] - 1)
            size = len(a.terms)
            key = (score, size, ri, c)
            if best is None or key < best[0]:
                best = (key, ri, c)
    if best is None:
        return None
    return best[1], best[2]


def _normalize(rows, ncols: int, rhs_list) -> tuple[list[dict], bool]:
    """Sparse MPoly rows with rhs columns appended; clears denominators
    row-wise (scaling a row does not change the solution set)."""
    nrhs = len(rhs_list)
    for rhs in rhs_list:
        if len(rhs) != len(rows):
            raise ValueError("rhs length does not match row count")
    out = []
    const_only = True
    for rn, row in enumerate(rows):
        items = row.items() if isinstance(row, dict) else enumerate(row)
        entries: dict[int, RatFunc] = {}
        for c, aij in items:
            if not (0 <= c < ncols):
                raise ValueError(f"column {c} out of range")
            r = RatFunc.of(aij)
            if not r.is_zero():
                entries[c] = r
        for t in range(nrhs):
            r = RatFunc.of(rhs_list[t][rn])
            if not r.is_zero():
                entries[ncols + t] = r
        den = MPoly.const(1)
        for r in entries.values():
            if not r.den.is_const():
                den = den * r.den.divexact(mpoly_gcd(den, r.den))
            const_only = const_only and r.is_const()
        cleared: dict[int, MPoly] = {}
        for c, r in entries.items():
            p = r * den
            cleared[c] = p.as_poly()
        out.append(cleared)
    return out, const_only
