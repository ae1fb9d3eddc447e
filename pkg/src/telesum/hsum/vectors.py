"""Index-vector combinatorics for nested harmonic sums.

A vector (m_1, ..., m_k) of nonzero integers denotes
    S: sum over N >= i_1 >= i_2 >= ... >= i_k >= 1 of prod sign(m_l)^{i_l} / i_l^{|m_l|}
    Z: same with strict inequalities.
Weight = sum |m_l|, depth = k.  Evaluation is exact and cached; products and
S<->Z conversions are the quasi-shuffle identities obtained from splitting a
pair of indices into <, >, = ranges.
"""
from __future__ import annotations

from functools import lru_cache

from ..exact import Q

WEIGHT_CAP = 6
DEPTH_CAP = 4

Vec = tuple


def as_vec(v) -> Vec:
    t = tuple(int(m) for m in v)
    if not t:
        raise ValueError("empty index vector")
    if any(m == 0 for m in t):
        raise ValueError(f"zero entry in index vector {t}")
    return t


def weight(v: Vec) -> int:
    return sum(abs(m) for m in v)


def depth(v: Vec) -> int:
    return len(v)


def join(m1: int, m2: int) -> int:
    """Index for a collided pair of summation variables: weights add,
    alternation signs multiply."""
    w = abs(m1) + abs(m2)
    return w if (m1 > 0) == (m2 > 0) else -w


@lru_cache(maxsize=None)
def eval_s(v: Vec, n: int) -> Q:
    if n < 0:
        raise ValueError("negative bound")
    if not v:
        return Q(1)
    m, rest = v[0], v[1:]
    w = abs(m)
    total = Q(0)
    for i in range(1, n + 1):
        t = Q(1, i**w) * eval_s(rest, i)
        total += -t if (m < 0 and i % 2) else t
    return total


@lru_cache(maxsize=None)
def eval_z(v: Vec, n: int) -> Q:
    if n < 0:
        raise ValueError("negative bound")
    if not v:
        return Q(1)
    m, rest = v[0], v[1:]
    w = abs(m)
    total = Q(0)
    for i in range(len(v), n + 1):  # strict descent needs i > depth(rest)
        t = Q(1, i**w) * eval_z(rest, i - 1)
        total += -t if (m < 0 and i % 2) else t
    return total


@lru_cache(maxsize=None)
def stuffle_s(a: Vec, b: Vec) -> tuple:
    """S_a(n) * S_b(n) as a sum of single S-sums: tuple of (coeff, vec).

    Splitting the outer indices into i>=j, j>=i and subtracting the doubly
    counted i=j diagonal gives the three-term recursion."""
    if not a:
        return ((1, b),) if b else ((1, ()),)
    if not b:
        return ((1, a),)
    out: dict = {}
    for c, u in stuffle_s(a[1:], b):
        _acc(out, (a[0],) + u, c)
    for c, u in stuffle_s(a, b[1:]):
        _acc(out, (b[0],) + u, c)
    for c, u in stuffle_s(a[1:], b[1:]):
        _acc(out, (join(a[0], b[0]),) + u, -c)
    return tuple(sorted((c, u) for u, c in out.items() if c))


@lru_cache(maxsize=None)
def stuffle_z(a: Vec, b: Vec) -> tuple:
    """Z_a(n) * Z_b(n); the i>j, j>i, i=j split has no double counting."""
    if not a:
        return ((1, b),) if b else ((1, ()),)
    if not b:
        return ((1, a),)
    out: dict = {}
    for c, u in stuffle_z(a[1:], b):
        _acc(out, (a[0],) + u, c)
    for c, u in stuffle_z(a, b[1:]):
        _acc(out, (b[0],) + u, c)
    for c, u in stuffle_z(a[1:], b[1:]):
        _acc(out, (join(a[0], b[0]),) + u, c)
    return tuple(sorted((c, u) for u, c in out.items() if c))


def _acc(d: dict, key, c: int) -> None:
    d[key] = d.get(key, 0) + c


@lru_cache(maxsize=None)
def s_to_z(v: Vec) -> tuple:
    """S_v as an integer combination of Z-sums: tuple of (coeff, zvec).
    Non-strict sums decompose over collisions of adjacent indices."""
    v = as_vec(v)
    if len(v) == 1:
        return ((1, v),)
    out: dict = {}
    for c, u in s_to_z(v[1:]):
        _acc(out, (v[0],) + u, c)
        _acc(out, (join(v[0], u[0]),) + u[1:], c)
    return tuple(sorted((c, u) for u, c in out.items() if c))


@lru_cache(maxsize=None)
def z_to_s(v: Vec) -> tuple:
    """Inverse rewrite; collisions enter with alternating sign."""
    v = as_vec(v)
    if len(v) == 1:
        return ((1, v),)
    out: dict = {}
    for c, u in z_to_s(v[1:]):
        _acc(out, (v[0],) + u, c)
        _acc(out, (join(v[0], u[0]),) + u[1:], -c)
    return tuple(sorted((c, u) for u, c in out.items() if c))


def all_vectors(max_weight: int, max_depth: int = DEPTH_CAP) -> list:
    """Every index vector with weight <= max_weight, depth <= max_depth,
    in (weight, depth, lex) order; used for bases and exhaustive checks."""
    out = []
    def extend(prefix, wleft):
        if prefix:
            out.append(tuple(prefix))
        if len(prefix) == max_depth:
            return
        for w in range(1, wleft + 1):
            for m in (w, -w):
                prefix.append(m)
                extend(prefix, wleft - w)
                prefix.pop()
    extend([], max_weight)
    out.sort(key=lambda v: (weight(v), len(v), v))
    return out
