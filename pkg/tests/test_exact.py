"""Exact-arithmetic layer: gcd, rational roots, dispersion, linear solving.

Randomized checks use fixed seeds.  The linear-solver consistency oracle is
an independent naive Fraction elimination on an integer evaluation of the
system (a random evaluation point preserves ranks with overwhelming
probability, and the seed pins the outcome).
"""
import random
from fractions import Fraction

from telesum.exact import (
    MPoly, Q, RatFunc, dispersion_set, mpoly_gcd, rational_roots, solve_linear,
)

N = MPoly.var("N")
J = MPoly.var("j")


def rand_poly(rng, deg, var=N, nterms=3):
    p = MPoly()
    for _ in range(nterms):
        p = p + MPoly.const(rng.randint(-9, 9)) * var ** rng.randint(0, deg)
    return p


# ---------------------------------------------------------------- gcd


def test_gcd_common_linear_factor():
    assert mpoly_gcd(N**2 - 1, N - 1) == N - 1


def test_gcd_with_zero_is_monic_identity():
    p = 3 * (N + 2) * (N - 5)
    g = mpoly_gcd(p, MPoly())
    assert g == p.scale(Q(1, 3))
    assert mpoly_gcd(MPoly(), MPoly()) == MPoly()


def test_gcd_two_quadratics():
    # x^2+3x+2 = (x+1)(x+2), x^2+5x+6 = (x+2)(x+3)
    assert mpoly_gcd(N**2 + 3*N + 2, N**2 + 5*N + 6) == N + 2


def test_gcd_multivariate():
    g0 = (N + 1) * (J - 3)
    a = g0 * (N + 2) * J
    b = g0 * (J + 5)
    g = mpoly_gcd(a, b)
    assert g.divides(a) and g.divides(b)
    assert g == g0  # lex-monic already

def test_gcd_divides_both_inputs_randomized():
    rng = random.Random(11)
    for _ in range(60):
        common = rand_poly(rng, 2)
        a = common * rand_poly(rng, 3)
        b = common * rand_poly(rng, 3, var=J)
        if a.is_zero() or b.is_zero():
            continue
        g = mpoly_gcd(a, b)
        assert g.divides(a) and g.divides(b)
        if not common.is_const() and not common.is_zero():
            assert common.divides(g) or g.divides(common) or common.degree("N") <= g.total_degree()


def test_divexact_roundtrip_randomized():
    rng = random.Random(12)
    for _ in range(80):
        a = rand_poly(rng, 3) + rand_poly(rng, 2, var=J)
        b = rand_poly(rng, 2)
        if b.is_zero():
            continue
        assert (a * b).divexact(b) == a


# ------------------------------------------------- polynomial structure


def test_shift_matches_evaluation():
    rng = random.Random(13)
    for _ in range(40):
        p = rand_poly(rng, 4)
        k = rng.randint(-5, 5)
        x = Q(rng.randint(-20, 20))
        assert p.shift("N", k).eval_q({"N": x}) == p.eval_q({"N": x + k})


def test_subst_composes():
    rng = random.Random(14)
    for _ in range(30):
        p = rand_poly(rng, 3)
        q = rand_poly(rng, 2)
        x = Q(rng.randint(-10, 10))
        assert p.subst("N", q).eval_q({"N": x}) == p.eval_q({"N": q.eval_q({"N": x})})


def test_rational_field_axioms_randomized():
    rng = random.Random(15)
    def rand_q():
        return Q(rng.randint(-99, 99), rng.randint(1, 30))
    for _ in range(200):
        a, b, c = rand_q(), rand_q(), rand_q()
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c


def test_ratfunc_ring_axioms_randomized():
    rng = random.Random(16)
    def rand_rf():
        num = rand_poly(rng, 2)
        den = rand_poly(rng, 1)
        while den.is_zero():
            den = rand_poly(rng, 1)
        return RatFunc(num, den)
    for _ in range(25):
        a, b, c = rand_rf(), rand_rf(), rand_rf()
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c


def test_ratfunc_reduction_and_canonical_form():
    r = RatFunc(N**2 - 1, N - 1)
    assert r.is_poly() and r.as_poly() == N + 1
    # denominator lex-monic: equal functions are structurally equal
    assert RatFunc(2 * N, 2 * (N + 1)) == RatFunc(N, N + 1)
    assert RatFunc(MPoly.const(1), N) + RatFunc(MPoly.const(-1), N) == RatFunc.const(0)


# ------------------------------------------------------ rational roots


def test_rational_roots_quadratic():
    assert rational_roots(N**2 - 1, "N") == [(Q(-1), 1), (Q(1), 1)]


def test_rational_roots_with_multiplicity():
    # (N+1)^3 (N+2)
    p = (N + 1)**3 * (N + 2)
    assert rational_roots(p, "N") == [(Q(-2), 1), (Q(-1), 3)]


def test_rational_roots_non_integer():
    assert rational_roots(2*N - 3, "N") == [(Q(3, 2), 1)]


def test_rational_roots_none():
    assert rational_roots(N**2 + 1, "N") == []


def test_rational_roots_at_zero():
    assert rational_roots(N**3 * (2*N - 1), "N") == [(Q(0), 3), (Q(1, 2), 1)]


# ----------------------------------------------------------- dispersion


def test_dispersion_shift_orbit():
    assert dispersion_set((N + 1) * (N + 4), N + 1, "N") == [0, 3]
    assert dispersion_set(N + 1, N + 5, "N") == []  # b(x+h) never meets a
    assert dispersion_set(N + 5, N + 1, "N") == [4]


def test_dispersion_with_parameter():
    a = (J + 1) * (J + MPoly.var("N"))
    b = J + MPoly.var("N")
    assert dispersion_set(a, b, "j") == [0]
    assert dispersion_set(a, J + 1, "j") == [0]


# -------------------------------------------------------- linear solver


def test_solve_identity():
    s = solve_linear([[1, 0], [0, 1]], 2, [1, 2])
    assert s.particular == [Q(1), Q(2)]
    assert s.nullspace == []


def test_solve_rank_deficient():
    s = solve_linear([[RatFunc.of(N), RatFunc.of(N)]], 2, [RatFunc.of(N)])
    assert s.particular is not None
    assert len(s.nullspace) == 1
    # particular satisfies x0 + x1 = 1; nullspace spans (1, -1)
    assert s.particular[0] + s.particular[1] == RatFunc.const(1)
    v = s.nullspace[0]
    assert v[0] + v[1] == RatFunc.const(0) and bool(v[0])


def test_solve_inconsistent_distinct_from_trivial_nullspace():
    s = solve_linear([[1, 1], [1, 1]], 2, [1, 2])
    assert s.particular is None
    assert len(s.nullspace) == 1
    s2 = solve_linear([[1, 0], [0, 1]], 2, [0, 0])
    assert s2.particular == [Q(0), Q(0)] and s2.nullspace == []


def _naive_rank(rows_q):
    """Fraction Gauss elimination rank; independent of the solver."""
    m = [list(r) for r in rows_q]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pr = m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c] / pr[c]
                m[r] = [x - f * y for x, y in zip(m[r], pr)]
        rank += 1
    return rank


def test_solver_randomized_systems():
    # 200 systems, dims <= 8, coefficient degree <= 4; every returned
    # solution is checked by exact back-substitution and every verdict is
    # cross-checked against an evaluated-rank oracle
    rng = random.Random(17)
    for trial in range(200):
        nr = rng.randint(1, 8)
        nc = rng.randint(1, 8)
        rows = [[rand_poly(rng, 4, nterms=2) for _ in range(nc)] for _ in range(nr)]
        if trial % 2 == 0:
            xt = [rand_poly(rng, 2, nterms=2) for _ in range(nc)]
            rhs = [sum((rows[r][c] * xt[c] for c in range(nc)), MPoly()) for r in range(nr)]
            forced = True
        else:
            rhs = [rand_poly(rng, 4, nterms=2) for _ in range(nr)]
            forced = False
        s = solve_linear(rows, nc, rhs)
        if forced:
            assert s.particular is not None
        if s.particular is not None:
            mix = list(s.particular)
            for v in s.nullspace[:2]:
                w = rng.randint(-3, 3)
                mix = [x + w * y for x, y in zip(mix, v)]
            for r in range(nr):
                acc = RatFunc.const(0)
                for c in range(nc):
                    acc = acc + RatFunc.of(rows[r][c]) * mix[c]
                assert acc == RatFunc.of(rhs[r])
        # rank oracle at a random evaluation point
        n0 = Fraction(rng.randint(50, 10**6))
        ev = lambda p: Fraction(*map(int, (lambda q: (q.numerator, q.denominator))(p.eval_q({"N": n0, "j": 7}))))
        aq = [[ev(rows[r][c]) for c in range(nc)] for r in range(nr)]
        bq = [[*aq[r], ev(rhs[r])] for r in range(nr)]
        consistent = _naive_rank(aq) == _naive_rank(bq)
        assert consistent == (s.particular is not None), trial


def test_solver_homogeneous_nullspace():
    rng = random.Random(18)
    rows = [[rand_poly(rng, 3) for _ in range(6)] for _ in range(3)]
    s = solve_linear(rows, 6, [0] * 3)
    assert s.particular is not None
    assert len(s.nullspace) >= 3
    for v in s.nullspace:
        for r in range(3):
            acc = RatFunc.const(0)
            for c in range(6):
                acc = acc + RatFunc.of(rows[r][c]) * v[c]
            assert acc.is_zero()
