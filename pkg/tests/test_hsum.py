"""Harmonic-sum algebra: evaluation oracles, S/Z conversions, quasi-shuffle
linearization, shifts, canonical equality, and infinite limits.

Reference values were frozen from the brute-force nested-loop evaluators in
this file (eval_s/eval_z are themselves direct transcriptions of the
defining sums, so they serve as the oracle for everything structural).
"""
import random

import pytest

from telesum.exact import MPoly, Q, RatFunc
from telesum.hsum import (
    ConstPoly, Expr, SingularBinding, all_vectors, eval_s, eval_z, s_to_z,
    stuffle_s, stuffle_z, z_to_s,
)
from telesum.hsum.limits import LimitError, limit_expr, limit_vec


def brute_s(v, n):
    # independent oracle: explicit nested loops, no recursion sharing
    def rec(vec, bound):
        if not vec:
            return Q(1)
        m, rest = vec[0], vec[1:]
        total = Q(0)
        for i in range(1, bound + 1):
            sgn = -1 if (m < 0 and i % 2) else 1
            total += Q(sgn, i ** abs(m)) * rec(rest, i)
        return total
    return rec(tuple(v), n)


def brute_z(v, n):
    def rec(vec, bound):
        if not vec:
            return Q(1)
        m, rest = vec[0], vec[1:]
        total = Q(0)
        for i in range(1, bound + 1):
            sgn = -1 if (m < 0 and i % 2) else 1
            total += Q(sgn, i ** abs(m)) * rec(rest, i - 1)
        return total
    return rec(tuple(v), n)


# ------------------------------------------------------------- evaluation


def test_eval_s_reference_values():
    assert eval_s((1,), 3) == Q(11, 6)
    assert eval_s((1, 1), 2) == Q(7, 4)
    assert eval_s((-2,), 2) == Q(-3, 4)
    for m in (1, -1, 2, -3):
        assert eval_s((m,), 0) == 0


def test_eval_z_reference_values():
    assert eval_z((1, 1), 2) == Q(1, 2)
    assert eval_z((1, 1), 1) == 0
    # strict double sum at 3: pairs (2,1),(3,1),(3,2); equals (S1^2-S2)/2
    assert eval_z((1, 1), 3) == Q(1)
    assert eval_z((1, 1), 3) == (eval_s((1,), 3) ** 2 - eval_s((2,), 3)) / 2
    for n in range(21):
        assert eval_z((1,), n) == eval_s((1,), n)


def test_eval_matches_independent_brute_force():
    rng = random.Random(21)
    for _ in range(25):
        v = tuple(rng.choice([1, -1, 2, -2, 3]) for _ in range(rng.randint(1, 3)))
        n = rng.randint(0, 12)
        assert eval_s(v, n) == brute_s(v, n)
        assert eval_z(v, n) == brute_z(v, n)


def test_eval_rejects_bad_vectors():
    with pytest.raises(ValueError):
        Expr.harmonic((), ["N"])
    with pytest.raises(ValueError):
        Expr.harmonic((1, 0), ["N"])


def test_depth_exceeding_bound_is_zero():
    for v in all_vectors(4):
        for n in range(len(v)):
            assert eval_z(v, n) == 0


# ------------------------------------------------------------ conversions


def test_s_to_z_examples():
    assert dict((u, c) for c, u in s_to_z((1, 1))) == {(1, 1): 1, (2,): 1}
    assert dict((u, c) for c, u in z_to_s((1, 1))) == {(1, 1): 1, (2,): -1}
    assert s_to_z((1,)) == ((1, (1,)),)


def test_conversions_agree_with_evaluation():
    for v in all_vectors(4):
        for n in (0, 1, 2, 3, 5, 8, 13, 25):
            assert eval_s(v, n) == sum(c * eval_z(u, n) for c, u in s_to_z(v))
            assert eval_z(v, n) == sum(c * eval_s(u, n) for c, u in z_to_s(v))


def test_conversions_are_mutually_inverse():
    for v in all_vectors(4):
        back = {}
        for c, u in s_to_z(v):
            for c2, w in z_to_s(u):
                back[w] = back.get(w, 0) + c * c2
        assert {w: c for w, c in back.items() if c} == {v: 1}


# ------------------------------------------------------------ quasi-shuffle


def test_stuffle_euler_relation():
    assert dict((u, c) for c, u in stuffle_s((1,), (1,))) == {(1, 1): 2, (2,): -1}
    assert dict((u, c) for c, u in stuffle_s((1,), (2,))) == \
        {(1, 2): 1, (2, 1): 1, (3,): -1}


def test_stuffle_is_a_homomorphism():
    rng = random.Random(22)
    vecs = [v for v in all_vectors(4) if len(v) <= 3]
    for _ in range(50):
        a = rng.choice(vecs)
        b = rng.choice(vecs)
        n = rng.randint(0, 20)
        prod_s = sum(c * eval_s(u, n) for c, u in stuffle_s(a, b))
        assert prod_s == eval_s(a, n) * eval_s(b, n)
        prod_z = sum(c * eval_z(u, n) for c, u in stuffle_z(a, b))
        assert prod_z == eval_z(a, n) * eval_z(b, n)


# ------------------------------------------------------ expression algebra


def S(vec, syms, off=0):
    return Expr.harmonic(vec, syms, off)


def test_linearize_same_argument():
    e = (S((1,), ["N"]) * S((1,), ["N"])).linearize()
    assert e == 2 * S((1, 1), ["N"]) - S((2,), ["N"])
    e2 = (S((1,), ["N"]) * S((2,), ["N"])).linearize()
    assert e2 == S((1, 2), ["N"]) + S((2, 1), ["N"]) - S((3,), ["N"])
    assert (S((1,), ["N"]) * Expr.one()).linearize() == S((1,), ["N"])


def test_linearize_keeps_mixed_arguments():
    e = (S((1,), ["i"]) * S((1,), ["i", "N"])).linearize()
    (key,) = e.terms
    assert len(key[2]) == 2  # two sum factors with distinct bases survive


def test_linearize_homomorphism_randomized():
    rng = random.Random(23)
    vecs = [v for v in all_vectors(4) if len(v) <= 3]
    for _ in range(50):
        a, b = rng.choice(vecs), rng.choice(vecs)
        n = rng.randint(0, 20)
        lhs = (S(a, ["N"]) * S(b, ["N"])).linearize().eval_expr({"N": n})
        assert lhs.rational_value() == eval_s(a, n) * eval_s(b, n)


def test_shift_examples():
    N1 = RatFunc(MPoly.const(1), MPoly.var("N") + 1)
    assert S((1,), ["N"]).shift_arg("N", 1) == S((1,), ["N"]) + Expr.coeff(N1)
    jn1 = RatFunc(MPoly.const(1), (MPoly.var("j") + MPoly.var("N") + 1) ** 2)
    assert S((2,), ["j", "N"]).shift_arg("j", 1) == S((2,), ["j", "N"]) + Expr.coeff(jn1)
    # S_{-2}(N+1) = S_{-2}(N) + (-1)^(N+1)/(N+1)^2
    n1sq = RatFunc(MPoly.const(-1), (MPoly.var("N") + 1) ** 2)
    assert S((-2,), ["N"]).shift_arg("N", 1) == \
        S((-2,), ["N"]) + Expr.coeff(n1sq) * Expr.sign(["N"])


def test_shift_round_trip_is_canonical_identity():
    e = (S((1, -2), ["N"]) * Expr.factorial(["N"], 1, -1)
         + Expr.const("zeta2") * Expr.sign(["N"]) * S((2,), ["N"], 2)
         + Expr.coeff(RatFunc(MPoly.const(1), MPoly.var("N") + 2)))
    assert e.shift_arg("N", 1).shift_arg("N", -1) == e
    assert e.shift_arg("N", 3).shift_arg("N", -3) == e


def test_shift_agrees_with_evaluation():
    rng = random.Random(24)
    e = S((1, 2), ["N"]) * Expr.sign(["N"]) + S((-1,), ["N"]) * Expr.factorial(["N"], 0, -1)
    for d in (-2, -1, 1, 2, 5):
        sh = e.shift_arg("N", d)
        for _ in range(5):
            n = rng.randint(max(0, -d), max(0, -d) + 8)
            assert sh.eval_expr({"N": n}) == e.eval_expr({"N": n + d})


def test_offset_cap_enforced():
    with pytest.raises(ValueError):
        S((1,), ["N"], 65)
    with pytest.raises(ValueError):
        S((1,), ["N"]).shift_arg("N", 100)


def test_canonical_negation_cancels():
    e = (S((1, -2), ["N", "j"]) * Expr.const("zeta3")
         + Expr.factorial(["N"]) * Expr.sign(["N"], 1))
    assert (e + (-e)).is_zero()
    assert (e - e).terms == {}


def test_integer_arguments_fold_to_rationals():
    assert S((1,), [], 3) == Expr.coeff(Q(11, 6))
    assert Expr.factorial([], 4) == Expr.coeff(24)
    assert S((1,), ["N"], 0).substitute_int("N", 3) == Expr.coeff(Q(11, 6))


def test_eval_expr_polynomial_in_constants():
    e = S((3,), ["N"]) * Expr.const("zeta3") + Expr.coeff(RatFunc(
        MPoly.const(1), MPoly.var("N") + 2))
    v = e.eval_expr({"N": 1})
    assert v.coeff_of((("zeta3", 1),)) == Q(1)
    assert v.coeff_of(()) == Q(1, 3)
    assert Expr.zero().eval_expr({"N": 5}).is_zero()


def test_eval_expr_singular_binding_reported():
    e = Expr.coeff(RatFunc(MPoly.const(1), MPoly.var("N"))) * S((1,), ["N"])
    with pytest.raises(SingularBinding):
        e.eval_expr({"N": 0})


def test_z_family_constructor_matches_strict_eval():
    e = Expr.harmonic((1, 1), ["N"], family="Z")
    for n in range(8):
        assert e.eval_expr({"N": n}).rational_value() == eval_z((1, 1), n)


# ------------------------------------------------------------------ limits


def test_limit_single_sums():
    assert limit_vec((2,)) == ConstPoly.zeta(2)
    assert limit_vec((3,)) == ConstPoly.zeta(3)
    assert limit_vec((-1,)) == -ConstPoly.symbol("ln2")
    assert limit_vec((-2,)) == ConstPoly.zeta(2) * Q(-1, 2)
    assert limit_vec((1,)) == ConstPoly.symbol("sigma1")


def test_limit_divergent_sums_regularize_through_sigma1():
    s1 = ConstPoly.symbol("sigma1")
    z2 = ConstPoly.zeta(2)
    z3 = ConstPoly.zeta(3)
    assert limit_vec((1, 1)) == (s1 * s1 + z2) * Q(1, 2)
    assert limit_vec((1, 2)) == s1 * z2 - z3
    assert limit_vec((1, 1, 1)) == \
        s1 * s1 * s1 * Q(1, 6) + s1 * z2 * Q(1, 2) + z3 * Q(1, 3)


def test_limit_weight_four_table():
    # the constant in the double-sum closed form at N=0
    v = limit_vec((2, 1, 1)) * 2 - limit_vec((2, 2))
    assert v == ConstPoly.zeta(2) * ConstPoly.zeta(2) * Q(17, 10)


def test_limit_expr_factorial_decay():
    e = (Expr.factorial(["j"]) * Expr.factorial(["N"])
         * Expr.factorial(["j", "N"], 1, -1) * S((1,), ["j"]))
    assert limit_expr(e, "j").is_zero()


def test_limit_expr_rational_prefactor():
    j = MPoly.var("j")
    e = Expr.coeff(RatFunc(j, j + 1)) * S((2,), ["j"])
    assert limit_expr(e, "j") == Expr.const("zeta2")
    # argument shifted by another symbol has the same limit
    assert limit_expr(S((1,), ["j", "N"]) - S((1,), ["j"]), "j").is_zero()


def test_limit_expr_errors():
    with pytest.raises(LimitError):
        limit_expr(Expr.coeff(RatFunc.of(MPoly.var("j"))), "j")
    with pytest.raises(LimitError):
        limit_expr(Expr.sign(["j"]), "j")
    with pytest.raises(LimitError):
        limit_expr(Expr.factorial(["j"]), "j")
    with pytest.raises(LimitError):
        limit_vec((-2, 1))
