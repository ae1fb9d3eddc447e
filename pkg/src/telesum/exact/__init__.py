"""Exact arithmetic core: rationals, sparse multivariate polynomials,
reduced rational functions, fraction-free linear solving."""
from ._scalars import Q, as_fraction, as_q, int_gcd, q_gcd
from .linsolve import (LinearSolution, LinSolveError, solve_linear,
                       solve_linear_multi)
from .mpoly import MPoly, NVARS, SYMBOLS, VARIDX, mpoly_gcd
from .poly import dispersion_set, rational_roots
from .ratfunc import RatFunc

__all__ = [
    "Q", "as_q", "as_fraction", "int_gcd", "q_gcd",
    "MPoly", "SYMBOLS", "NVARS", "VARIDX", "mpoly_gcd",
    "rational_roots", "dispersion_set",
    "RatFunc",
    "solve_linear", "solve_linear_multi", "LinearSolution", "LinSolveError",
]
