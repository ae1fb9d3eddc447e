"""Nested harmonic sum algebra: exact evaluation, S/Z conversion,
quasi-shuffle products, shift relations, and the canonical expression type."""
from .constants import ConstPoly
from .expr import Expr, SingularBinding, OFFSET_CAP
from .vectors import (
    DEPTH_CAP, WEIGHT_CAP, all_vectors, as_vec, depth, eval_s, eval_z, join,
    s_to_z, stuffle_s, stuffle_z, weight, z_to_s,
)

__all__ = [
    "ConstPoly", "Expr", "SingularBinding", "OFFSET_CAP",
    "as_vec", "weight", "depth", "join", "eval_s", "eval_z",
    "stuffle_s", "stuffle_z", "s_to_z", "z_to_s", "all_vectors",
    "WEIGHT_CAP", "DEPTH_CAP",
]
