"""Exact arithmetic for noncommutative rational functions.

Elements of the free field are carried as admissible linear systems
(u, A, v) with u = e_1 and A a full linear pencil over Q.  The package
provides construction, minimization, equality testing, inversion and
polynomial factorization, plus two independent verification oracles
(series expansion and evaluation at rational matrix points).
"""

from .linalg import LinSolveResult, solve_linear, invert
from .ncpoly import Alphabet, NcPoly, MatrixPoint, hankel_rank
from .als import (
    Als,
    LinearPencil,
    Transformation,
    als_monomial,
    als_from_poly,
    als_scalar,
    als_scale,
    als_add,
    als_mul,
    als_inv,
    als_mul_type1,
    detect_type,
    canonicalize_for_inverse,
    minimal_inverse,
    apply_transformation,
    als_expand,
    als_eval,
    is_full_probabilistic,
)
from .minimize import (
    pivot_structure,
    left_min_step,
    right_min_step,
    minimize_polynomial,
    minimize_general,
    minimize_full,
    refine_pivots,
    standardize,
)
from .wordproblem import equal, equal_probabilistic, rank, is_zero
from .factor import poly_mul_minimal, factor_split, factorize_atoms, verify_factorization
from .expr import parse, build, Session

__all__ = [name for name in dir() if not name.startswith("_")]
