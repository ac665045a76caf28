"""Equality of free-field elements.

The linearized word problem reduces equality of two minimal systems of
the same dimension to one exact linear solve.  A probabilistic oracle
(evaluation at random rational matrix points) backs it up whenever
minimality cannot be certified.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .linalg import mat, solve_linear, vec
from .als import Als, als_eval
from .minimize import minimize_full
from .ncpoly import random_point


@dataclass(frozen=True)
class EqualityVerdict:
    result: str  # equal-certified | unequal-certified | equal-probabilistic | unequal-witnessed
    witness: object = None

    @property
    def is_equal(self) -> bool:
        return self.result.startswith("equal")


def _word_problem_system(f: Als, g: Als):
    """T A_g - A_f U = A_f e_1^T u_g per monomial, U row 1 = 0, T v_g = v_f.

    Unknowns stacked as [T entries, U entries], both n x n.
    """
    n = f.n
    nt = n * n

    def t_idx(i, j):
        return i * n + j

    def u_idx(i, j):
        return nt + i * n + j

    rows, rhs = [], []
    for cf, cg in zip(f.coeffs, g.coeffs):
        for i in range(n):
            for j in range(n):
                row = [Fraction(0)] * (2 * nt)
                for r in range(n):
                    row[t_idx(i, r)] += cg[r][j]
                    row[u_idx(r, j)] -= cf[i][r]
                rows.append(row)
                # A_f u_f^T u_g: column 1 of A_f placed in column 1.
                rhs.append(cf[i][0] if j == 0 else Fraction(0))
    for j in range(n):
        row = [Fraction(0)] * (2 * nt)
        row[u_idx(0, j)] = Fraction(1)
        rows.append(row)
        rhs.append(Fraction(0))
    for i in range(n):
        row = [Fraction(0)] * (2 * nt)
        for r in range(n):
            row[t_idx(i, r)] += g.v[r]
        rows.append(row)
        rhs.append(f.v[i])
    return mat(rows), vec(rhs)


def equal(f: Als, g: Als, trials: int = 10, seed: int = 0) -> EqualityVerdict:
    """Exact equality when both minimizations are certified; otherwise
    the probabilistic oracle decides (tagged accordingly)."""
    assert f.alphabet == g.alphabet, "alphabet mismatch"
    fm, fcert = minimize_full(f)
    gm, gcert = minimize_full(g)
    certified = fcert and gcert
    if fm.is_empty and gm.is_empty:
        return EqualityVerdict("equal-certified")
    if fm.n != gm.n:
        if certified:
            return EqualityVerdict("unequal-certified")
        return equal_probabilistic(fm, gm, trials=trials, seed=seed)
    if not certified:
        return equal_probabilistic(fm, gm, trials=trials, seed=seed)
    M, b = _word_problem_system(fm, gm)
    res = solve_linear(M, b)
    if not res.feasible:
        return EqualityVerdict("unequal-certified")
    n = fm.n
    sol = res.particular
    T = tuple(tuple(sol[i * n + j] for j in range(n)) for i in range(n))
    U = tuple(tuple(sol[n * n + i * n + j] for j in range(n)) for i in range(n))
    return EqualityVerdict("equal-certified", witness=(T, U))


def equal_probabilistic(f: Als, g: Als, trials: int = 10, m: int | None = None,
                        seed: int = 0) -> EqualityVerdict:
    """Compare evaluations at random matrix points; one-sided exactness:
    a differing defined evaluation certifies inequality."""
    assert f.alphabet == g.alphabet, "alphabet mismatch"
    rng = random.Random(seed)
    size = m or max(f.n, g.n, 1)
    done = 0
    attempts = 0
    while done < trials and attempts < trials * 20:
        attempts += 1
        pt = random_point(f.alphabet, size, rng)
        ef = als_eval(f, pt)
        eg = als_eval(g, pt)
        if ef is None or eg is None:
            continue
        if ef != eg:
            return EqualityVerdict("unequal-witnessed", witness=pt)
        done += 1
    if done == 0:
        raise RuntimeError("inconclusive: all sampled points were singular")
    return EqualityVerdict("equal-probabilistic")


def rank(f: Als) -> int:
    """Dimension of the minimal system; 0 exactly for the zero element."""
    g, _ = minimize_full(f)
    return g.n


def is_zero(f: Als) -> bool:
    return rank(f) == 0
