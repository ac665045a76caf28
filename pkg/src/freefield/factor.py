"""Polynomial factorization in the free algebra.

A factorization of a standard polynomial system of dimension n into
factors of dimensions n1 and n2 = n + 1 - n1 corresponds to an upper
right zero block of size (n1 - 1) x (n2 - 1) reachable by a
polynomial factorization transformation.  The search is staged:
rows-only and columns-only ansatzes are linear; dimension 3 admits an
exact quadratic closure and dimension 4 a complete bilinear solve;
larger systems get bounded alternation and honest "heuristic" labels
on failures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .linalg import identity, mat, solve_linear, unit_vec, vec
from .als import Als, LinearPencil, Transformation, als_mul_type1, apply_transformation
from .minimize import is_polynomial_shape, minimize_polynomial


@dataclass(frozen=True)
class Factorization:
    factors: tuple
    certified: bool


def poly_mul_minimal(p: Als, q: Als) -> Als:
    """Product of two minimal polynomial systems, dimension n_p + n_q - 1.

    Minimality of the output is guaranteed by construction; no
    re-minimization happens here.
    """
    assert is_polynomial_shape(p) and is_polynomial_shape(q), "shape violation"
    assert p.n >= 2 and q.n >= 2, "scalar operands are rejected"
    return als_mul_type1(p, q)


def _standard_poly(p: Als) -> Als:
    assert is_polynomial_shape(p), "non-polynomial input"
    return minimize_polynomial(p)


def _apply_pq(p: Als, alpha: dict, beta: dict) -> Als:
    n = p.n
    P = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    Q = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for (i, j), val in alpha.items():
        P[i][j] = val
    for (i, j), val in beta.items():
        Q[i][j] = val
    return apply_transformation(p, Transformation(mat(P), mat(Q)))


def _block_zero(g: Als, n1: int) -> bool:
    n = g.n
    return all(c[r][col] == 0 for c in g.coeffs
               for r in range(n1 - 1) for col in range(n1, n))


def _alpha_sites(n: int, n1: int):
    # P upper unitriangular with last column zero above the diagonal;
    # only rows above the split affect the target block.
    return [(r, j) for r in range(n1 - 1) for j in range(r + 1, n - 1)]


def _beta_sites(n: int, n1: int):
    # Q unitriangular with first row/column e_1; only target columns
    # matter.
    return [(j, c) for c in range(n1, n) for j in range(1, c)]


def _solve_alpha(p: Als, n1: int, beta: dict):
    """Zero the block by rows only, with the given beta frozen."""
    g = _apply_pq(p, {}, beta) if beta else p
    n = p.n
    sites = _alpha_sites(n, n1)
    idx = {s: i for i, s in enumerate(sites)}
    rows, rhs = [], []
    for c in g.coeffs:
        for r in range(n1 - 1):
            for col in range(n1, n):
                row = [Fraction(0)] * len(sites)
                for j in range(r + 1, n - 1):
                    row[idx[(r, j)]] += c[j][col]
                rows.append(row)
                rhs.append(-c[r][col])
    res = solve_linear(mat(rows), vec(rhs))
    if not res.feasible:
        return None
    return {s: res.particular[i] for s, i in idx.items()}


def _solve_beta(p: Als, n1: int, alpha: dict):
    """Zero the block by columns only, with the given alpha frozen."""
    g = _apply_pq(p, alpha, {}) if alpha else p
    n = p.n
    sites = _beta_sites(n, n1)
    idx = {s: i for i, s in enumerate(sites)}
    rows, rhs = [], []
    for c in g.coeffs:
        for r in range(n1 - 1):
            for col in range(n1, n):
                row = [Fraction(0)] * len(sites)
                for j in range(1, col):
                    row[idx[(j, col)]] += c[r][j]
                rows.append(row)
                rhs.append(-c[r][col])
    res = solve_linear(mat(rows), vec(rhs))
    if not res.feasible:
        return None
    return {s: res.particular[i] for s, i in idx.items()}


def _sqrt_fraction(x: Fraction):
    if x < 0:
        return None
    num, den = x.numerator, x.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def _split_dim3(p: Als):
    """Exact split decision for dimension 3 (split at n1 = 2).

    With P = I + a E_12 and Q = I + b E_23, the letter equations are
    linear in (a, b) and only the constant equation carries the a*b
    term; every case of the affine solution set reduces to a rational
    quadratic, so not-found here is a certified atom claim.
    """
    A0 = p.coeffs[0]
    rows, rhs = [], []
    for c in p.coeffs[1:]:
        rows.append((c[1][2], c[0][1]))
        rhs.append(-c[0][2])
    res = solve_linear(mat(rows), vec(rhs))
    if not res.feasible:
        return None

    def const_ok(a, b):
        return A0[0][2] + a * A0[1][2] + b * A0[0][1] + a * b == 0

    a0, b0 = res.particular
    if not res.nullspace:
        return (a0, b0) if const_ok(a0, b0) else None
    if len(res.nullspace) == 1:
        da, db = res.nullspace[0]
        # constant equation as a quadratic in the parameter t
        c2 = da * db
        c1 = da * A0[1][2] + db * A0[0][1] + a0 * db + b0 * da
        c0 = A0[0][2] + a0 * A0[1][2] + b0 * A0[0][1] + a0 * b0
        if c2 == 0:
            if c1 != 0:
                t = -c0 / c1
                return (a0 + da * t, b0 + db * t)
            return (a0, b0) if c0 == 0 else None
        disc = c1 * c1 - 4 * c2 * c0
        root = _sqrt_fraction(disc)
        if root is None:
            return None
        t = (-c1 + root) / (2 * c2)
        return (a0 + da * t, b0 + db * t)
    # Both unknowns free: (a + A0[0][1])(b + A0[1][2]) = A0[0][1]*A0[1][2] - A0[0][2]
    target = A0[0][1] * A0[1][2] - A0[0][2]
    if target == 0:
        return (-A0[0][1], Fraction(0) if A0[0][1] == 0 else -A0[1][2])
    a = Fraction(1) - A0[0][1] if A0[0][1] == -1 else Fraction(0)
    while a + A0[0][1] == 0:
        a += 1
    b = target / (a + A0[0][1]) - A0[1][2]
    return (a, b)


def _read_off(g: Als, n1: int):
    """Split a zero-blocked system into its two polynomial factors."""
    n = g.n
    a = g.alphabet
    lam = g.v[n - 1]
    q1_coeffs = [[[c[i][j] for j in range(n1)] for i in range(n1)] for c in g.coeffs]
    q1 = Als(LinearPencil(a, tuple(mat(c) for c in q1_coeffs)), unit_vec(n1, n1 - 1))
    n2 = n - n1 + 1
    q2_coeffs = []
    for idx, c in enumerate(g.coeffs):
        block = [[Fraction(0)] * n2 for _ in range(n2)]
        if idx == 0:
            block[0][0] = Fraction(1)
        for j in range(1, n2):
            block[0][j] = c[n1 - 1][n1 - 1 + j]
        for i in range(1, n2):
            for j in range(1, n2):
                block[i][j] = c[n1 - 1 + i][n1 - 1 + j]
        q2_coeffs.append(block)
    v2 = [Fraction(0)] * n2
    v2[n2 - 1] = lam
    q2 = Als(LinearPencil(a, tuple(mat(c) for c in q2_coeffs)), vec(v2))
    q1 = minimize_polynomial(q1)
    q2 = minimize_polynomial(q2)
    # the unit between the factors is free; pin it so the left factor
    # has leading coefficient 1 in length-lex order
    from .als import als_expand, als_scale
    from .ncpoly import word_key
    terms = als_expand(q1, q1.n).terms.terms
    lead = terms[min(terms, key=word_key)]
    if lead != 1:
        q1 = als_scale(q1, 1 / lead)
        q2 = als_scale(q2, lead)
    return q1, q2


def _split_exact_small(p: Als, n1: int):
    """Complete search for dimension 4 via an exact polynomial solve.

    The zero-block conditions form a bilinear system in at most five
    unknowns; solving it completely makes a miss a certificate.
    Returns (alpha, beta) dicts or None.
    """
    import sympy

    n = p.n
    asites = _alpha_sites(n, n1)
    bsites = _beta_sites(n, n1)
    avars = {s: sympy.Symbol(f"a_{s[0]}_{s[1]}") for s in asites}
    bvars = {s: sympy.Symbol(f"b_{s[0]}_{s[1]}") for s in bsites}
    eqs = []
    for c in p.coeffs:
        for r in range(n1 - 1):
            for col in range(n1, n):
                expr = sympy.Integer(0)
                for i in range(n):
                    pri = avars.get((r, i), sympy.Integer(1) if i == r else 0)
                    if pri == 0:
                        continue
                    for j in range(n):
                        if c[i][j] == 0:
                            continue
                        qjc = bvars.get((j, col), sympy.Integer(1) if j == col else 0)
                        if qjc == 0:
                            continue
                        expr += pri * sympy.Rational(c[i][j]) * qjc
                eqs.append(expr)
    unknowns = list(avars.values()) + list(bvars.values())
    try:
        sols = sympy.solve(eqs, unknowns, dict=True)
    except Exception:
        return None
    for sol in sols:
        # a positive-dimensional solution set keeps free symbols around;
        # any rational fill of those still solves the system
        for fill in (0, 1, -1, 2):
            vals = {}
            ok = True
            for v in unknowns:
                x = sol.get(v, sympy.Integer(fill))
                x = sympy.simplify(x.subs({w: sympy.Integer(fill)
                                           for w in x.free_symbols}))
                if not x.is_rational:
                    ok = False
                    break
                x = sympy.Rational(x)
                vals[v] = Fraction(x.p, x.q)
            if not ok:
                continue
            alpha = {s: vals[avars[s]] for s in asites}
            beta = {s: vals[bvars[s]] for s in bsites}
            g = _apply_pq(p, alpha, beta)
            if _block_zero(g, n1):
                return alpha, beta
    return None


def factor_split(p: Als, n1: int):
    """Split a polynomial of rank n into factors of ranks n1, n+1-n1.

    Returns (q1, q2) or a miss (None, certified) where certified=True
    means the miss is a proof (complete search; dimensions 3 and 4).
    """
    p = _standard_poly(p)
    n = p.n
    assert n >= 3 and 2 <= n1 <= n - 1, "split parameters out of range"
    if n == 3:
        sol = _split_dim3(p)
        if sol is None:
            return None, True
        g = _apply_pq(p, {(0, 1): sol[0]}, {(1, 2): sol[1]})
        assert _block_zero(g, 2)
        return _read_off(g, 2), True
    if n == 4:
        got = _split_exact_small(p, n1)
        if got is None:
            return None, True
        g = _apply_pq(p, got[0], got[1])
        return _read_off(g, n1), True
    alpha = _solve_alpha(p, n1, {})
    if alpha is not None:
        g = _apply_pq(p, alpha, {})
        if _block_zero(g, n1):
            return _read_off(g, n1), True
    beta = _solve_beta(p, n1, {})
    if beta is not None:
        g = _apply_pq(p, {}, beta)
        if _block_zero(g, n1):
            return _read_off(g, n1), True
    # Bounded alternation from both startpoints.
    for first in ("alpha", "beta"):
        cur_alpha, cur_beta = {}, {}
        order = ("alpha", "beta") if first == "alpha" else ("beta", "alpha")
        for _ in range(8):
            progressed = False
            for side in order:
                if side == "alpha":
                    got = _solve_alpha(p, n1, cur_beta)
                    if got is not None:
                        cur_alpha = got
                        progressed = True
                else:
                    got = _solve_beta(p, n1, cur_alpha)
                    if got is not None:
                        cur_beta = got
                        progressed = True
                g = _apply_pq(p, cur_alpha, cur_beta)
                if _block_zero(g, n1):
                    return _read_off(g, n1), True
            if not progressed:
                break
    return None, False


def factorize_atoms(p: Als) -> Factorization:
    """Recursive leftmost smallest-rank-first factorization into atoms."""
    p = _standard_poly(p)
    n = p.n
    assert n >= 2, "rank must be at least 2"
    if n == 2:
        return Factorization((p,), True)
    misses_certified = True
    for n1 in range(2, n):
        got, certified = factor_split(p, n1)
        if got is not None:
            q1, q2 = got
            left = factorize_atoms(q1)
            right = factorize_atoms(q2)
            return Factorization(left.factors + right.factors,
                                 left.certified and right.certified)
        misses_certified = misses_certified and certified
    # No split found at any position: atom relative to the search.
    return Factorization((p,), misses_certified)


def verify_factorization(p: Als, f: Factorization) -> bool:
    """Fold the minimal product over the factors and compare with p."""
    from .wordproblem import equal
    if not f.factors:
        return False
    acc = f.factors[0]
    for q in f.factors[1:]:
        acc = poly_mul_minimal(acc, q)
    p = _standard_poly(p)
    if sum(q.n - 1 for q in f.factors) + 1 != p.n:
        return False
    return equal(acc, p).is_equal
