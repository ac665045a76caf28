"""Minimization of admissible linear systems.

Left and right elimination steps are solutions of exact linear systems
over the rationals; the polynomial algorithm and the general block
algorithm (with the corrected counter decrement) drive them.  Pivot
block refinement uses row/column permutations and a non-overlapping
linear ansatz; incompleteness is reported, never silent.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import (
    frac,
    identity,
    invert,
    mat,
    mat_rank,
    solve_linear,
    unit_vec,
    vec,
)
from .als import Als, LinearPencil, Transformation, apply_transformation


@dataclass(frozen=True)
class PivotStructure:
    sizes: tuple

    @property
    def m(self) -> int:
        return len(self.sizes)

    def offsets(self) -> tuple:
        off, out = 0, []
        for s in self.sizes:
            out.append(off)
            off += s
        return tuple(out)


@dataclass
class Step:
    """One executed minimization action, for traces and golden tests."""

    kind: str  # "L", "R", "X" (extended first-block elimination), "REFINE"
    k: int
    dim_before: int
    dim_after: int
    T: tuple | None = None
    U: tuple | None = None

    def __str__(self):
        if self.kind == "REFINE":
            return f"REFINE block={self.k} dim {self.dim_before}"
        return f"{self.kind} k={self.k} dim {self.dim_before}->{self.dim_after}"


def pivot_structure(f: Als) -> PivotStructure:
    """Maximal upper-block-triangular decomposition of the pencil."""
    n = f.n
    if n == 0:
        return PivotStructure(())
    boundaries = []
    for k in range(1, n):
        if all(c[i][j] == 0 for c in f.coeffs for i in range(k, n) for j in range(k)):
            boundaries.append(k)
    sizes = []
    prev = 0
    for b in boundaries + [n]:
        sizes.append(b - prev)
        prev = b
    return PivotStructure(tuple(sizes))


def _unknown_layout(nrows, ncols_t, ncols_u):
    """Index helpers for a stacked unknown vector [T entries, U entries]."""
    nt = nrows * ncols_t
    nu = nrows * ncols_u

    def t_idx(i, j):
        return i * ncols_t + j

    def u_idx(i, j):
        return nt + i * ncols_u + j

    return nt + nu, t_idx, u_idx


def left_min_step(f: Als, k: int, structure: PivotStructure | None = None):
    """Try to eliminate pivot block k via a left step; None if infeasible.

    Solves, per monomial, A_kk U + A_{k,after} + T A_{after,after} = 0
    together with v_k + T v_after = 0, where T, U live in the block row
    k against everything after it.  k = 1 forces U = 0 (admissibility);
    success there means the element is zero and the caller handles it.
    """
    st = structure or pivot_structure(f)
    sizes, offs = st.sizes, st.offsets()
    m = st.m
    assert 1 <= k <= m
    nk = sizes[k - 1]
    o = offs[k - 1]
    after = f.n - (o + nk)
    if after == 0 and k > 1:
        return None
    nvars, t_idx, u_idx = _unknown_layout(nk, after, after)
    rows, rhs = [], []
    force_u_zero = (k == 1)
    for c in f.coeffs:
        for i in range(nk):
            for j in range(after):
                row = [Fraction(0)] * nvars
                # A_kk U term
                for r in range(nk):
                    row[u_idx(r, j)] += c[o + i][o + r]
                # T A_after term
                for r in range(after):
                    row[t_idx(i, r)] += c[o + nk + r][o + nk + j]
                rows.append(row)
                rhs.append(-c[o + i][o + nk + j])
    for i in range(nk):
        row = [Fraction(0)] * nvars
        for r in range(after):
            row[t_idx(i, r)] += f.v[o + nk + r]
        rows.append(row)
        rhs.append(-f.v[o + i])
    if force_u_zero:
        for i in range(nk):
            for j in range(after):
                row = [Fraction(0)] * nvars
                row[u_idx(i, j)] = Fraction(1)
                rows.append(row)
                rhs.append(Fraction(0))
    res = solve_linear(mat(rows), vec(rhs))
    if not res.feasible:
        return None
    sol = res.particular
    T = tuple(tuple(sol[t_idx(i, j)] for j in range(after)) for i in range(nk))
    U = tuple(tuple(sol[u_idx(i, j)] for j in range(after)) for i in range(nk))
    n = f.n
    P = [[Fraction(1 if a == b else 0) for b in range(n)] for a in range(n)]
    Q = [[Fraction(1 if a == b else 0) for b in range(n)] for a in range(n)]
    for i in range(nk):
        for j in range(after):
            P[o + i][o + nk + j] = T[i][j]
            Q[o + i][o + nk + j] = U[i][j]
    g = apply_transformation(f, Transformation(mat(P), mat(Q)))
    keep = [i for i in range(n) if not (o <= i < o + nk)]
    coeffs = [[[c[i][j] for j in keep] for i in keep] for c in g.coeffs]
    v = tuple(g.v[i] for i in keep)
    reduced = Als(LinearPencil(f.alphabet, tuple(mat(c) for c in coeffs)), vec(v))
    return reduced, Step("L", k, n, reduced.n, T, U)


def right_min_step(f: Als, k: int, structure: PivotStructure | None = None):
    """Try to eliminate pivot block k via a right step; None if infeasible.

    Solves, per monomial, A_before U + A_{before,k} + T A_kk = 0 with
    the first row of U pinned to zero (Q must keep first row e_1).
    """
    st = structure or pivot_structure(f)
    sizes, offs = st.sizes, st.offsets()
    m = st.m
    assert 2 <= k <= m
    nk = sizes[k - 1]
    o = offs[k - 1]
    before = o
    nvars, t_idx, u_idx = _unknown_layout(before, nk, nk)
    rows, rhs = [], []
    for c in f.coeffs:
        for i in range(before):
            for j in range(nk):
                row = [Fraction(0)] * nvars
                for r in range(before):
                    row[u_idx(r, j)] += c[i][r]
                for r in range(nk):
                    row[t_idx(i, r)] += c[o + r][o + j]
                rows.append(row)
                rhs.append(-c[i][o + j])
    # Admissibility: Q first row stays e_1.
    for j in range(nk):
        row = [Fraction(0)] * nvars
        row[u_idx(0, j)] = Fraction(1)
        rows.append(row)
        rhs.append(Fraction(0))
    res = solve_linear(mat(rows), vec(rhs))
    if not res.feasible:
        return None
    sol = res.particular
    T = tuple(tuple(sol[t_idx(i, j)] for j in range(nk)) for i in range(before))
    U = tuple(tuple(sol[u_idx(i, j)] for j in range(nk)) for i in range(before))
    n = f.n
    P = [[Fraction(1 if a == b else 0) for b in range(n)] for a in range(n)]
    Q = [[Fraction(1 if a == b else 0) for b in range(n)] for a in range(n)]
    for i in range(before):
        for j in range(nk):
            P[i][o + j] = T[i][j]
            Q[i][o + j] = U[i][j]
    g = apply_transformation(f, Transformation(mat(P), mat(Q)))
    keep = [i for i in range(n) if not (o <= i < o + nk)]
    coeffs = [[[c[i][j] for j in keep] for i in keep] for c in g.coeffs]
    v = tuple(g.v[i] for i in keep)
    reduced = Als(LinearPencil(f.alphabet, tuple(mat(c) for c in coeffs)), vec(v))
    return reduced, Step("R", k, n, reduced.n, T, U)


def is_polynomial_shape(f: Als) -> bool:
    """Upper triangular with constant unit diagonal; empty counts."""
    if f.is_empty:
        return True
    n = f.n
    for idx, c in enumerate(f.coeffs):
        for i in range(n):
            for j in range(n):
                if j < i and c[i][j] != 0:
                    return False
                if j == i and c[i][j] != (1 if idx == 0 else 0):
                    return False
    return True


def _delete_trailing_zero_rows(f: Als):
    """Drop final rows i with row_i = e_i and v_i = 0 (s_i = 0 there)."""
    while f.n >= 2:
        n = f.n
        last_unit = all(
            c[n - 1][j] == (1 if (j == n - 1 and idx == 0) else 0)
            for idx, c in enumerate(f.coeffs) for j in range(n))
        if last_unit and f.v[n - 1] == 0:
            coeffs = [[row[:n - 1] for row in c[:n - 1]] for c in f.coeffs]
            f = Als(LinearPencil(f.alphabet, tuple(mat(c) for c in coeffs)),
                    vec(f.v[:n - 1]))
        else:
            break
    return f


def minimize_polynomial(f: Als, trace: list | None = None) -> Als:
    """Minimize a polynomial-shaped ALS; empty result means zero.

    Counter schedule: k from 2; left step at k' = n+1-k (k' = 1 success
    means the zero polynomial); else right step at k; after a success
    decrement k when k > max(2, (n+1)/2); finally concentrate v in the
    last entry.
    """
    assert is_polynomial_shape(f), "input is not a polynomial ALS"
    if f.is_empty:
        return f
    if f.n == 1:
        if f.v[0] == 0:
            return Als(LinearPencil(f.alphabet, (mat([]),) * (f.alphabet.d + 1)), ())
        return f
    trivial = None
    k = 2
    while k <= f.n:
        n = f.n
        kp = n + 1 - k
        st = PivotStructure((1,) * n)
        got = left_min_step(f, kp, st)
        if got is not None:
            if kp == 1:
                empty = Als(LinearPencil(f.alphabet, (mat([]),) * (f.alphabet.d + 1)), ())
                if trace is not None:
                    trace.append(Step("L", 1, n, 0, got[1].T, got[1].U))
                return empty
            f = got[0]
            if trace is not None:
                trace.append(got[1])
            if k > max(2, Fraction(n + 1, 2)):
                k -= 1
            continue
        if k <= n:
            got = right_min_step(f, k, st)
            if got is not None:
                f = got[0]
                if trace is not None:
                    trace.append(got[1])
                if k > max(2, Fraction(n + 1, 2)):
                    k -= 1
                continue
        k += 1
    f = _delete_trailing_zero_rows(f)
    if f.n == 1 and f.v[0] == 0:
        return Als(LinearPencil(f.alphabet, (mat([]),) * (f.alphabet.d + 1)), ())
    return standardize(f)


def _extended_first_block_elimination(f: Als, st: PivotStructure):
    """Eliminate a dependent first block via the extended-system trick.

    Solves A_11 Ubar + A_{1,rest} + T A_rest = 0 (per monomial) and
    v_1 + T v_rest = 0.  Then s_1 = Ubar s_rest, so the element is
    Ubar[0] . s_rest: zero when that row vanishes, otherwise carried by
    (e_1, A_rest W^{-1}, v_rest) where W completes Ubar[0] to an
    invertible matrix.
    """
    n1 = st.sizes[0]
    n = f.n
    rest = n - n1
    if rest == 0:
        return None
    nvars, t_idx, u_idx = _unknown_layout(n1, rest, rest)
    rows, rhs = [], []
    for c in f.coeffs:
        for i in range(n1):
            for j in range(rest):
                row = [Fraction(0)] * nvars
                for r in range(n1):
                    row[u_idx(r, j)] += c[i][r]
                for r in range(rest):
                    row[t_idx(i, r)] += c[n1 + r][n1 + j]
                rows.append(row)
                rhs.append(-c[i][n1 + j])
    for i in range(n1):
        row = [Fraction(0)] * nvars
        for r in range(rest):
            row[t_idx(i, r)] += f.v[n1 + r]
        rows.append(row)
        rhs.append(-f.v[i])
    res = solve_linear(mat(rows), vec(rhs))
    if not res.feasible:
        return None
    sol = res.particular
    u1 = tuple(sol[u_idx(0, j)] for j in range(rest))
    if all(x == 0 for x in u1):
        empty = Als(LinearPencil(f.alphabet, (mat([]),) * (f.alphabet.d + 1)), ())
        return empty, Step("X", 1, n, 0)
    # Complete u1 to an invertible W (greedy standard basis rows).
    chosen = [u1]
    for j in range(rest):
        cand = chosen + [unit_vec(rest, j)]
        if mat_rank(mat(cand)) == len(cand):
            chosen = cand
        if len(chosen) == rest:
            break
    W = mat(chosen)
    Winv = invert(W)
    assert Winv is not None
    coeffs = []
    for c in f.coeffs:
        block = mat([[c[n1 + i][n1 + j] for j in range(rest)] for i in range(rest)])
        from .linalg import mat_mul
        coeffs.append(mat_mul(block, Winv))
    v = vec(f.v[n1:])
    reduced = Als(LinearPencil(f.alphabet, tuple(coeffs)), v)
    return reduced, Step("X", 1, n, rest)


def minimize_general(f: Als, trace: list | None = None, decrement: bool = True) -> Als:
    """Block minimization over pivot blocks; assumes a refined input.

    The `decrement` flag controls the corrected counter handling after
    an extended first-block elimination (disable only to demonstrate
    the uncorrected behavior).
    """
    if f.is_empty:
        return f
    k = 2
    while True:
        st = pivot_structure(f)
        m = st.m
        if k > m or f.n <= 1:
            break
        n_before = f.n
        kp = m + 1 - k
        got = None
        if kp >= 2:
            got = left_min_step(f, kp, st)
            if got is not None:
                f = got[0]
                if trace is not None:
                    trace.append(got[1])
                if k > max(2, Fraction(m + 1, 2)):
                    k -= 1
                continue
        else:
            got = _extended_first_block_elimination(f, st)
            if got is not None:
                f = got[0]
                if trace is not None:
                    trace.append(got[1])
                if f.is_empty:
                    return f
                if decrement and k > 2:
                    k -= 1
                continue
        got = right_min_step(f, k, st)
        if got is not None:
            f = got[0]
            if trace is not None:
                trace.append(got[1])
            if k > max(2, Fraction(m + 1, 2)):
                k -= 1
            continue
        k += 1
    if f.n == 1 and f.v[0] == 0:
        return Als(LinearPencil(f.alphabet, (mat([]),) * (f.alphabet.d + 1)), ())
    return f


def _block_of(f: Als, o: int, b: int):
    """Per-monomial b x b slice at offset o."""
    return [
        [[c[o + i][o + j] for j in range(b)] for i in range(b)]
        for c in f.coeffs
    ]


def _split_by_permutation(f: Als, block_index: int, st: PivotStructure):
    """Search row/column permutations of one block for a zero corner."""
    sizes, offs = st.sizes, st.offsets()
    b = sizes[block_index - 1]
    o = offs[block_index - 1]
    if b < 2 or b > 5:
        return None
    blocks = _block_of(f, o, b)
    is_first = (block_index == 1)
    for i in range(1, b):
        # columns moved to the front (i of them), rows moved to the
        # bottom (b - i): their intersection must vanish identically.
        for cset in itertools.combinations(range(b), i):
            if is_first and 0 not in cset:
                continue
            zero_rows = [r for r in range(b)
                         if all(all(B[r][c] == 0 for c in cset) for B in blocks)]
            if len(zero_rows) < b - i:
                continue
            bottom = zero_rows[-(b - i):]
            top = [r for r in range(b) if r not in bottom]
            front = list(cset)
            back = [c for c in range(b) if c not in cset]
            rowperm = top + bottom
            colperm = front + back
            n = f.n
            P = [[Fraction(0)] * n for _ in range(n)]
            Q = [[Fraction(0)] * n for _ in range(n)]
            for a in range(n):
                P[a][a] = Fraction(1)
                Q[a][a] = Fraction(1)
            for r in range(b):
                for c in range(b):
                    P[o + r][o + c] = Fraction(1 if rowperm[r] == c else 0)
                    Q[o + r][o + c] = Fraction(1 if colperm[c] == r else 0)
            return apply_transformation(f, Transformation(mat(P), mat(Q)))
    return None


def _split_by_linear_ansatz(f: Als, block_index: int, st: PivotStructure):
    """Non-overlapping lower-left ansatz; couplings dropped to stay linear.

    Two variants per split: keep all alpha and zero out every beta
    whose quadratic partner has a nonzero coefficient, and the mirror
    image keeping all beta.
    """
    sizes, offs = st.sizes, st.offsets()
    b = sizes[block_index - 1]
    o = offs[block_index - 1]
    if b < 2:
        return None
    blocks = _block_of(f, o, b)
    nmono = len(blocks)
    for i in range(1, b):
        rows_lo = b - i  # alpha/beta live on a (b-i) x i grid
        for variant in ("alpha", "beta"):
            keep_alpha = [[True] * i for _ in range(rows_lo)]
            keep_beta = [[True] * i for _ in range(rows_lo)]
            if variant == "alpha":
                # beta_{r',c} couples with alpha_{r,j} through B[j][i+r'].
                for rp in range(rows_lo):
                    if any(blocks[mo][j][i + rp] != 0
                           for mo in range(nmono) for j in range(i)):
                        for c in range(i):
                            keep_beta[rp][c] = False
            else:
                for j in range(i):
                    if any(blocks[mo][j][i + rp] != 0
                           for mo in range(nmono) for rp in range(rows_lo)):
                        for r in range(rows_lo):
                            keep_alpha[r][j] = False
            navars = rows_lo * i
            nvars = 2 * navars

            def a_idx(r, j):
                return r * i + j

            def b_idx(r, c):
                return navars + r * i + c

            eqs, rhs = [], []
            for mo in range(nmono):
                B = blocks[mo]
                for r in range(rows_lo):
                    for c in range(i):
                        row = [Fraction(0)] * nvars
                        for j in range(i):
                            row[a_idx(r, j)] += B[j][c]
                        for rp in range(rows_lo):
                            row[b_idx(rp, c)] += B[i + r][i + rp]
                        eqs.append(row)
                        rhs.append(-B[i + r][c])
            for r in range(rows_lo):
                for j in range(i):
                    if not keep_alpha[r][j]:
                        row = [Fraction(0)] * nvars
                        row[a_idx(r, j)] = Fraction(1)
                        eqs.append(row)
                        rhs.append(Fraction(0))
                    if not keep_beta[r][j]:
                        row = [Fraction(0)] * nvars
                        row[b_idx(r, j)] = Fraction(1)
                        eqs.append(row)
                        rhs.append(Fraction(0))
            res = solve_linear(mat(eqs), vec(rhs))
            if not res.feasible:
                continue
            sol = res.particular
            # Verify the dropped couplings really vanish in P A Q.
            n = f.n
            P = [[Fraction(1 if a == c else 0) for c in range(n)] for a in range(n)]
            Q = [[Fraction(1 if a == c else 0) for c in range(n)] for a in range(n)]
            for r in range(rows_lo):
                for j in range(i):
                    P[o + i + r][o + j] = sol[a_idx(r, j)]
                    Q[o + i + r][o + j] = sol[b_idx(r, j)]
            g = apply_transformation(f, Transformation(mat(P), mat(Q)))
            ok = all(c[o + i + r][o + j] == 0
                     for c in g.coeffs for r in range(rows_lo) for j in range(i))
            if ok:
                return g
    return None


@dataclass
class RefineReport:
    status: str  # "refined-certified" | "best-effort"
    splits: list = field(default_factory=list)


def refine_pivots(f: Als) -> tuple:
    """Split pivot blocks until no simple strategy applies.

    Certification means every remaining block is size 1, or small
    enough (<= 5) that the permutation search plus both linear ansatz
    variants were exhausted without success.
    """
    report = RefineReport("refined-certified")
    if f.is_empty:
        return f, report
    changed = True
    while changed:
        changed = False
        st = pivot_structure(f)
        for k in range(1, st.m + 1):
            if st.sizes[k - 1] == 1:
                continue
            g = _split_by_permutation(f, k, st)
            if g is None:
                g = _split_by_linear_ansatz(f, k, st)
            if g is not None:
                new_st = pivot_structure(g)
                if new_st.m > st.m:
                    report.splits.append(Step("REFINE", k, f.n, g.n))
                    f = g
                    changed = True
                    break
    final = pivot_structure(f)
    for sz in final.sizes:
        if sz > 5:
            report.status = "best-effort"
    return f, report


def standardize(f: Als) -> Als:
    """Concentrate v in the last entry by row operations only."""
    if f.is_empty or f.n == 1:
        return f
    n = f.n
    v = list(f.v)
    assert any(x != 0 for x in v), "minimal nonzero system must have v != 0"
    P = [[Fraction(1 if a == c else 0) for c in range(n)] for a in range(n)]
    if v[n - 1] == 0:
        j = max(i for i in range(n) if v[i] != 0)
        P[n - 1][n - 1] = Fraction(0)
        P[j][j] = Fraction(0)
        P[n - 1][j] = Fraction(1)
        P[j][n - 1] = Fraction(1)
        from .linalg import mat_vec
        v = list(mat_vec(mat(P), vec(v)))
        base = mat(P)
    else:
        base = mat(P)
    P2 = [[Fraction(1 if a == c else 0) for c in range(n)] for a in range(n)]
    for i in range(n - 1):
        if v[i] != 0:
            P2[i][n - 1] = -v[i] / v[n - 1]
    from .linalg import mat_mul
    P_total = mat_mul(mat(P2), base)
    return apply_transformation(f, Transformation(P_total, identity(n)))


def minimize_full(f: Als, trace: list | None = None):
    """Full pipeline: polynomial algorithm or refine + general loop.

    Returns (Als, certified) where certified means the result is a
    provably minimal system.
    """
    if f.is_empty:
        return f, True
    if is_polynomial_shape(f):
        return minimize_polynomial(f, trace), True
    certified = True
    while True:
        f, report = refine_pivots(f)
        certified = report.status == "refined-certified"
        g = minimize_general(f, trace)
        if g.is_empty:
            return g, True
        if g.n == f.n:
            return g, certified
        f = g
