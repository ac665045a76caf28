"""Admissible linear systems: the carrier of free-field elements.

An ALS is a triple (u, A, v) with u = e_1 and A an invertible linear
pencil A_0 + A_1 x_1 + ... + A_d x_d over the rationals.  The element
represented is the first component of the solution of A s = v.  The
zero element gets the distinguished empty system of dimension 0.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .linalg import (
    Mat,
    Vec,
    frac,
    identity,
    invert,
    mat,
    mat_mul,
    mat_vec,
    solve_linear,
    unit_vec,
    vec,
    vec_mat,
    zeros,
)
from .ncpoly import Alphabet, MatrixPoint, NcPoly, Word, random_point


@dataclass(frozen=True)
class LinearPencil:
    """A_0 + A_1 x_1 + ... + A_d x_d with square rational coefficients."""

    alphabet: Alphabet
    coeffs: tuple  # coeffs[0] = constant part, coeffs[l] = letter l-1

    def __post_init__(self):
        assert len(self.coeffs) == self.alphabet.d + 1
        n = self.n
        for c in self.coeffs:
            assert len(c) == n and all(len(row) == n for row in c)

    @property
    def n(self) -> int:
        return len(self.coeffs[0])

    def entry(self, i: int, j: int) -> tuple:
        """All coefficients of the affine entry (i, j)."""
        return tuple(c[i][j] for c in self.coeffs)

    def entry_is_zero(self, i: int, j: int) -> bool:
        return all(c[i][j] == 0 for c in self.coeffs)

    def at_point(self, pt: MatrixPoint) -> Mat:
        """Blow up to the nm x nm rational matrix A(pt)."""
        n, m = self.n, pt.m
        big = [[Fraction(0)] * (n * m) for _ in range(n * m)]
        subs = (identity(m),) + pt.matrices
        for c, s in zip(self.coeffs, subs):
            for i in range(n):
                for j in range(n):
                    lam = c[i][j]
                    if lam == 0:
                        continue
                    for a in range(m):
                        for b in range(m):
                            big[i * m + a][j * m + b] += lam * s[a][b]
        return tuple(tuple(row) for row in big)


@dataclass(frozen=True)
class Als:
    """(e_1, A, v); empty (n = 0) represents the zero element."""

    pencil: LinearPencil
    v: Vec

    def __post_init__(self):
        assert len(self.v) == self.pencil.n

    @property
    def alphabet(self) -> Alphabet:
        return self.pencil.alphabet

    @property
    def n(self) -> int:
        return self.pencil.n

    @property
    def is_empty(self) -> bool:
        return self.n == 0

    @property
    def coeffs(self) -> tuple:
        return self.pencil.coeffs

    def pretty(self) -> str:
        if self.is_empty:
            return "(,,)  [zero]"
        names = self.alphabet.letters
        lines = []
        for i in range(self.n):
            cells = []
            for j in range(self.n):
                parts = []
                c0 = self.coeffs[0][i][j]
                if c0 != 0:
                    parts.append(_fmt(c0))
                for l, name in enumerate(names):
                    cl = self.coeffs[l + 1][i][j]
                    if cl == 0:
                        continue
                    if cl == 1:
                        parts.append(name)
                    elif cl == -1:
                        parts.append("-" + name)
                    else:
                        parts.append(f"{_fmt(cl)}*{name}")
                s = parts[0] if parts else "."
                for p in parts[1:]:
                    s += ("+" + p) if not p.startswith("-") else p
                cells.append(s)
            lines.append("[ " + "  ".join(c.rjust(8) for c in cells) + " ]"
                         + (f"  | {_fmt(self.v[i])}"))
        return "\n".join(lines)


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class LinearRepresentation:
    """General (u, A, v); transient (extended systems, arbitrary u)."""

    u: Vec
    pencil: LinearPencil
    v: Vec


@dataclass(frozen=True)
class Transformation:
    """Invertible pair (P, Q); admissible when Q's first row is e_1."""

    P: Mat
    Q: Mat

    @property
    def is_admissible(self) -> bool:
        n = len(self.Q)
        return tuple(self.Q[0]) == unit_vec(n, 0)


@dataclass(frozen=True)
class ElementType:
    left: bool   # 1 in the span of the left family
    right: bool  # 1 in the span of the right family

    def __str__(self):
        return f"({int(self.right)},{int(self.left)})"


@dataclass(frozen=True)
class TruncatedSeries:
    terms: NcPoly
    bound: int


def _make(alphabet: Alphabet, coeffs, v) -> Als:
    return Als(LinearPencil(alphabet, tuple(mat(c) for c in coeffs)), vec(v))


def als_empty(a: Alphabet) -> Als:
    return _make(a, [()] * (a.d + 1), ())


def als_scalar(a: Alphabet, lam) -> Als:
    lam = frac(lam)
    if lam == 0:
        return als_empty(a)
    coeffs = [[[1]]] + [[[0]] for _ in range(a.d)]
    return _make(a, coeffs, [lam])


def als_monomial(a: Alphabet, w: Word) -> Als:
    """Minimal bidiagonal system for a word; dimension len(w) + 1."""
    n = len(w) + 1
    coeffs = [[[Fraction(0)] * n for _ in range(n)] for _ in range(a.d + 1)]
    for i in range(n):
        coeffs[0][i][i] = Fraction(1)
    for i, letter in enumerate(w):
        coeffs[letter + 1][i][i + 1] = Fraction(-1)
    return _make(a, coeffs, unit_vec(n, n - 1))


def als_from_poly(p: NcPoly) -> Als:
    """Polynomial to ALS by monomial sums; caller minimizes afterwards."""
    if p.is_zero:
        return als_empty(p.alphabet)
    from .ncpoly import word_key
    result = None
    for w in sorted(p.terms, key=word_key):
        term = als_scale(als_monomial(p.alphabet, w), p.terms[w])
        result = term if result is None else als_add(result, term)
    return result


def als_scale(f: Als, mu) -> Als:
    mu = frac(mu)
    assert mu != 0, "scale by zero must short-circuit to the empty system"
    if f.is_empty:
        return f
    return Als(f.pencil, tuple(mu * x for x in f.v))


def als_add(f: Als, g: Als) -> Als:
    assert f.alphabet == g.alphabet, "alphabet mismatch"
    if f.is_empty:
        return g
    if g.is_empty:
        return f
    nf, ng, n = f.n, g.n, f.n + g.n
    coeffs = []
    for cf, cg in zip(f.coeffs, g.coeffs):
        c = [[Fraction(0)] * n for _ in range(n)]
        for i in range(nf):
            for j in range(nf):
                c[i][j] = cf[i][j]
        # -A_f u_f^T u_g: minus the first column of A_f placed in the
        # first column of the g-block.
        for i in range(nf):
            c[i][nf] = -cf[i][0]
        for i in range(ng):
            for j in range(ng):
                c[nf + i][nf + j] = cg[i][j]
        coeffs.append(c)
    return _make(f.alphabet, coeffs, tuple(f.v) + tuple(g.v))


def als_mul(f: Als, g: Als) -> Als:
    assert f.alphabet == g.alphabet, "alphabet mismatch"
    if f.is_empty or g.is_empty:
        return als_empty(f.alphabet)
    nf, ng, n = f.n, g.n, f.n + g.n
    coeffs = []
    for idx, (cf, cg) in enumerate(zip(f.coeffs, g.coeffs)):
        c = [[Fraction(0)] * n for _ in range(n)]
        for i in range(nf):
            for j in range(nf):
                c[i][j] = cf[i][j]
        if idx == 0:
            # -v_f u_g: constant block only.
            for i in range(nf):
                c[i][nf] = -f.v[i]
        for i in range(ng):
            for j in range(ng):
                c[nf + i][nf + j] = cg[i][j]
        coeffs.append(c)
    v = (Fraction(0),) * nf + tuple(g.v)
    return _make(f.alphabet, coeffs, v)


def als_inv(f: Als) -> Als:
    """Rational-operations inverse, dimension n + 1.

    The block construction [[-v, A],[0, u]] is normalized back to
    u = e_1 by reversing rows 1..n, reversing columns 2..n+1 and
    negating rows 1..n.
    """
    assert not f.is_empty, "cannot invert the zero element"
    n = f.n
    coeffs = []
    for idx, cf in enumerate(f.coeffs):
        c = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
        for i in range(n):
            if idx == 0:
                c[i][0] = -f.v[i]
            for j in range(n):
                c[i][j + 1] = cf[i][j]
        if idx == 0:
            c[n][1] = Fraction(1)  # bottom row [0, u_f] with u_f = e_1
        # Normalize: reverse rows 0..n-1, reverse columns 1..n, negate
        # rows 0..n-1.
        c = [c[n - 1 - i] if i < n else c[i] for i in range(n + 1)]
        c = [[row[0]] + [row[n - j] for j in range(n)] for row in c]
        c = [[-x for x in row] if i < n else row for i, row in enumerate(c)]
        coeffs.append(c)
    return _make(f.alphabet, coeffs, unit_vec(n + 1, n))


def als_mul_type1(f: Als, g: Als) -> Als:
    """Product f*g of dimension n_f + n_g - 1.

    Requires v_f = lambda_f e_n and g with first column e_1 (constant
    1 on top, zeros below, no letter contribution).
    """
    assert f.alphabet == g.alphabet
    nf, ng = f.n, g.n
    assert nf >= 1 and ng >= 2, "shape error: operands too small"
    assert all(x == 0 for x in f.v[:-1]) and f.v[-1] != 0, \
        "shape error: v_f must be concentrated in the last entry"
    assert g.coeffs[0][0][0] == 1 and all(g.coeffs[0][i][0] == 0 for i in range(1, ng)) \
        and all(c[i][0] == 0 for c in g.coeffs[1:] for i in range(ng)), \
        "shape error: first column of g must be constant e_1"
    lam_f = f.v[-1]
    n = nf + ng - 1
    coeffs = []
    for cf, cg in zip(f.coeffs, g.coeffs):
        c = [[Fraction(0)] * n for _ in range(n)]
        for i in range(nf):
            for j in range(nf):
                c[i][j] = cf[i][j]
        # Row n_f picks up lambda_f times the tail of g's first row.
        for j in range(1, ng):
            c[nf - 1][nf - 1 + j] = lam_f * cg[0][j]
        for i in range(1, ng):
            for j in range(1, ng):
                c[nf - 1 + i][nf - 1 + j] = cg[i][j]
        coeffs.append(c)
    v = (Fraction(0),) * nf + tuple(g.v[1:])
    return _make(f.alphabet, coeffs, v)


def _right_vector(f: Als):
    """q with A_l q = 0 for all letters and q_1 = 1, or None."""
    n, d = f.n, f.alphabet.d
    rows = []
    rhs = []
    for c in f.coeffs[1:]:
        for i in range(n):
            rows.append(c[i])
            rhs.append(Fraction(0))
    rows.append(unit_vec(n, 0))
    rhs.append(Fraction(1))
    res = solve_linear(mat(rows), vec(rhs))
    return res.particular if res.feasible else None


def _left_vector(f: Als):
    """p with p A_l = 0 for all letters and p . v = 1, or None."""
    n = f.n
    rows = []
    rhs = []
    for c in f.coeffs[1:]:
        for j in range(n):
            rows.append(tuple(c[i][j] for i in range(n)))
            rhs.append(Fraction(0))
    rows.append(f.v)
    rhs.append(Fraction(1))
    res = solve_linear(mat(rows), vec(rhs))
    return res.particular if res.feasible else None


def detect_type(f: Als) -> ElementType:
    """Element type of a minimal system: is 1 in the right/left span."""
    assert not f.is_empty
    return ElementType(left=_left_vector(f) is not None,
                       right=_right_vector(f) is not None)


def apply_transformation(r, t: Transformation):
    """(uQ, PAQ, Pv); preserves the represented element."""
    P, Q = t.P, t.Q
    if isinstance(r, Als):
        assert invert(P) is not None and invert(Q) is not None, "transformation not invertible"
        assert t.is_admissible, "Q must have first row e_1 for an ALS"
        coeffs = tuple(mat_mul(mat_mul(P, c), Q) for c in r.coeffs)
        return Als(LinearPencil(r.alphabet, coeffs), mat_vec(P, r.v))
    coeffs = tuple(mat_mul(mat_mul(P, c), Q) for c in r.pencil.coeffs)
    return LinearRepresentation(vec_mat(r.u, Q),
                                LinearPencil(r.pencil.alphabet, coeffs),
                                mat_vec(P, r.v))


def _complete_basis(rows, n):
    """Extend the given independent rows to an invertible matrix by
    greedily appending standard basis vectors in index order."""
    from .linalg import mat_rank
    chosen = list(rows)
    for j in range(n):
        cand = chosen + [unit_vec(n, j)]
        if mat_rank(mat(cand)) == len(cand):
            chosen = cand
        if len(chosen) == n:
            break
    assert len(chosen) == n
    return mat(chosen)


def _solve_affine(constraints, rhs, n):
    """One vector r with r . c_i = rhs_i for each constraint row."""
    res = solve_linear(mat(constraints), vec(rhs))
    assert res.feasible, "internal consistency error in canonicalization"
    return res.particular, res.nullspace


def canonicalize_for_inverse(f: Als, t: ElementType) -> Als:
    """Bring a minimal ALS into the input shape of the minimal inverse.

    Right bit set: first column becomes constant e_1.  Left bit set:
    last row becomes constant e_n and v becomes lambda e_n.  Type
    (0,0) only needs v concentrated in the last entry.
    """
    n = f.n
    assert n >= 1
    if n == 1:
        return f
    if t.right and t.left:
        q = _right_vector(f)
        p = _left_vector(f)
        assert q is not None and p is not None, "internal consistency error"
        c = mat_vec(f.coeffs[0], q)
        assert sum(pi * ci for pi, ci in zip(p, c)) == 0, \
            "internal consistency error: p.c must vanish for type (1,1)"
        kappa = vec_mat(p, f.coeffs[0])
        # R rows: e_1, then a basis of the orthogonal complement of q
        # drawn from {e_j - q_j e_1}, with kappa forced to be last.
        from .linalg import mat_rank
        middle = []
        for j in range(1, n):
            cand = tuple(frac(1 if i == j else 0) - q[j] * frac(1 if i == 0 else 0)
                         for i in range(n))
            trial = [kappa] + middle + [cand]
            if mat_rank(mat(trial)) == len(trial):
                middle.append(cand)
            if len(middle) == n - 2:
                break
        assert len(middle) == n - 2, "internal consistency error"
        R = mat([unit_vec(n, 0)] + middle + [kappa])
        Q = invert(R)
        assert Q is not None
        # P rows: c -> e_1, v -> e_n, joint nullspace in between.
        r1, _ = _solve_affine([c, f.v], [1, 0], n)
        rn, _ = _solve_affine([c, f.v], [0, 1], n)
        _, null = _solve_affine([c, f.v], [0, 0], n)
        P = mat([r1] + list(null) + [rn])
        assert invert(P) is not None
    elif t.right:
        q = _right_vector(f)
        assert q is not None, "internal consistency error"
        c = mat_vec(f.coeffs[0], q)
        # Q = identity with first column q (q_1 = 1 keeps it invertible
        # and admissible).
        Q = mat([[q[i] if j == 0 else (1 if i == j else 0) for j in range(n)]
                 for i in range(n)])
        r1, _ = _solve_affine([c, f.v], [1, 0], n)
        rn, _ = _solve_affine([c, f.v], [0, 1], n)
        _, null = _solve_affine([c, f.v], [0, 0], n)
        P = mat([r1] + list(null) + [rn])
        assert invert(P) is not None
    elif t.left:
        p = _left_vector(f)
        assert p is not None, "internal consistency error"
        kappa = vec_mat(p, f.coeffs[0])
        e1 = unit_vec(n, 0)
        # Q columns: e_1-component and kappa-pairing prescribed.
        c1, _ = _solve_affine([e1, kappa], [1, 0], n)
        cn, _ = _solve_affine([e1, kappa], [0, 1], n)
        _, nullc = _solve_affine([e1, kappa], [0, 0], n)
        cols = [c1] + list(nullc) + [cn]
        Q = mat([[cols[j][i] for j in range(n)] for i in range(n)])
        _, nullv = _solve_affine([f.v], [0], n)
        P = mat(list(nullv) + [p])
        assert invert(P) is not None
    else:
        # Type (0,0): only concentrate v in the last entry.
        from .minimize import standardize
        return standardize(f)
    return apply_transformation(f, Transformation(P, Q))


def minimal_inverse(f: Als, t: ElementType) -> Als:
    """Minimal system for 1/f from a canonical minimal system for f.

    Dimension n-1 / n / n / n+1 for types (1,1) / (1,0) / (0,1) / (0,0).
    """
    n = f.n
    assert n >= 2, "invert scalars directly"
    assert all(x == 0 for x in f.v[:-1]) and f.v[-1] != 0, "v not concentrated"
    lam = f.v[-1]
    a = f.alphabet
    if t.right and t.left:
        # [[1,b',b],[0,B,b''],[0,0,1]] -> [[-lam Sb'', -SBS],[-lam b, -b'S]]
        m = n - 2
        coeffs = []
        for idx, cf in enumerate(f.coeffs):
            bp = [cf[0][1 + j] for j in range(m)]
            b = cf[0][n - 1]
            B = [[cf[1 + i][1 + j] for j in range(m)] for i in range(m)]
            bpp = [cf[1 + i][n - 1] for i in range(m)]
            c = [[Fraction(0)] * (n - 1) for _ in range(n - 1)]
            for i in range(m):
                c[i][0] = -lam * bpp[m - 1 - i]
                for j in range(m):
                    c[i][1 + j] = -B[m - 1 - i][m - 1 - j]
            c[m][0] = -lam * b
            for j in range(m):
                c[m][1 + j] = -bp[m - 1 - j]
            coeffs.append(c)
        return _make(a, coeffs, unit_vec(n - 1, n - 2))
    if t.right:
        # [[1,b',b],[0,B,b''],[0,c',c]] ->
        # [[1, -c/lam, -c'S/lam],[0, -Sb'', -SBS],[0, -b, -b'S]]
        m = n - 2
        coeffs = []
        for idx, cf in enumerate(f.coeffs):
            bp = [cf[0][1 + j] for j in range(m)]
            b = cf[0][n - 1]
            B = [[cf[1 + i][1 + j] for j in range(m)] for i in range(m)]
            bpp = [cf[1 + i][n - 1] for i in range(m)]
            cp = [cf[n - 1][1 + j] for j in range(m)]
            cc = cf[n - 1][n - 1]
            c = [[Fraction(0)] * n for _ in range(n)]
            if idx == 0:
                c[0][0] = Fraction(1)
            c[0][1] = -cc / lam
            for j in range(m):
                c[0][2 + j] = -cp[m - 1 - j] / lam
            for i in range(m):
                c[1 + i][1] = -bpp[m - 1 - i]
                for j in range(m):
                    c[1 + i][2 + j] = -B[m - 1 - i][m - 1 - j]
            c[n - 1][1] = -b
            for j in range(m):
                c[n - 1][2 + j] = -bp[m - 1 - j]
            coeffs.append(c)
        return _make(a, coeffs, unit_vec(n, n - 1))
    if t.left:
        # [[a,b',b],[a',B,b''],[0,0,1]] ->
        # [[-lam Sb'', -SBS, -Sa'],[-lam b, -b'S, -a],[0,0,1]]
        m = n - 2
        coeffs = []
        for idx, cf in enumerate(f.coeffs):
            aa = cf[0][0]
            bp = [cf[0][1 + j] for j in range(m)]
            b = cf[0][n - 1]
            ap = [cf[1 + i][0] for i in range(m)]
            B = [[cf[1 + i][1 + j] for j in range(m)] for i in range(m)]
            bpp = [cf[1 + i][n - 1] for i in range(m)]
            c = [[Fraction(0)] * n for _ in range(n)]
            for i in range(m):
                c[i][0] = -lam * bpp[m - 1 - i]
                for j in range(m):
                    c[i][1 + j] = -B[m - 1 - i][m - 1 - j]
                c[i][n - 1] = -ap[m - 1 - i]
            c[m][0] = -lam * b
            for j in range(m):
                c[m][1 + j] = -bp[m - 1 - j]
            c[m][n - 1] = -aa
            if idx == 0:
                c[n - 1][n - 1] = Fraction(1)
            coeffs.append(c)
        return _make(a, coeffs, unit_vec(n, n - 1))
    # Type (0,0): [[Sigma v, -S A S],[0, u S]], dimension n + 1.
    coeffs = []
    for idx, cf in enumerate(f.coeffs):
        c = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
        if idx == 0:
            for i in range(n):
                c[i][0] = f.v[n - 1 - i]
            c[n][n] = Fraction(1)  # u Sigma = e_n
        for i in range(n):
            for j in range(n):
                c[i][1 + j] = -cf[n - 1 - i][n - 1 - j]
        coeffs.append(c)
    return _make(a, coeffs, unit_vec(n + 1, n))


def als_expand(f: Als, bound: int) -> TruncatedSeries:
    """Power series of a regular element, truncated at the bound."""
    from .ncpoly import poly_zero
    a = f.alphabet
    if f.is_empty:
        return TruncatedSeries(poly_zero(a), bound)
    a0inv = invert(f.coeffs[0])
    if a0inv is None:
        raise ValueError("not regular: constant coefficient is singular")
    mls = [mat([[-x for x in row] for row in mat_mul(a0inv, c)])
           for c in f.coeffs[1:]]
    w0 = mat_vec(a0inv, f.v)
    terms = {}
    frontier = {(): w0}
    for deg in range(bound + 1):
        for word, s in frontier.items():
            if s[0] != 0:
                terms[word] = terms.get(word, Fraction(0)) + s[0]
        if deg == bound:
            break
        nxt = {}
        for word, s in frontier.items():
            for l, M in enumerate(mls):
                t = mat_vec(M, s)
                if any(x != 0 for x in t):
                    nxt[(l,) + word] = t
        frontier = nxt
        if not frontier:
            break
    return TruncatedSeries(NcPoly(a, terms), bound)


def als_eval(r, pt: MatrixPoint):
    """(u (x) I) A(pt)^{-1} (v (x) I), or None if A(pt) is singular."""
    if isinstance(r, Als):
        if r.is_empty:
            return zeros(pt.m, pt.m)
        u = unit_vec(r.n, 0)
        pencil, v = r.pencil, r.v
    else:
        u, pencil, v = r.u, r.pencil, r.v
    n, m = pencil.n, pt.m
    big = pencil.at_point(pt)
    biginv = invert(big)
    if biginv is None:
        return None
    out = [[Fraction(0)] * m for _ in range(m)]
    for a in range(m):
        for b in range(m):
            acc = Fraction(0)
            for i in range(n):
                if u[i] == 0:
                    continue
                for j in range(n):
                    if v[j] == 0:
                        continue
                    acc += u[i] * v[j] * biginv[i * m + a][j * m + b]
            out[a][b] = acc
    return tuple(tuple(row) for row in out)


def is_full_probabilistic(pencil: LinearPencil, trials: int = 30,
                          rng: random.Random | None = None) -> str:
    """'full-witnessed' if some matrix point makes A(pt) invertible."""
    rng = rng or random.Random(0)
    n = max(pencil.n, 1)
    sizes = list(range(1, min(n, 3) + 1))
    for trial in range(trials):
        m = sizes[trial % len(sizes)]
        pt = random_point(pencil.alphabet, m, rng)
        if invert(pencil.at_point(pt)) is not None:
            return "full-witnessed"
    return "likely-non-full"
