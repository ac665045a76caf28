"""Exact dense linear algebra over the rationals.

Matrices are tuples of tuples of Fraction; vectors are tuples of
Fraction.  Everything is immutable and every result is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

Mat = tuple
Vec = tuple


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def mat(rows) -> Mat:
    return tuple(tuple(frac(x) for x in row) for row in rows)


def vec(entries) -> Vec:
    return tuple(frac(x) for x in entries)


def zeros(r: int, c: int) -> Mat:
    zero = Fraction(0)
    return tuple((zero,) * c for _ in range(r))


def identity(n: int) -> Mat:
    one, zero = Fraction(1), Fraction(0)
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def unit_vec(n: int, i: int) -> Vec:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def mat_add(a: Mat, b: Mat) -> Mat:
    assert len(a) == len(b) and (not a or len(a[0]) == len(b[0]))
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(a: Mat, mu) -> Mat:
    mu = frac(mu)
    return tuple(tuple(mu * x for x in row) for row in a)


def mat_mul(a: Mat, b: Mat) -> Mat:
    assert not a or not b or len(a[0]) == len(b)
    bt = tuple(zip(*b)) if b else ()
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_vec(a: Mat, x: Vec) -> Vec:
    assert not a or len(a[0]) == len(x)
    return tuple(sum(e * xi for e, xi in zip(row, x)) for row in a)


def vec_mat(x: Vec, a: Mat) -> Vec:
    assert len(x) == len(a)
    if not a:
        return ()
    return tuple(sum(xi * a[i][j] for i, xi in enumerate(x)) for j in range(len(a[0])))


def transpose(a: Mat) -> Mat:
    return tuple(zip(*a)) if a else ()


def is_zero_mat(a: Mat) -> bool:
    return all(x == 0 for row in a for x in row)


@dataclass(frozen=True)
class LinSolveResult:
    """Complete solution set of M x = b.

    feasible: whether any solution exists.
    particular: one exact solution when feasible, else None.
    nullspace: basis of ker M, in reduced column echelon order.
    """

    feasible: bool
    particular: Vec | None
    nullspace: tuple


def _rref(rows, width):
    """Row-reduce in place (list of lists); returns pivot column list.

    Pivot rule: first row with a nonzero entry in the current column,
    so identical inputs always give identical reduced forms.
    """
    pivots = []
    r = 0
    for c in range(width):
        pr = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def solve_linear(m: Mat, b: Vec) -> LinSolveResult:
    """Solve M x = b exactly, returning particular solution and nullspace."""
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    assert len(b) == nrows, "dimension mismatch"
    aug = [list(row) + [bi] for row, bi in zip(m, b)]
    if not aug:
        # No constraints: everything is a solution.
        ns = tuple(unit_vec(ncols, j) for j in range(ncols))
        return LinSolveResult(True, vec([0] * ncols), ns)
    pivots = _rref(aug, ncols)
    pivset = set(pivots)
    # Inconsistent iff some reduced row is 0 = nonzero.
    for row in aug:
        if all(x == 0 for x in row[:ncols]) and row[ncols] != 0:
            return LinSolveResult(False, None, ())
    particular = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        particular[c] = aug[r][ncols]
    null = []
    for c in range(ncols):
        if c in pivset:
            continue
        z = [Fraction(0)] * ncols
        z[c] = Fraction(1)
        for r, pc in enumerate(pivots):
            z[pc] = -aug[r][c]
        null.append(tuple(z))
    return LinSolveResult(True, tuple(particular), tuple(null))


def invert(m: Mat) -> Mat | None:
    """Exact inverse of a square matrix, or None if singular."""
    n = len(m)
    assert all(len(row) == n for row in m), "matrix not square"
    aug = [list(row) + [Fraction(1 if i == j else 0) for j in range(n)]
           for i, row in enumerate(m)]
    pivots = _rref(aug, n)
    if len(pivots) < n:
        return None
    return tuple(tuple(row[n:]) for row in aug)


def mat_rank(m: Mat) -> int:
    if not m:
        return 0
    rows = [list(row) for row in m]
    return len(_rref(rows, len(m[0])))


def nullspace(m: Mat) -> tuple:
    ncols = len(m[0]) if m else 0
    return solve_linear(m, vec([0] * len(m))).nullspace if m else tuple(
        unit_vec(ncols, j) for j in range(ncols))


def format_frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_frac(s: str) -> Fraction:
    return Fraction(s)
