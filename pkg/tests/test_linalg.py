"""Exact linear algebra over Q.

Oracles: solutions are re-substituted into the system; inverses are
checked by multiplying back; rank and nullspace dimensions must add up
to the column count.
"""

from fractions import Fraction

from hypothesis import given, settings, strategies as st

from freefield.linalg import (
    format_frac,
    identity,
    invert,
    mat,
    mat_mul,
    mat_rank,
    mat_vec,
    nullspace,
    parse_frac,
    solve_linear,
    vec,
)

fracs = st.fractions(
    min_value=Fraction(-50), max_value=Fraction(50), max_denominator=12)


@st.composite
def matrices(draw, max_n=5):
    r = draw(st.integers(1, max_n))
    c = draw(st.integers(1, max_n))
    return mat([[draw(fracs) for _ in range(c)] for _ in range(r)])


@st.composite
def square_systems(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    m = mat([[draw(fracs) for _ in range(n)] for _ in range(n)])
    b = vec([draw(fracs) for _ in range(n)])
    return m, b


@given(square_systems())
@settings(max_examples=60, deadline=None)
def test_solve_linear_substitutes_back(sys_):
    m, b = sys_
    res = solve_linear(m, b)
    if res.feasible:
        assert mat_vec(m, res.particular) == b
        for h in res.nullspace:
            assert mat_vec(m, h) == vec([0] * len(m))


@given(square_systems())
@settings(max_examples=60, deadline=None)
def test_invert_multiplies_to_identity(sys_):
    m, _ = sys_
    inv = invert(m)
    n = len(m)
    if inv is None:
        assert mat_rank(m) < n
    else:
        assert mat_mul(m, inv) == identity(n)
        assert mat_mul(inv, m) == identity(n)


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_rank_nullity(m):
    cols = len(m[0])
    assert mat_rank(m) + len(nullspace(m)) == cols
    for h in nullspace(m):
        assert mat_vec(m, h) == vec([0] * len(m))


def test_solve_infeasible():
    m = mat([[1, 1], [1, 1]])
    res = solve_linear(m, vec([1, 2]))
    assert not res.feasible


def test_solve_underdetermined_nullspace():
    m = mat([[1, 1]])
    res = solve_linear(m, vec([3]))
    assert res.feasible
    assert len(res.nullspace) == 1


@given(fracs)
def test_frac_round_trip(x):
    assert parse_frac(format_frac(x)) == x


def test_format_frac():
    assert format_frac(Fraction(3)) == "3"
    assert format_frac(Fraction(-2, 7)) == "-2/7"
