"""Noncommutative polynomials and the two verification oracles.

The structured-matrix rank of the coefficient table is checked against
hand-computable values and against the rank of the system produced by
the realization pipeline.
"""

import random
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from freefield import Alphabet, NcPoly, hankel_rank, rank
from freefield.als import als_from_poly
from freefield.ncpoly import (
    poly_add,
    poly_const,
    poly_eval,
    poly_letter,
    poly_mul,
    poly_scale,
    poly_word,
    poly_zero,
    random_point,
    word_key,
)

A = Alphabet(("x", "y", "z"))


def test_alphabet_basics():
    assert A.d == 3
    assert A.index("y") == 1
    assert A.word("xyz") == (0, 1, 2)


def test_word_key_orders_by_length_then_lex():
    ws = [(1,), (), (0, 1), (0,), (2,), (0, 0)]
    assert sorted(ws, key=word_key) == [(), (0,), (1,), (2,), (0, 0), (0, 1)]


def test_poly_str():
    p = poly_add(poly_scale(poly_word(A, (0, 1)), 2), poly_const(A, -1))
    assert str(p) == "-1 + 2*x*y"


def test_poly_arith():
    x, y = poly_letter(A, 0), poly_letter(A, 1)
    assert poly_mul(x, y) != poly_mul(y, x)
    p = poly_mul(x, y)
    assert poly_add(p, poly_scale(p, -1)) == poly_zero(A)
    assert poly_mul(x, poly_const(A, 3)).coeff((0,)) == 3


words = st.lists(st.integers(0, 2), min_size=0, max_size=4).map(tuple)
coeffs = st.fractions(min_value=Fraction(-9), max_value=Fraction(9),
                      max_denominator=6)


@st.composite
def polys(draw):
    terms = draw(st.dictionaries(words, coeffs, max_size=5))
    terms = {w: c for w, c in terms.items() if c != 0}
    return NcPoly(A, terms)


@given(polys(), polys())
@settings(max_examples=40, deadline=None)
def test_poly_eval_is_multiplicative(p, q):
    rng = random.Random(5)
    pt = random_point(A, 2, rng)
    lhs = poly_eval(poly_mul(p, q), pt)
    from freefield.linalg import mat_mul
    assert lhs == mat_mul(poly_eval(p, pt), poly_eval(q, pt))


def test_hankel_rank_monomials():
    # rank of a nonzero word w is len(w) + 1
    for text in ("x", "xy", "xyz", "xx"):
        w = A.word(text)
        assert hankel_rank(poly_word(A, w)) == len(w) + 1


def test_hankel_rank_examples():
    assert hankel_rank(poly_const(A, 5)) == 1
    assert hankel_rank(poly_zero(A)) == 0
    p = poly_add(poly_word(A, (0, 1)), poly_word(A, (1, 0), -1))
    assert hankel_rank(p) == 4


@given(polys())
@settings(max_examples=40, deadline=None)
def test_hankel_rank_matches_system_rank(p):
    # independent oracle: minimal system dimension equals the
    # structured rank of the coefficient table
    assert rank(als_from_poly(p)) == hankel_rank(p)
