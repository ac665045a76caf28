"""Equality decisions and the rank function.

The certified path is cross-checked against the probabilistic
matrix-point oracle; the two must never contradict.
"""

import random
from fractions import Fraction

import pytest

from freefield import Alphabet, equal, equal_probabilistic, is_zero, rank
from freefield.als import (
    als_add,
    als_from_poly,
    als_inv,
    als_monomial,
    als_mul,
    als_scalar,
    als_scale,
)
from freefield.expr import Session, parse, build
from freefield.ncpoly import NcPoly

A = Alphabet(("x", "y", "z"))


def _expr(text):
    return build(parse(text, A), Session(A))


def test_equal_certified_on_rearranged_polynomial():
    f = _expr("x*y + z")
    g = _expr("z + 1/2*x*y + 1/2*x*y")
    v = equal(f, g)
    assert v.result == "equal-certified"
    assert v.is_equal


def test_unequal_certified_different_ranks():
    v = equal(_expr("x*y"), _expr("x*y + z"))
    assert v.result == "unequal-certified"
    assert not v.is_equal


def test_unequal_certified_same_rank():
    v = equal(_expr("x*y"), _expr("y*x"))
    assert v.result == "unequal-certified"


def test_equal_zero_both_sides():
    v = equal(_expr("x - x"), _expr("y - y"))
    assert v.result == "equal-certified"


def test_rational_simplification():
    # cancellation inside an alternating product of inverses
    f = _expr("x^-1*z*z^-1*y*z^-1")
    g = _expr("x^-1*y*z^-1")
    v = equal(f, g)
    assert v.is_equal
    assert rank(f) == rank(g)


def test_rank_values():
    assert rank(_expr("x")) == 2
    assert rank(_expr("x*y*z")) == 4
    assert rank(_expr("x*y + z")) == 3
    assert rank(_expr("0")) == 0
    assert is_zero(_expr("x*y - x*y"))


def test_rank_of_scalars():
    assert rank(_expr("7")) == 1
    assert rank(_expr("-2/3")) == 1


def test_probabilistic_oracle_finds_witness():
    v = equal_probabilistic(_expr("x*y"), _expr("y*x"), trials=10, seed=1)
    assert v.result == "unequal-witnessed"
    assert v.witness is not None


def test_probabilistic_oracle_agrees_on_equal_pair():
    v = equal_probabilistic(_expr("x*y + z"), _expr("z + x*y"),
                            trials=10, seed=1)
    assert v.result == "equal-probabilistic"


def test_oracles_never_contradict():
    rng = random.Random(41)
    pool = ["x", "y", "z", "x*y", "x + y", "x - y", "x*y*z", "1 - x*y",
            "(1 - x*y)^-1", "x^-1", "(x + y)^-1", "2*x + 3*y"]
    for _ in range(40):
        a_text = rng.choice(pool)
        b_text = rng.choice(pool)
        f, g = _expr(a_text), _expr(b_text)
        v = equal(f, g)
        p = equal_probabilistic(f, g, trials=8, seed=rng.randrange(10000))
        if v.result == "equal-certified":
            assert p.result == "equal-probabilistic"
        if p.result == "unequal-witnessed":
            assert not v.is_equal


def test_equality_witness_is_transformation_pair():
    f = _expr("x*y + z")
    g = _expr("z + x*y")
    v = equal(f, g)
    assert v.result == "equal-certified"
    T, U = v.witness
    assert len(T) == rank(f) and len(U) == rank(f)


def test_alphabet_mismatch_rejected():
    b = Alphabet(("x", "y"))
    with pytest.raises(AssertionError):
        equal(als_monomial(A, (0,)), als_monomial(b, (0,)))
