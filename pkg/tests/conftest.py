"""Shared helpers for the test suite."""

from fractions import Fraction

import pytest

from freefield import Alphabet
from freefield.als import Als, LinearPencil
from freefield.linalg import mat, vec


@pytest.fixture
def abc():
    return Alphabet(("x", "y", "z"))


def build_als(rows, v, alphabet):
    """Readable ALS literal: entries are numbers (constant part) or
    dicts mapping letter name (None for the constant) to a coefficient.
    """
    n = len(rows)
    d = alphabet.d
    coeffs = [[[Fraction(0)] * n for _ in range(n)] for _ in range(d + 1)]
    for i, row in enumerate(rows):
        for j, e in enumerate(row):
            if isinstance(e, dict):
                for k, val in e.items():
                    idx = 0 if k is None else alphabet.index(k) + 1
                    coeffs[idx][i][j] = Fraction(val)
            else:
                coeffs[0][i][j] = Fraction(e)
    return Als(LinearPencil(alphabet, tuple(mat(c) for c in coeffs)),
               vec([Fraction(x) for x in v]))


def poly_terms(f, bound):
    """Expansion of a polynomial-valued system as a plain dict."""
    from freefield.als import als_expand
    return dict(als_expand(f, bound).terms.terms)
