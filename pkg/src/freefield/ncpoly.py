"""Words and noncommutative polynomials over a finite alphabet.

A word is a tuple of letter indices (0-based into the alphabet).
NcPoly maps words to nonzero Fractions.  Polynomials double as one of
the two verification oracles: hankel_rank computes the dimension of a
minimal linear system for a polynomial without ever building one.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import frac, mat, mat_add, mat_mul, mat_rank, mat_scale, identity, zeros

Word = tuple


@dataclass(frozen=True)
class Alphabet:
    letters: tuple

    def __post_init__(self):
        assert self.letters, "alphabet must be nonempty"
        assert len(set(self.letters)) == len(self.letters), "letter names must be unique"
        object.__setattr__(self, "letters", tuple(self.letters))

    @property
    def d(self) -> int:
        return len(self.letters)

    def index(self, name: str) -> int:
        return self.letters.index(name)

    def word(self, text: str) -> Word:
        return tuple(self.index(ch) for ch in text)


def word_key(w: Word):
    # Length-lexicographic order; canonical for printing and maps.
    return (len(w), w)


@dataclass(frozen=True)
class NcPoly:
    alphabet: Alphabet
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {tuple(w): frac(c) for w, c in self.terms.items() if c != 0}
        object.__setattr__(self, "terms", clean)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        # Degree of the zero polynomial is the sentinel -1.
        return max((len(w) for w in self.terms), default=-1)

    def coeff(self, w: Word) -> Fraction:
        return self.terms.get(tuple(w), Fraction(0))

    def __eq__(self, other):
        return isinstance(other, NcPoly) and self.alphabet == other.alphabet \
            and self.terms == other.terms

    def __hash__(self):
        return hash((self.alphabet, frozenset(self.terms.items())))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=word_key):
            c = self.terms[w]
            letters = "*".join(self.alphabet.letters[i] for i in w)
            mag = abs(c)
            if not letters:
                body = str(mag) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
            elif mag == 1:
                body = letters
            else:
                coeff = str(mag) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
                body = f"{coeff}*{letters}"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)


def poly_zero(a: Alphabet) -> NcPoly:
    return NcPoly(a, {})


def poly_const(a: Alphabet, c) -> NcPoly:
    return NcPoly(a, {(): frac(c)})


def poly_letter(a: Alphabet, i: int) -> NcPoly:
    return NcPoly(a, {(i,): Fraction(1)})


def poly_word(a: Alphabet, w: Word, c=1) -> NcPoly:
    return NcPoly(a, {tuple(w): frac(c)})


def poly_add(p: NcPoly, q: NcPoly) -> NcPoly:
    assert p.alphabet == q.alphabet, "alphabet mismatch"
    terms = dict(p.terms)
    for w, c in q.terms.items():
        terms[w] = terms.get(w, Fraction(0)) + c
    return NcPoly(p.alphabet, terms)


def poly_scale(p: NcPoly, mu) -> NcPoly:
    mu = frac(mu)
    return NcPoly(p.alphabet, {w: mu * c for w, c in p.terms.items()})


def poly_mul(p: NcPoly, q: NcPoly) -> NcPoly:
    assert p.alphabet == q.alphabet, "alphabet mismatch"
    terms = {}
    for w1, c1 in p.terms.items():
        for w2, c2 in q.terms.items():
            w = w1 + w2
            terms[w] = terms.get(w, Fraction(0)) + c1 * c2
    return NcPoly(p.alphabet, terms)


def hankel_rank(p: NcPoly) -> int:
    """Dimension of a minimal linear system for the polynomial p.

    Rank of the prefix/suffix coefficient matrix: rows indexed by
    prefixes of support words, columns by suffixes, entry the
    coefficient of the concatenation.  No adjustment is needed; a
    word w already gives len(w) + 1 (checked on monomials).
    """
    if p.is_zero:
        return 0
    prefixes, suffixes = set(), set()
    for w in p.terms:
        for i in range(len(w) + 1):
            prefixes.add(w[:i])
            suffixes.add(w[i:])
    rows = sorted(prefixes, key=word_key)
    cols = sorted(suffixes, key=word_key)
    h = [[p.coeff(r + c) for c in cols] for r in rows]
    return mat_rank(tuple(tuple(row) for row in h))


@dataclass(frozen=True)
class MatrixPoint:
    """Assignment of one m x m rational matrix per letter."""

    alphabet: Alphabet
    m: int
    matrices: tuple

    def __post_init__(self):
        assert len(self.matrices) == self.alphabet.d
        for M in self.matrices:
            assert len(M) == self.m and all(len(row) == self.m for row in M)


def random_point(a: Alphabet, m: int, rng: random.Random) -> MatrixPoint:
    # Small integer entries keep arithmetic cheap but witness
    # non-identities with high probability.
    mats = tuple(
        mat([[rng.randint(-5, 5) for _ in range(m)] for _ in range(m)])
        for _ in range(a.d))
    return MatrixPoint(a, m, mats)


def poly_eval(p: NcPoly, pt: MatrixPoint):
    assert p.alphabet == pt.alphabet
    acc = zeros(pt.m, pt.m)
    for w, c in p.terms.items():
        term = mat_scale(identity(pt.m), c)
        for i in w:
            term = mat_mul(term, pt.matrices[i])
        acc = mat_add(acc, term)
    return acc
