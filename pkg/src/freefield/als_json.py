"""Bit-exact JSON serialization of admissible linear systems.

Schema:
    { "letters": [names], "n": int, "u": [rationals], "v": [rationals],
      "A": { "const": n x n grid, "<letter>": n x n grid, ... } }
with rationals as "p/q" strings ("p" when q = 1).
"""

from __future__ import annotations

import json
from fractions import Fraction

from .linalg import format_frac, unit_vec, vec, mat
from .ncpoly import Alphabet
from .als import Als, LinearPencil


class SchemaError(ValueError):
    pass


def _grid_out(m):
    return [[format_frac(x) for x in row] for row in m]


def export_als(f: Als) -> dict:
    n = f.n
    doc = {
        "letters": list(f.alphabet.letters),
        "n": n,
        "u": [format_frac(x) for x in (unit_vec(n, 0) if n else ())],
        "v": [format_frac(x) for x in f.v],
        "A": {"const": _grid_out(f.coeffs[0])},
    }
    for i, name in enumerate(f.alphabet.letters):
        doc["A"][name] = _grid_out(f.coeffs[i + 1])
    return doc


def export_json(f: Als) -> str:
    return json.dumps(export_als(f), indent=2)


def _frac_in(s, path):
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise SchemaError(f"{path}: malformed rational '{s}'")


def _grid_in(g, n, path):
    if not isinstance(g, list) or len(g) != n:
        raise SchemaError(f"{path}: expected {n} rows")
    out = []
    for i, row in enumerate(g):
        if not isinstance(row, list) or len(row) != n:
            raise SchemaError(f"{path}/{i}: expected {n} entries")
        out.append([_frac_in(x, f"{path}/{i}/{j}") for j, x in enumerate(row)])
    return mat(out)


def import_als(doc: dict) -> Als:
    for key in ("letters", "n", "u", "v", "A"):
        if key not in doc:
            raise SchemaError(f"/{key}: missing")
    letters = doc["letters"]
    if not isinstance(letters, list) or not letters:
        raise SchemaError("/letters: expected a nonempty list")
    alphabet = Alphabet(tuple(letters))
    n = doc["n"]
    if not isinstance(n, int) or n < 0:
        raise SchemaError("/n: expected a nonnegative integer")
    u = [_frac_in(x, f"/u/{i}") for i, x in enumerate(doc["u"])]
    if len(u) != n or (n and tuple(u) != unit_vec(n, 0)):
        raise SchemaError("/u: must be e_1 = [1, 0, ..., 0]")
    v = [_frac_in(x, f"/v/{i}") for i, x in enumerate(doc["v"])]
    if len(v) != n:
        raise SchemaError(f"/v: expected length {n}")
    A = doc["A"]
    if "const" not in A:
        raise SchemaError("/A/const: missing")
    coeffs = [_grid_in(A["const"], n, "/A/const")]
    for name in alphabet.letters:
        if name not in A:
            raise SchemaError(f"/A/{name}: missing")
        coeffs.append(_grid_in(A[name], n, f"/A/{name}"))
    return Als(LinearPencil(alphabet, tuple(coeffs)), vec(v))


def import_json(text: str) -> Als:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"invalid JSON: {e}")
    if not isinstance(doc, dict):
        raise SchemaError("/: expected an object")
    return import_als(doc)
