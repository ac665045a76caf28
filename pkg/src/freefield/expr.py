"""Expression parsing and the build-and-minimize pipeline.

Grammar (explicit '*' for products, juxtaposition is not multiplication):

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' int)?
    base   := rational | letter | name | '(' expr ')' | '-' base
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .ncpoly import Alphabet
from .als import (
    Als,
    als_add,
    als_inv,
    als_monomial,
    als_mul,
    als_mul_type1,
    als_scalar,
    als_scale,
    canonicalize_for_inverse,
    detect_type,
    minimal_inverse,
)
from .minimize import minimize_full


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at offset {pos})")
        self.pos = pos


class BuildError(ValueError):
    pass


@dataclass(frozen=True)
class ExprAst:
    node: str  # scalar | letter | ref | add | sub | mul | neg | inv | pow
    args: tuple = ()
    value: object = None

    def __str__(self):
        return _to_str(self)


def _to_str(e: ExprAst) -> str:
    if e.node == "scalar":
        v = e.value
        return str(v) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if e.node == "letter" or e.node == "ref":
        return e.value
    if e.node == "add":
        return f"({_to_str(e.args[0])} + {_to_str(e.args[1])})"
    if e.node == "sub":
        return f"({_to_str(e.args[0])} - {_to_str(e.args[1])})"
    if e.node == "mul":
        return f"{_to_str(e.args[0])}*{_to_str(e.args[1])}"
    if e.node == "neg":
        return f"-{_to_str(e.args[0])}"
    if e.node == "inv":
        return f"{_to_str(e.args[0])}^-1"
    if e.node == "pow":
        return f"{_to_str(e.args[0])}^{e.value}"
    raise AssertionError(e.node)


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take_int(self) -> int:
        self.peek()
        start = self.pos
        if self.peek() == "-":
            self.pos += 1
        if not (self.pos < len(self.text) and self.text[self.pos].isdigit()):
            raise ParseError("expected integer", start)
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        return int(self.text[start:self.pos])

    def take_name(self) -> str:
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum()
                                             or self.text[self.pos] == "_"):
            self.pos += 1
        return self.text[start:self.pos]


def parse(text: str, alphabet: Alphabet, names: set | None = None) -> ExprAst:
    lx = _Lexer(text)
    ast = _parse_expr(lx, alphabet, names or set())
    if lx.peek():
        raise ParseError(f"unexpected '{lx.peek()}'", lx.pos)
    return ast


def _parse_expr(lx, a, names):
    node = _parse_term(lx, a, names)
    while lx.peek() in ("+", "-"):
        op = lx.peek()
        lx.pos += 1
        rhs = _parse_term(lx, a, names)
        node = ExprAst("add" if op == "+" else "sub", (node, rhs))
    return node


def _parse_term(lx, a, names):
    node = _parse_factor(lx, a, names)
    while lx.peek() == "*":
        lx.pos += 1
        rhs = _parse_factor(lx, a, names)
        node = ExprAst("mul", (node, rhs))
    return node


def _parse_factor(lx, a, names):
    node = _parse_base(lx, a, names)
    if lx.peek() == "^":
        lx.pos += 1
        k = lx.take_int()
        if k == -1:
            node = ExprAst("inv", (node,))
        elif k == 0:
            node = ExprAst("scalar", value=Fraction(1))
        elif k == 1:
            pass
        else:
            node = ExprAst("pow", (node,), value=k)
    return node


def _parse_base(lx, a, names):
    ch = lx.peek()
    if ch == "(":
        open_pos = lx.pos
        lx.pos += 1
        node = _parse_expr(lx, a, names)
        if lx.peek() != ")":
            raise ParseError("unbalanced parentheses", open_pos)
        lx.pos += 1
        return node
    if ch == "-":
        lx.pos += 1
        return ExprAst("neg", (_parse_base(lx, a, names),))
    if ch.isdigit():
        num = lx.take_int()
        if lx.peek() == "/":
            lx.pos += 1
            pos = lx.pos
            den = lx.take_int()
            if den == 0:
                raise ParseError("malformed rational: zero denominator", pos)
            return ExprAst("scalar", value=Fraction(num, den))
        return ExprAst("scalar", value=Fraction(num))
    if ch.isalpha() or ch == "_":
        pos = lx.pos
        name = lx.take_name()
        if name in a.letters:
            return ExprAst("letter", value=name)
        if name in names:
            return ExprAst("ref", value=name)
        raise ParseError(f"unknown symbol '{name}'", pos)
    raise ParseError(f"unexpected '{ch}'" if ch else "unexpected end of input", lx.pos)


@dataclass
class Session:
    alphabet: Alphabet
    bindings: dict = field(default_factory=dict)
    trials: int = 10
    seed: int = 0
    trace: bool = False


def _minimized(f: Als) -> Als:
    g, _ = minimize_full(f)
    return g


def _can_mul_type1(f: Als, g: Als) -> bool:
    if f.is_empty or g.is_empty or g.n < 2:
        return False
    if any(x != 0 for x in f.v[:-1]) or f.v[-1] == 0:
        return False
    if g.coeffs[0][0][0] != 1:
        return False
    if any(g.coeffs[0][i][0] != 0 for i in range(1, g.n)):
        return False
    return all(c[i][0] == 0 for c in g.coeffs[1:] for i in range(g.n))


def _invert(f: Als, source: ExprAst, s: Session) -> Als:
    fm, certified = minimize_full(f)
    if fm.is_empty:
        raise BuildError(f"division by zero: subexpression '{source}' is zero")
    if fm.n == 1:
        if all(c[0][0] == 0 for c in fm.coeffs[1:]):
            # constant pencil: plain scalar inverse
            return als_scalar(fm.alphabet, fm.coeffs[0][0][0] / fm.v[0])
        return _minimized(als_inv(fm))
    if certified:
        t = detect_type(fm)
        canon = canonicalize_for_inverse(fm, t)
        return _minimized(minimal_inverse(canon, t))
    return _minimized(als_inv(fm))


def build(ast: ExprAst, s: Session) -> Als:
    a = s.alphabet
    if ast.node == "scalar":
        return als_scalar(a, ast.value)
    if ast.node == "letter":
        return als_monomial(a, (a.index(ast.value),))
    if ast.node == "ref":
        return s.bindings[ast.value]
    if ast.node == "neg":
        f = build(ast.args[0], s)
        return f if f.is_empty else als_scale(f, -1)
    if ast.node == "add" or ast.node == "sub":
        f = build(ast.args[0], s)
        g = build(ast.args[1], s)
        if ast.node == "sub" and not g.is_empty:
            g = als_scale(g, -1)
        return _minimized(als_add(f, g))
    if ast.node == "mul":
        f = build(ast.args[0], s)
        g = build(ast.args[1], s)
        if f.is_empty or g.is_empty:
            from .als import als_empty
            return als_empty(a)
        if _can_mul_type1(f, g):
            return _minimized(als_mul_type1(f, g))
        return _minimized(als_mul(f, g))
    if ast.node == "inv":
        return _invert(build(ast.args[0], s), ast.args[0], s)
    if ast.node == "pow":
        k = ast.value
        if k < 0:
            inner = build(ExprAst("pow", ast.args, value=-k), s)
            return _invert(inner, ast, s)
        f = build(ast.args[0], s)
        acc = f
        for _ in range(k - 1):
            if acc.is_empty or f.is_empty:
                from .als import als_empty
                return als_empty(a)
            if _can_mul_type1(acc, f):
                acc = _minimized(als_mul_type1(acc, f))
            else:
                acc = _minimized(als_mul(acc, f))
        return acc
    raise AssertionError(ast.node)
