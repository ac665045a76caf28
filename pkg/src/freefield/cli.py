"""Command-line calculator for free-field elements.

Commands: rank, equal, factor, expand, eval, show, export, import and
an interactive mode with `let` bindings.  Exit codes: 0 success,
1 user error, 2 internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .linalg import format_frac, mat
from .ncpoly import Alphabet, MatrixPoint
from .als import als_eval, als_expand
from .minimize import minimize_full
from .wordproblem import equal as wp_equal, rank as wp_rank
from .factor import factorize_atoms
from .expr import BuildError, ParseError, Session, build, parse
from .als_json import SchemaError, export_json, import_json


class UserError(ValueError):
    pass


def _build_expr(text: str, session: Session):
    ast = parse(text, session.alphabet, set(session.bindings))
    return build(ast, session)


def _poly_text(f, bound):
    try:
        series = als_expand(f, bound)
    except ValueError:
        return None
    return str(series.terms)


def cmd_rank(args, session):
    f = _build_expr(args.expr, session)
    if session.trace:
        trace = []
        minimize_full(f, trace)
        for step in trace:
            print(step, file=sys.stderr)
    print(wp_rank(f))
    return 0


def cmd_equal(args, session):
    if ";" not in args.expr:
        raise UserError("equal expects two expressions separated by ';'")
    left, right = args.expr.split(";", 1)
    f = _build_expr(left.strip(), session)
    g = _build_expr(right.strip(), session)
    verdict = wp_equal(f, g, trials=session.trials, seed=session.seed)
    print(verdict.result)
    return 0


def cmd_factor(args, session):
    f = _build_expr(args.expr, session)
    if f.is_empty or f.n < 2:
        raise UserError("factor expects a polynomial of rank >= 2")
    fac = factorize_atoms(f)
    for q in fac.factors:
        text = _poly_text(q, q.n) or "<non-regular factor>"
        print(text)
    print("certified" if fac.certified else "heuristic")
    return 0


def cmd_expand(args, session):
    f = _build_expr(args.expr, session)
    try:
        series = als_expand(f, args.deg)
    except ValueError as e:
        raise UserError(str(e))
    print(series.terms)
    return 0


def _load_point(path: str, alphabet: Alphabet) -> MatrixPoint:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise UserError(f"cannot read point file: {e}")
    try:
        m = doc["m"]
        grids = doc["letters"]
        mats = tuple(
            mat([[Fraction(x) for x in row] for row in grids[name]])
            for name in alphabet.letters)
    except (KeyError, ValueError) as e:
        raise UserError(f"malformed point file: {e}")
    return MatrixPoint(alphabet, m, mats)


def cmd_eval(args, session):
    f = _build_expr(args.expr, session)
    pt = _load_point(args.at, session.alphabet)
    result = als_eval(f, pt)
    if result is None:
        raise UserError("system matrix is singular at the given point")
    for row in result:
        print("[ " + "  ".join(format_frac(x) for x in row) + " ]")
    return 0


def cmd_show(args, session):
    f = _build_expr(args.expr, session)
    print(f.pretty())
    return 0


def cmd_export(args, session):
    f = _build_expr(args.expr, session)
    text = export_json(f)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def cmd_import(args, session):
    try:
        with open(args.file) as fh:
            f = import_json(fh.read())
    except OSError as e:
        raise UserError(str(e))
    print(f.pretty())
    return 0


def repl(session: Session) -> int:
    while True:
        try:
            line = input("freefield> ").strip()
        except EOFError:
            return 0
        if not line:
            continue
        if line in ("quit", "exit"):
            return 0
        try:
            if line.startswith("let "):
                rest = line[4:]
                if "=" not in rest:
                    raise UserError("let expects: let <name> = <expr>")
                name, text = rest.split("=", 1)
                name = name.strip()
                session.bindings[name] = _build_expr(text.strip(), session)
                continue
            words = line.split(None, 1)
            cmd, rest = words[0], (words[1] if len(words) > 1 else "")
            if cmd == "rank":
                print(wp_rank(_build_expr(rest, session)))
            elif cmd == "equal":
                ns = argparse.Namespace(expr=rest)
                cmd_equal(ns, session)
            elif cmd == "show":
                print(_build_expr(rest, session).pretty())
            elif cmd == "factor":
                cmd_factor(argparse.Namespace(expr=rest), session)
            else:
                raise UserError(f"unknown command '{cmd}'")
        except (UserError, ParseError, BuildError, SchemaError) as e:
            print(f"error: {e}", file=sys.stderr)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="freefield")
    parser.add_argument("--letters", default="x,y,z")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--trials", type=int, default=10)
    parser.add_argument("--trace", action="store_true")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("rank")
    p.add_argument("expr")
    p.set_defaults(func=cmd_rank)
    p = sub.add_parser("equal")
    p.add_argument("expr", help="two expressions separated by ';'")
    p.set_defaults(func=cmd_equal)
    p = sub.add_parser("factor")
    p.add_argument("expr")
    p.set_defaults(func=cmd_factor)
    p = sub.add_parser("expand")
    p.add_argument("expr")
    p.add_argument("--deg", type=int, required=True)
    p.set_defaults(func=cmd_expand)
    p = sub.add_parser("eval")
    p.add_argument("expr")
    p.add_argument("--at", required=True)
    p.set_defaults(func=cmd_eval)
    p = sub.add_parser("show")
    p.add_argument("expr")
    p.set_defaults(func=cmd_show)
    p = sub.add_parser("export")
    p.add_argument("expr")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export)
    p = sub.add_parser("import")
    p.add_argument("file")
    p.set_defaults(func=cmd_import)
    sub.add_parser("repl")

    args = parser.parse_args(argv)
    letters = tuple(s.strip() for s in args.letters.split(",") if s.strip())
    try:
        session = Session(Alphabet(letters), trials=args.trials,
                          seed=args.seed, trace=args.trace)
    except AssertionError as e:
        print(f"error: bad alphabet: {e}", file=sys.stderr)
        return 1
    try:
        if args.command is None or args.command == "repl":
            return repl(session)
        return args.func(args, session)
    except (UserError, ParseError, BuildError, SchemaError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except AssertionError as e:
        print(f"internal invariant failure: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
