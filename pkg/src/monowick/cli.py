"""Command-line front end: ``monowick <command> ...``.

Exit codes: 0 success, 1 parse error, 2 failed precondition, 3 failing check.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from .algebra import Element, dumps, element_to_dict, format_scalar, format_word
from .expr import ParseError, eval_ast, expand_words, format_element, parse
from .fock import FockVector, apply_element, fock_vector_from_dict
from .states import evaluate as state_value, parse_state
from .symmetry import Permutation, Shift, act, parse_monoid, psi, spread_witness, t_sigma, theta
from .wick import RewriteTrace, normalize_word

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_CHECK = 0, 1, 2, 3

SPREAD_WARNING = 10**6

_VEC_TERM = re.compile(
    r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?e?\(\s*((?:-?\d+\s*(?:,\s*)?)*)\)\s*"
)


def parse_vector(text: str) -> FockVector:
    """``"(2) - 2(0,2)"`` (``e(...)`` also accepted, ``()`` is the vacuum) or the JSON form ``{"terms": [{"v": [...], "coeff": "..."}]}``."""
    text = text.strip()
    if text.startswith("{"):
        try:
            return fock_vector_from_dict(json.loads(text))
        except (KeyError, TypeError, json.JSONDecodeError) as exc:
            raise ValueError(f"bad vector JSON: {exc}") from None
    terms: dict = {}
    pos = 0
    while pos < len(text):
        m = _VEC_TERM.match(text, pos)
        if not m or (pos and not m.group(1)):
            raise ParseError("bad vector term", len(text[:pos].encode("utf-8")), frozenset({"(...)"}))
        sign = -1 if m.group(1) == "-" else 1
        coeff = sign * Fraction(m.group(2) or 1)
        indices = tuple(int(t) for t in re.split(r"[\s,]+", m.group(3).strip()) if t)
        if any(x >= y for x, y in zip(indices, indices[1:])):
            raise ValueError(f"basis vector indices must increase: {indices}")
        terms[indices] = terms.get(indices, 0) + coeff
        pos = m.end()
    if not terms:
        raise ParseError("empty vector", 0, frozenset({"(...)"}))
    return FockVector(terms)


def format_vector(v: FockVector) -> str:
    parts = [f"{q}*e({','.join(map(str, e))})" for e, q in sorted(v.items())]
    return " + ".join(parts).replace("+ -", "- ") or "0"


def _target(t) -> str:
    return format_word(t.letters() if hasattr(t, "letters") else t)


def _spread_check(x: Element) -> None:
    idx = x.indices()
    if idx and max(idx) - min(idx) > SPREAD_WARNING:
        print(f"warning: index spread {max(idx) - min(idx)} exceeds {SPREAD_WARNING}", file=sys.stderr)


def trace_expression(ast) -> tuple:
    """Rewrite steps for every word of the expanded expression: (text lines, JSON list)."""
    words, lines = [], []
    for q, w in expand_words(ast):
        trace = RewriteTrace()
        normalize_word(w, trace)
        words.append({"coeff": format_scalar(q), "word": format_word(w), **trace.to_dict()})
        lines.append(f"{q} * {format_word(w)}")
        for s in trace.steps:
            after = " + ".join(f"{m}*{_target(t)}" for t, m in s.after)
            lines.append(f"  {s.rule} @{s.position}: {format_word(s.before)} -> {after or '0'}")
    return lines, words


def _emit(args, text: str, payload: dict, ast=None) -> None:
    if getattr(args, "trace", False) and ast is not None:
        lines, words = trace_expression(ast)
        payload = {**payload, "trace": words}
        text = "\n".join(lines + [f"= {text}"])
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dumps(payload) + "\n")
    print(dumps(payload) if args.json else text)


def _element(expr: str) -> tuple:
    ast = parse(expr)
    x = eval_ast(ast)
    _spread_check(x)
    return ast, x


def cmd_normalize(args) -> int:
    ast, x = _element(args.expr)
    _emit(args, format_element(x), {"input": args.expr, "result": element_to_dict(x)}, ast)
    return EXIT_OK


def cmd_eval(args) -> int:
    s = parse_state(args.state)
    ast, x = _element(args.expr)
    v = state_value(s, x)
    _emit(args, format_scalar(v), {"state": str(s), "value": format_scalar(v)}, ast)
    return EXIT_OK


def cmd_apply(args) -> int:
    ast, x = _element(args.expr)
    v = apply_element(x, parse_vector(args.vector))
    _emit(args, format_vector(v), {"result": v.to_dict()}, ast)
    return EXIT_OK


def cmd_act(args) -> int:
    ast, x = _element(args.expr)
    if args.perm is not None:
        sigma = Permutation.parse(args.perm)
        y, label = t_sigma(sigma, x), f"T{sigma}"
    else:
        if args.theta is not None:
            g = theta(args.theta)
        elif args.psi is not None:
            g = psi(args.psi)
        elif args.tau is not None:
            g = Shift(args.tau)
        else:
            g = parse_monoid(args.map)
        y, label = act(g, x), str(g)
    _emit(args, format_element(y), {"map": label, "result": element_to_dict(y)}, ast)
    return EXIT_OK


def cmd_witness(args) -> int:
    m, n = args.interval
    targets = [int(t) for t in re.split(r"[\s,]+", " ".join(args.targets).strip()) if t]
    w = spread_witness(m, n, targets)
    factors = [{"gen": g.kind, "base": g.base, "exp": e} for g, e in w.factors]
    text = str(w)
    if args.trace:
        text += "\n" + "\n".join(f"  {j} -> {w(j)}" for j in range(m, n + 1))
    _emit(args, text, {"interval": [m, n], "targets": targets, "factors": factors})
    return EXIT_OK


def cmd_check(args) -> int:
    from .suites import CRITERIA, run_suite

    if args.name == "list":
        for name in CRITERIA:
            print(name)
        return EXIT_OK
    names = CRITERIA if args.name == "all" else [args.name]
    if any(n not in CRITERIA for n in names):
        raise ValueError(f"unknown check {args.name!r}; try 'monowick check list'")
    results = []
    for name in names:
        r = run_suite(name)
        results.append(r)
        if not args.json:
            print(r.line())
            for f in r.failures if (args.trace or not r.ok) else ():
                print(f"    {f}")
    if args.json or args.out:
        payload = {"results": [r.to_dict() for r in results]}
        if args.json:
            print(dumps(payload))
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(dumps(payload) + "\n")
    return EXIT_OK if all(r.ok for r in results) else EXIT_CHECK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print JSON instead of text")
    common.add_argument("--out", metavar="FILE", help="also write the JSON result to FILE")
    common.add_argument("--trace", action="store_true", help="show rewrite steps / intermediate values")

    p = argparse.ArgumentParser(prog="monowick", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("normalize", parents=[common], help="normal-order an expression")
    q.add_argument("expr")
    q.set_defaults(func=cmd_normalize)

    q = sub.add_parser("eval", parents=[common], help="evaluate a state on an expression")
    q.add_argument("expr")
    q.add_argument("--state", required=True, help="vacuum | infinity | mixed:p/q")
    q.set_defaults(func=cmd_eval)

    q = sub.add_parser("apply", parents=[common], help="apply an expression to a Fock vector")
    q.add_argument("expr")
    q.add_argument("--vector", required=True, help='e.g. "(2) - 2(0,2)", "()" or JSON')
    q.set_defaults(func=cmd_apply)

    q = sub.add_parser("act", parents=[common], help="apply an induced index map")
    q.add_argument("expr")
    g = q.add_mutually_exclusive_group(required=True)
    g.add_argument("--theta", type=int, metavar="H")
    g.add_argument("--psi", type=int, metavar="H")
    g.add_argument("--tau", type=int, metavar="K")
    g.add_argument("--perm", metavar="CYCLES", help='e.g. "(0 1)(3 5 4)"')
    g.add_argument("--map", metavar="WORD", help='e.g. "theta:2 psi:0^3 tau:-1"')
    q.set_defaults(func=cmd_act)

    q = sub.add_parser("witness", parents=[common], help="partial shifts realising an increasing map")
    q.add_argument("--interval", type=int, nargs=2, required=True, metavar=("M", "N"))
    q.add_argument(
        "--targets", required=True, nargs="+", help='images of m..n: "0,3,4", 0 3 4 or --targets=-3,-1'
    )
    q.set_defaults(func=cmd_witness)

    q = sub.add_parser("check", parents=[common], help="run an acceptance suite")
    q.add_argument("name", help="suite name, 'all' or 'list'")
    q.set_defaults(func=cmd_check)
    return p


def main(argv: list | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
