"""A small operator-expression language.

Grammar::

    expr     := term (('+' | '-') term)*
    term     := factor (factor | '*' factor)*
    factor   := atom "'"* | rational '*' factor | rational | '(' expr ')' "'"*
    atom     := 'c(' int ')' | 'a(' int ')' | 'I'
    rational := int ['/' digits]
    int      := ['-'] digits

``c(i)`` is the creator, ``a(i)`` the annihilator, postfix ``'`` the adjoint.
Juxtaposition is a left-associative product and binds like ``*``; the adjoint
binds tighter than any product.  A bare rational stands for that multiple of
``I``.  ``·``, ``−`` and ``†`` are accepted for ``*``, ``-`` and ``'``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .algebra import BasisIndex, Element, Letter, element_add, element_scale, format_word
from .wick import adjoint, multiply

_ALIASES = {"·": "*", "−": "-", "†": "'"}


class ParseError(ValueError):
    def __init__(self, message: str, offset: int, expected: frozenset = frozenset()):
        self.offset = offset
        self.expected = frozenset(expected)
        detail = f" (expected one of: {', '.join(sorted(self.expected))})" if self.expected else ""
        super().__init__(f"{message} at byte {offset}{detail}")


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Gen:
    creator: bool
    index: int


@dataclass(frozen=True)
class Ident:
    pass


@dataclass(frozen=True)
class Sum:
    left: "Ast"
    right: "Ast"
    negate_right: bool = False


@dataclass(frozen=True)
class Product:
    left: "Ast"
    right: "Ast"


@dataclass(frozen=True)
class Scaled:
    scalar: Fraction
    operand: "Ast"


@dataclass(frozen=True)
class Adjoint:
    operand: "Ast"


@dataclass(frozen=True)
class Group:
    inner: "Ast"


Ast = Union[Num, Gen, Ident, Sum, Product, Scaled, Adjoint, Group]


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.text = "".join(_ALIASES.get(ch, ch) for ch in src)
        self.pos = 0

    def offset(self, pos: int | None = None) -> int:
        return len(self.src[: self.pos if pos is None else pos].encode("utf-8"))

    def fail(self, expected, message: str = "syntax error", pos: int | None = None):
        raise ParseError(message, self.offset(pos), frozenset(expected))

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def eat(self, s: str) -> bool:
        self.skip()
        if self.text.startswith(s, self.pos):
            self.pos += len(s)
            return True
        return False

    def expect(self, s: str) -> None:
        if not self.eat(s):
            self.fail({repr(s)})

    def parse(self) -> Ast:
        node = self.expr()
        if self.peek():
            self.fail({"'+'", "'-'", "'*'", "factor", "end of input"})
        return node

    def expr(self) -> Ast:
        node = self.term()
        while True:
            ch = self.peek()
            if ch not in "+-" or not ch:
                return node
            self.pos += 1
            node = Sum(node, self.term(), negate_right=ch == "-")

    def starts_factor(self) -> bool:
        ch = self.peek()
        return bool(ch) and (ch in "ca(I-" or ch.isdigit())

    def term(self) -> Ast:
        node = self.factor()
        while True:
            if self.eat("*"):
                node = Product(node, self.factor())
            elif self.starts_factor() and self.peek() != "-":
                node = Product(node, self.factor())
            else:
                return node

    def postfix(self, node: Ast) -> Ast:
        while self.eat("'"):
            node = Adjoint(node)
        return node

    def factor(self) -> Ast:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            self.expect(")")
            return self.postfix(Group(inner))
        if ch == "I":
            self.pos += 1
            return self.postfix(Ident())
        if ch in ("c", "a"):
            self.pos += 1
            self.expect("(")
            index = self.integer()
            self.expect(")")
            return self.postfix(Gen(ch == "c", index))
        if ch == "-" or ch.isdigit():
            q = self.rational()
            if self.eat("*"):
                return Scaled(q, self.factor())
            return Num(q)
        self.fail({"'('", "'I'", "'c('", "'a('", "rational"})

    def integer(self) -> int:
        self.skip()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] == "-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            self.fail({"digit"})
        return int(self.text[start : self.pos])

    def rational(self) -> Fraction:
        start = self.pos
        num = self.integer()
        if self.eat("/"):
            self.skip()
            den_pos = self.pos
            den = self.integer()
            if self.text[den_pos] == "-":
                self.fail({"digit"}, pos=den_pos)
            if den == 0:
                self.fail((), "zero denominator", pos=start)
            return Fraction(num, den)
        return Fraction(num)


def parse(src: str) -> Ast:
    return _Parser(src).parse()


def eval_ast(t: Ast) -> Element:
    if isinstance(t, Num):
        return element_scale(t.value, Element.identity())
    if isinstance(t, Ident):
        return Element.identity()
    if isinstance(t, Gen):
        b = BasisIndex((t.index,), ()) if t.creator else BasisIndex((), (t.index,))
        return Element._trusted({b: Fraction(1)})
    if isinstance(t, Group):
        return eval_ast(t.inner)
    if isinstance(t, Adjoint):
        return adjoint(eval_ast(t.operand))
    if isinstance(t, Scaled):
        return element_scale(t.scalar, eval_ast(t.operand))
    if isinstance(t, Product):
        return multiply(eval_ast(t.left), eval_ast(t.right))
    if isinstance(t, Sum):
        right = eval_ast(t.right)
        return element_add(eval_ast(t.left), element_scale(-1, right) if t.negate_right else right)
    raise TypeError(f"not an expression node: {t!r}")


def evaluate(src: str) -> Element:
    return eval_ast(parse(src))


def expand_words(t: Ast) -> list:
    """Expand into (coefficient, word) pairs in the free algebra, before any rewriting."""
    if isinstance(t, Num):
        return [(t.value, ())]
    if isinstance(t, Ident):
        return [(Fraction(1), ())]
    if isinstance(t, Gen):
        return [(Fraction(1), (Letter(t.creator, t.index),))]
    if isinstance(t, Group):
        return expand_words(t.inner)
    if isinstance(t, Adjoint):
        return [(q, tuple(x.adjoint() for x in reversed(w))) for q, w in expand_words(t.operand)]
    if isinstance(t, Scaled):
        return [(t.scalar * q, w) for q, w in expand_words(t.operand)]
    if isinstance(t, Product):
        right = expand_words(t.right)
        return [(p * q, u + w) for p, u in expand_words(t.left) for q, w in right]
    if isinstance(t, Sum):
        sign = -1 if t.negate_right else 1
        return expand_words(t.left) + [(sign * q, w) for q, w in expand_words(t.right)]
    raise TypeError(f"not an expression node: {t!r}")


def format_element(x: Element, mode: str = "text") -> str:
    if mode == "json":
        return x.to_json()
    if mode != "text":
        raise ValueError(f"unknown format {mode!r}")
    items = x.sorted_items()
    if not items:
        return "0"
    parts = []
    for n, (b, q) in enumerate(items):
        word = format_word(b.letters())
        if n == 0:
            parts.append(f"{'−' if q < 0 else ''}{abs(q)}·{word}")
        else:
            parts.append(f"{'−' if q < 0 else '+'} {abs(q)}·{word}")
    return " ".join(parts)
