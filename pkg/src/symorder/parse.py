"""Polynomial expressions for the command line.

Grammar::

    expr    := term (('+' | '-') term)*
    term    := unary ('*' unary)*
    unary   := ('+' | '-') unary | power
    power   := primary ('^' INT)?
    primary := INT ('/' INT)? | VAR | '(' expr ')'

Variables are ``x1`` .. ``xn``. Rationals appear only as literals.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

from .polynomial import Polynomial

MAX_EXPONENT = 32

_TOKEN = re.compile(r"\s*(?:(\d+)|(x\d+)|([-+*/^()]))")


_KIND_NAMES = {"int": "number", "var": "variable", "end": "end of input"}


class ParseError(ValueError):
    def __init__(self, message: str, position: int, expected: Sequence[str] = ()):
        self.position = position
        self.expected = tuple(expected)
        tail = f" (expected {' or '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message} at position {position}{tail}")


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    index: int
    position: int


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


Expr = Union[Num, Var, Neg, BinOp, Pow]


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start,
                             ("number", "variable", "operator"))
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("int", m.group(1), start))
        elif m.group(2):
            out.append(("var", m.group(2), start))
        else:
            out.append((m.group(3), m.group(3), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, *kinds):
        tok = self.peek()
        if tok[0] not in kinds:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"unexpected {what}", tok[2], [_KIND_NAMES.get(k, repr(k)) for k in kinds])
        self.i += 1
        return tok

    def expr(self) -> Expr:
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take("+", "-")[0]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.unary()
        while self.peek()[0] == "*":
            self.take("*")
            node = BinOp("*", node, self.unary())
        return node

    def unary(self) -> Expr:
        kind = self.peek()[0]
        if kind == "-":
            self.take("-")
            return Neg(self.unary())
        if kind == "+":
            self.take("+")
            return self.unary()
        return self.power()

    def power(self) -> Expr:
        base = self.primary()
        if self.peek()[0] == "^":
            self.take("^")
            _, digits, pos = self.take("int")
            e = int(digits)
            if e > MAX_EXPONENT:
                raise ParseError(f"exponent {e} exceeds {MAX_EXPONENT}", pos)
            return Pow(base, e)
        return base

    def primary(self) -> Expr:
        kind, text, pos = self.take("int", "var", "(")
        if kind == "int":
            value = Fraction(int(text))
            if self.peek()[0] == "/":
                self.take("/")
                _, den, dpos = self.take("int")
                if int(den) == 0:
                    raise ParseError("zero denominator", dpos)
                value /= int(den)
            return Num(value)
        if kind == "var":
            return Var(int(text[1:]), pos)
        node = self.expr()
        self.take(")")
        return node


def parse_expr(text: str) -> Expr:
    p = _Parser(text)
    if p.peek()[0] == "end":
        raise ParseError("empty expression", 0, ("number", "variable", "'('"))
    node = p.expr()
    p.take("end")
    return node


def evaluate(node: Expr, n: int) -> Polynomial:
    if isinstance(node, Num):
        return Polynomial.constant(n, node.value)
    if isinstance(node, Var):
        if not 1 <= node.index <= n:
            raise ParseError(f"unknown variable x{node.index} (ambient has x1..x{n})", node.position)
        return Polynomial.variable(n, node.index - 1)
    if isinstance(node, Neg):
        return -evaluate(node.arg, n)
    if isinstance(node, Pow):
        return evaluate(node.base, n) ** node.exponent
    a, b = evaluate(node.left, n), evaluate(node.right, n)
    if node.op == "+":
        return a + b
    if node.op == "-":
        return a - b
    return a * b


def parse_polynomial(text: str, n: int) -> Polynomial:
    return evaluate(parse_expr(text), n)
