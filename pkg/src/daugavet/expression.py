"""Tiny arithmetic grammar for kernel densities and coefficients.

    expr  := term (("+" | "-") term)*
    term  := unary ("*" unary)*
    unary := "-" unary | atom
    atom  := number | "s" | "t" | "pi" | "(" expr ")" | ("sin" | "cos") "(" expr ")"

There is no division and no exp, so every expression is total on [0, 1]^2.
Evaluation broadcasts over numpy arrays.  Expressions free of ``pi``, ``sin``
and ``cos`` can also be evaluated exactly on Fractions.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .scalars import InputError


class ExpressionError(InputError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"{message}{where}")


@dataclass(frozen=True)
class Num:
    text: str

    @property
    def value(self) -> Fraction:
        return Fraction(self.text)


@dataclass(frozen=True)
class Var:
    name: str  # "s" or "t"


@dataclass(frozen=True)
class Pi:
    pass


@dataclass(frozen=True)
class Neg:
    operand: Expression


@dataclass(frozen=True)
class BinOp:
    op: str  # "+", "-", "*"
    left: Expression
    right: Expression


@dataclass(frozen=True)
class Call:
    func: str  # "sin" or "cos"
    arg: Expression


Expression = Num | Var | Pi | Neg | BinOp | Call

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*()]))"
)
_FUNCS = ("sin", "cos")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            bad = len(text) - len(text[pos:].lstrip())
            raise ExpressionError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, text, pos = self.take()
        if text != value or kind == "end":
            found = "end of input" if kind == "end" else repr(text)
            raise ExpressionError(f"expected {value!r}, found {found}", pos)

    def expr(self) -> Expression:
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expression:
        node = self.unary()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            node = BinOp("*", node, self.unary())
        return node

    def unary(self) -> Expression:
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return Neg(self.unary())
        return self.atom()

    def atom(self) -> Expression:
        kind, text, pos = self.take()
        if kind == "num":
            return Num(text)
        if kind == "name":
            if text in ("s", "t"):
                return Var(text)
            if text == "pi":
                return Pi()
            if text in _FUNCS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(text, arg)
            raise ExpressionError(f"unknown identifier {text!r}", pos)
        if (kind, text) == ("op", "("):
            node = self.expr()
            self.expect(")")
            return node
        found = "end of input" if kind == "end" else repr(text)
        raise ExpressionError(f"unexpected {found}", pos)


def parse_expression(text: str) -> Expression:
    if not isinstance(text, str):
        raise ExpressionError(f"expression must be a string, got {type(text).__name__}")
    p = _Parser(text)
    node = p.expr()
    kind, tok, pos = p.peek()
    if kind != "end":
        raise ExpressionError(f"unexpected {tok!r}", pos)
    return node


def _prec(node: Expression) -> int:
    match node:
        case BinOp(op="+" | "-"):
            return 1
        case BinOp(op="*"):
            return 2
        case Neg():
            return 3
        case _:
            return 4


def to_text(node: Expression) -> str:
    """Canonical text with the fewest parentheses that re-parse to ``node``."""
    match node:
        case Num(text):
            return text
        case Var(name):
            return name
        case Pi():
            return "pi"
        case Call(func, arg):
            return f"{func}({to_text(arg)})"
        case Neg(operand):
            inner = to_text(operand)
            return f"-({inner})" if _prec(operand) < 3 else f"-{inner}"
        case BinOp(op, left, right):
            p = _prec(node)
            lt, rt = to_text(left), to_text(right)
            if _prec(left) < p:
                lt = f"({lt})"
            if _prec(right) <= p:
                rt = f"({rt})"
            return f"{lt}{op}{rt}"
    raise TypeError(f"not an expression node: {node!r}")


def variables(node: Expression) -> set[str]:
    match node:
        case Var(name):
            return {name}
        case Neg(operand) | Call(_, operand):
            return variables(operand)
        case BinOp(_, left, right):
            return variables(left) | variables(right)
    return set()


def is_rational(node: Expression) -> bool:
    """True when the expression can be evaluated exactly on rationals."""
    match node:
        case Pi() | Call():
            return False
        case Neg(operand):
            return is_rational(operand)
        case BinOp(_, left, right):
            return is_rational(left) and is_rational(right)
    return True


def evaluate(node: Expression, s=0.0, t=0.0, exact: bool = False):
    """Evaluate at ``(s, t)``; scalars or broadcastable numpy arrays.

    With ``exact=True`` numbers become Fractions and transcendental pieces
    raise :class:`ExpressionError`.
    """
    match node:
        case Num():
            return node.value if exact else float(node.value)
        case Var(name):
            return s if name == "s" else t
        case Pi():
            if exact:
                raise ExpressionError("pi has no exact rational value")
            return np.pi
        case Neg(operand):
            return -evaluate(operand, s, t, exact)
        case BinOp(op, left, right):
            a = evaluate(left, s, t, exact)
            b = evaluate(right, s, t, exact)
            if op == "+":
                return a + b
            if op == "-":
                return a - b
            return a * b
        case Call(func, arg):
            if exact:
                raise ExpressionError(f"{func} has no exact rational value")
            x = evaluate(arg, s, t, exact)
            return np.sin(x) if func == "sin" else np.cos(x)
    raise TypeError(f"not an expression node: {node!r}")
