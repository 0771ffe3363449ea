"""Tiny recursive-descent parser for scalar expressions such as ``-X1^2*X2/3``."""

from __future__ import annotations

import re
from fractions import Fraction

from .fields import FieldDescriptor, Scalar

_TOKEN = re.compile(r"\s*(?:(\d+)|([xX])(\d+)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list[str]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"unexpected input at {text[pos:]!r}")
        num, _, idx, op = m.groups()
        if num is not None:
            out.append(num)
        elif idx is not None:
            out.append("X" + idx)
        else:
            out.append("^" if op == "**" else op)
        pos = m.end()
    return out


class _Parser:
    def __init__(self, F: FieldDescriptor, tokens: list[str]):
        self.F = F
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expr(self) -> Scalar:
        val = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self) -> Scalar:
        val = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            val = val * rhs if op == "*" else val / rhs
        return val

    def unary(self) -> Scalar:
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Scalar:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            sign = 1
            if self.peek() == "-":
                self.take()
                sign = -1
            tok = self.take()
            if tok is None or not tok.isdigit():
                raise ValueError("exponent must be an integer literal")
            return base ** (sign * int(tok))
        return base

    def atom(self) -> Scalar:
        tok = self.take()
        if tok is None:
            raise ValueError("unexpected end of expression")
        if tok == "(":
            val = self.expr()
            if self.take() != ")":
                raise ValueError("missing closing parenthesis")
            return val
        if tok.isdigit():
            return self.F(Fraction(int(tok)))
        if tok.startswith("X"):
            i = int(tok[1:]) - 1
            return self.F.var(i)
        raise ValueError(f"unexpected token {tok!r}")


def parse_scalar(F: FieldDescriptor, text: str) -> Scalar:
    p = _Parser(F, _tokenize(str(text)))
    val = p.expr()
    if p.peek() is not None:
        raise ValueError(f"trailing input in {text!r}")
    return val


def parse_scalar_list(F: FieldDescriptor, text: str) -> list[Scalar]:
    """Comma-separated expressions; parentheses may contain commas only at top level."""
    items, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            items.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    items.append("".join(cur))
    return [parse_scalar(F, s) for s in items if s.strip()]
