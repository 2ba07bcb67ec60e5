"""Polynomial text grammar.

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INTEGER)?
    atom   := INTEGER | IDENT | "(" expr ")"

``^`` binds tighter than ``*``, which binds tighter than ``+``/``-``.
Identifiers match ``[a-zA-Z][a-zA-Z0-9_]*``; whitespace is insignificant.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import ParseError
from .poly import Poly, PolyRing

_TOKEN = re.compile(r"\s*(?:(\d+)|([a-zA-Z][a-zA-Z0-9_]*)|(\S)|$)")


@dataclass
class Token:
    kind: str  # "int", "ident", "op", "end"
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.end() == pos:
            break
        if m.group(1) is not None:
            tokens.append(Token("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(Token("ident", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*^()":
                raise _error(text, m.start(3), f"unexpected character {ch!r}")
            tokens.append(Token("op", ch, m.start(3)))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


def _error(text: str, pos: int, message: str, line: int = 1, column: int = 1) -> ParseError:
    before = text[:pos]
    ln = before.count("\n")
    col = pos - (before.rfind("\n") + 1)
    if ln == 0:
        return ParseError(message, line, column + col)
    return ParseError(message, line + ln, col + 1)


class _Parser:
    def __init__(self, text: str, ring: PolyRing, line: int, column: int):
        self.text = text
        self.ring = ring
        self.line = line
        self.column = column
        try:
            self.tokens = tokenize(text)
        except ParseError as exc:
            # re-anchor the position at the caller's offset
            raise _shift(exc, line, column) from None
        self.i = 0

    def error(self, tok: Token, message: str) -> ParseError:
        return _error(self.text, tok.pos, message, self.line, self.column)

    def peek(self) -> Token:
        return self.tokens[self.i]

    def take(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self) -> Poly:
        if self.peek().kind == "end":
            raise self.error(self.peek(), "empty polynomial")
        result = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise self.error(tok, f"unexpected {tok.text!r}")
        return result

    def expr(self) -> Poly:
        acc = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.take().text
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> Poly:
        acc = self.unary()
        while self.peek().kind == "op" and self.peek().text == "*":
            self.take()
            acc = acc * self.unary()
        return acc

    def unary(self) -> Poly:
        tok = self.peek()
        if tok.kind == "op" and tok.text in "+-":
            self.take()
            inner = self.unary()
            return -inner if tok.text == "-" else inner
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            tok = self.take()
            if tok.kind != "int":
                raise self.error(tok, "exponent must be a non-negative integer")
            base = base ** int(tok.text)
            nxt = self.peek()
            if nxt.kind == "op" and nxt.text == "^":
                raise self.error(nxt, "chained exponents need parentheses")
        return base

    def atom(self) -> Poly:
        tok = self.take()
        if tok.kind == "int":
            return self.ring.constant(int(tok.text))
        if tok.kind == "ident":
            if tok.text not in self.ring.names:
                raise self.error(tok, f"unknown variable {tok.text!r}")
            return self.ring.var(tok.text)
        if tok.kind == "op" and tok.text == "(":
            inner = self.expr()
            close = self.take()
            if not (close.kind == "op" and close.text == ")"):
                raise self.error(close, "expected ')'")
            return inner
        if tok.kind == "end":
            raise self.error(tok, "unexpected end of input")
        raise self.error(tok, f"unexpected {tok.text!r}")


def _shift(exc: ParseError, line: int, column: int) -> ParseError:
    if exc.line == 1:
        return ParseError(exc.message, line, column + exc.column - 1)
    return ParseError(exc.message, line + exc.line - 1, exc.column)


def parse_poly(text: str, ring: PolyRing, line: int = 1, column: int = 1) -> Poly:
    """Parse ``text`` into a polynomial of ``ring``.

    ``line``/``column`` locate the text inside a larger document so that
    diagnostics point at the right place.
    """
    return _Parser(text, ring, line, column).parse()
