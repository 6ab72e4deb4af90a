"""Recursive-descent parser for the polynomial text grammar.

Accepted syntax: signed integer and ``a/b`` rational literals, variable
names ``[A-Za-z][A-Za-z0-9_]*``, binary ``+ - *``, exponentiation ``^``
with a non-negative integer exponent, and parentheses.  Implicit
multiplication (``2X``) is rejected.  ``/`` occurs only inside rational
literals, never as an operator between expressions.

``str(poly)`` emits the canonical form this parser accepts, so
serialize-then-parse reproduces the identical term map.
"""

from __future__ import annotations

from fractions import Fraction

from .context import VarContext
from .errors import PolyParseError
from .polynomial import Polynomial

_OPS = set("+-*^/()")


class _Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind: str, text: str, line: int, col: int):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        start_col = col
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and (text[j].isalpha() or text[j] == "_"):
                raise PolyParseError("implicit multiplication is not accepted", line, col)
            tokens.append(_Token("int", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("name", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch in _OPS:
            tokens.append(_Token(ch, ch, line, start_col))
            i += 1
            col += 1
            continue
        raise PolyParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], context: VarContext):
        self.tokens = tokens
        self.pos = 0
        self.context = context

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message: str, tok: _Token | None = None):
        tok = tok or self.peek()
        raise PolyParseError(message, tok.line, tok.col)

    def parse(self) -> Polynomial:
        poly = self.expr()
        if self.peek().kind != "eof":
            self.fail(f"unexpected {self.peek().text!r} after expression")
        return poly

    def expr(self) -> Polynomial:
        negate = False
        if self.peek().kind in ("+", "-"):
            negate = self.advance().kind == "-"
        acc = self.term()
        if negate:
            acc = -acc
        while self.peek().kind in ("+", "-"):
            op = self.advance().kind
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while self.peek().kind == "*":
            self.advance()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Polynomial:
        base = self.primary()
        while self.peek().kind == "^":
            self.advance()
            tok = self.peek()
            if tok.kind != "int":
                self.fail("exponent must be a non-negative integer")
            self.advance()
            base = base ** int(tok.text)
        return base

    def primary(self) -> Polynomial:
        tok = self.advance()
        if tok.kind == "int":
            num = int(tok.text)
            if self.peek().kind == "/":
                self.advance()
                den_tok = self.peek()
                if den_tok.kind != "int":
                    self.fail("denominator must be an integer")
                self.advance()
                den = int(den_tok.text)
                if den == 0:
                    self.fail("zero denominator", den_tok)
                return Polynomial.constant(self.context, Fraction(num, den))
            return Polynomial.constant(self.context, num)
        if tok.kind == "name":
            if tok.text not in self.context.variables:
                self.fail(f"unknown variable {tok.text!r}", tok)
            return Polynomial.variable(self.context, tok.text)
        if tok.kind == "(":
            inner = self.expr()
            if self.peek().kind != ")":
                self.fail("expected ')'")
            self.advance()
            return inner
        self.fail(f"unexpected {tok.text!r}" if tok.text else "unexpected end of input", tok)
        raise AssertionError  # unreachable


def parse_polynomial(text: str, context: VarContext) -> Polynomial:
    """Parse ``text`` into a polynomial over ``context``.

    Raises :class:`PolyParseError` with line/column on syntax errors and on
    names not present in the context.
    """
    return _Parser(_tokenize(text), context).parse()
