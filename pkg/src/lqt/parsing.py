"""Parser for rational function expressions.

Grammar (whitespace insignificant):

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | base ('^' exponent)?
    base   := integer | identifier | '(' expr ')'

Exponents are integers, possibly negative.  Identifiers must name variables
of the target ring.  Printing a value and reparsing it in the same ring gives
the same value back.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable

from .functions import RationalFunction
from .polynomials import Polynomial


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOKEN = re.compile(r"\d+|[A-Za-z_][A-Za-z_0-9]*|[-+*/^()]|\S")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    for m in _TOKEN.finditer(text):
        tok = m.group()
        if not (tok.isdigit() or tok[0].isalpha() or tok[0] == "_"
                or tok in "+-*/^()"):
            raise ParseError(f"unexpected character {tok!r}", m.start())
        tokens.append((tok, m.start()))
    tokens.append(("", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: tuple[str, ...]):
        self.tokens = _tokenize(text)
        self.i = 0
        self.variables = variables
        self.one = RationalFunction.from_polynomial(Polynomial.one(variables))

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def pos(self) -> int:
        return self.tokens[self.i][1]

    def advance(self) -> str:
        tok = self.tokens[self.i][0]
        self.i += 1
        return tok

    def expect(self, tok: str) -> None:
        if self.peek() != tok:
            found = self.peek() or "end of input"
            raise ParseError(f"expected {tok!r}, found {found!r}", self.pos())
        self.advance()

    def parse(self) -> RationalFunction:
        value = self.expr()
        if self.peek() != "":
            raise ParseError(f"unexpected trailing input {self.peek()!r}",
                             self.pos())
        return value

    def expr(self) -> RationalFunction:
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.advance()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> RationalFunction:
        value = self.factor()
        while self.peek() in ("*", "/"):
            op = self.advance()
            pos = self.pos()
            rhs = self.factor()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ParseError("division by zero", pos)
                value = value / rhs
        return value

    def factor(self) -> RationalFunction:
        if self.peek() == "-":
            self.advance()
            return -self.factor()
        value = self.base()
        if self.peek() == "^":
            self.advance()
            pos = self.pos()
            n = self.exponent()
            if n < 0 and value.is_zero():
                raise ParseError("zero raised to a negative power", pos)
            value = value ** n
        return value

    def exponent(self) -> int:
        sign = 1
        if self.peek() == "-":
            self.advance()
            sign = -1
        tok = self.peek()
        if not tok.isdigit():
            found = tok or "end of input"
            raise ParseError(f"expected integer exponent, found {found!r}",
                             self.pos())
        self.advance()
        return sign * int(tok)

    def base(self) -> RationalFunction:
        tok = self.peek()
        if tok == "(":
            self.advance()
            value = self.expr()
            self.expect(")")
            return value
        if tok.isdigit():
            self.advance()
            return self.one.scale(Fraction(int(tok)))
        if tok and (tok[0].isalpha() or tok[0] == "_"):
            if tok not in self.variables:
                raise ParseError(
                    f"unknown variable {tok!r} (expected one of "
                    f"{', '.join(self.variables)})", self.pos())
            self.advance()
            return RationalFunction.variable(tok, self.variables)
        found = tok or "end of input"
        raise ParseError(f"expected a value, found {found!r}", self.pos())


def parse_expr(text: str, variables: Iterable[str]) -> RationalFunction:
    """Parse an expression into a RationalFunction over the given variables."""
    vs = tuple(variables)
    if not text.strip():
        raise ParseError("empty expression", 0)
    return _Parser(text, vs).parse()
