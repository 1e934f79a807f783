"""Recursive-descent parser for polynomial expressions.

Grammar (whitespace insignificant):

    expr     := sign? term (sign term)*
    sign     := '+' | '-'
    term     := factor ('*' factor)*
    factor   := base ('^' uint)?
    base     := 'x' | 'y' | 'z' | 'w' | rational | '(' expr ')'
    rational := uint ('/' uint)?

'w' denotes the generator of the coefficient field. Printed forms of
MultiPoly and CycloNumber parse back to equal values (round-trip).
"""

from __future__ import annotations

from fractions import Fraction

from .cyclotomic import CycloNumber
from .multipoly import MultiPoly


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int) -> None:
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.pos = pos
        self.text = text


class _Parser:
    def __init__(self, text: str, order: int) -> None:
        self.text = text
        self.order = order
        self.pos = 0

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.text, self.pos)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str) -> None:
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def uint(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise self.error("expected an unsigned integer")
        return int(self.text[start:self.pos])

    def rational(self) -> Fraction:
        num = self.uint()
        save = self.pos
        if self.peek() == "/":
            self.pos += 1
            self.skip_ws()
            if self.pos < len(self.text) and self.text[self.pos].isdigit():
                den = self.uint()
                if den == 0:
                    raise self.error("zero denominator")
                return Fraction(num, den)
            self.pos = save
        return Fraction(num)

    def base(self) -> MultiPoly:
        c = self.peek()
        if c in ("x", "y", "z"):
            self.pos += 1
            return MultiPoly.variable(c, self.order)
        if c == "w":
            self.pos += 1
            return MultiPoly.constant(CycloNumber.zeta(self.order), self.order)
        if c.isdigit():
            return MultiPoly.constant(self.rational(), self.order)
        if c == "(":
            self.pos += 1
            inner = self.expr()
            self.take(")")
            return inner
        raise self.error("expected a variable, number or parenthesized expression")

    def factor(self) -> MultiPoly:
        b = self.base()
        if self.peek() == "^":
            self.pos += 1
            return b ** self.uint()
        return b

    def term(self) -> MultiPoly:
        out = self.factor()
        while self.peek() == "*":
            self.pos += 1
            out = out * self.factor()
        return out

    def expr(self) -> MultiPoly:
        negate = False
        c = self.peek()
        if c in ("+", "-"):
            self.pos += 1
            negate = c == "-"
        out = self.term()
        if negate:
            out = -out
        while True:
            c = self.peek()
            if c not in ("+", "-"):
                break
            self.pos += 1
            nxt = self.term()
            out = out - nxt if c == "-" else out + nxt
        return out


def parse_poly(text: str, order: int = 3) -> MultiPoly:
    """Parse an expression into a MultiPoly over the given cyclotomic field."""
    p = _Parser(text, order)
    out = p.expr()
    p.skip_ws()
    if p.pos != len(text):
        raise p.error("unexpected trailing input")
    return out


def parse_scalar(text: str, order: int = 3) -> CycloNumber:
    """Parse a constant expression (no x, y, z) into a field element."""
    poly = parse_poly(text, order)
    if poly.total_degree() > 0:
        raise ParseError("expected a constant expression", text, 0)
    return poly.coefficient((0, 0, 0))
