"""Recursive-descent parser for the polynomial text format.

Grammar (whitespace insignificant)::

    poly     := ["+"|"-"] term (("+"|"-") term)*
    term     := item ("*" item)*
    item     := coeff | var ("^" nat)?
    var      := "x" nat | "z"
    coeff    := "(" complex ")" | rational | "i"
    complex  := ["+"|"-"] rational [("+"|"-") [rational] "i"]
              | ["+"|"-"] [rational] "i"
    rational := nat ("/" nat)?

This is a mild superset of the documented grammar: a leading sign is
accepted and coefficients may appear anywhere in a product.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional

from ..errors import ParseError
from .multipoly import MultiPoly
from .scalar import ONE, GaussScalar
from .unipoly import UniPoly


class _Parser:
    def __init__(self, text: str, n_vars: Optional[int]):
        # n_vars None means univariate mode (variable z only)
        self.text = text
        self.pos = 0
        self.n_vars = n_vars

    # -- lexing helpers ---------------------------------------------------
    def _offset(self, pos: Optional[int] = None) -> int:
        p = self.pos if pos is None else pos
        return len(self.text[:p].encode("utf-8"))

    def error(self, msg: str, pos: Optional[int] = None):
        raise ParseError(msg, self._offset(pos))

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def eat(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def nat(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected a natural number")
        return int(self.text[start:self.pos])

    def rational(self) -> Fraction:
        num = self.nat()
        if self.eat("/"):
            at = self.pos
            den = self.nat()
            if den == 0:
                self.error("zero denominator", at)
            return Fraction(num, den)
        return Fraction(num)

    # -- grammar ----------------------------------------------------------
    def parse(self):
        self.skip()
        if self.pos == len(self.text):
            self.error("empty input")
        acc = self.zero()
        sign = 1
        if self.peek() in "+-":
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
        while True:
            t = self.term()
            acc = acc + (t if sign > 0 else -t)
            c = self.peek()
            if c == "":
                break
            if c in "+-":
                sign = -1 if c == "-" else 1
                self.pos += 1
                continue
            self.error(f"unexpected character {c!r}")
        return acc

    def zero(self):
        if self.n_vars is None:
            return UniPoly()
        return MultiPoly(self.n_vars)

    def one(self):
        if self.n_vars is None:
            return UniPoly([ONE])
        return MultiPoly.constant(self.n_vars, ONE)

    def term(self):
        acc = self.item()
        while self.eat("*"):
            acc = acc * self.item()
        return acc

    def item(self):
        c = self.peek()
        start = self.pos
        if c == "(":
            self.pos += 1
            val = self.complex_coeff()
            if not self.eat(")"):
                self.error("expected ')'")
            return self.one() * val
        if c.isdigit():
            return self.one() * GaussScalar(self.rational())
        if c == "i":
            self.pos += 1
            return self.one() * GaussScalar(0, 1)
        if c == "x":
            self.pos += 1
            j = self.nat()
            if self.n_vars is None:
                self.error("variable x%d not allowed in a univariate polynomial" % j, start)
            if j >= self.n_vars:
                self.error(f"variable index x{j} out of range for {self.n_vars} variables", start)
            base = MultiPoly.variable(self.n_vars, j)
            return self._power(base)
        if c == "z":
            self.pos += 1
            if self.n_vars is not None:
                self.error("variable z is reserved for curve components", start)
            return self._power(UniPoly.z())
        if c == "":
            self.error("unexpected end of input")
        self.error(f"unexpected character {c!r}")

    def _power(self, base):
        if self.eat("^"):
            return base ** self.nat()
        return base

    def complex_coeff(self) -> GaussScalar:
        sign = 1
        if self.peek() in "+-":
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
        if self.eat("i"):
            return GaussScalar(0, sign)
        first = self.rational() * sign
        if self.eat("i"):
            return GaussScalar(0, first)
        c = self.peek()
        if c in "+-":
            s2 = -1 if c == "-" else 1
            self.pos += 1
            if self.eat("i"):
                return GaussScalar(first, s2)
            im = self.rational() * s2
            if not self.eat("i"):
                self.error("expected 'i' after imaginary part")
            return GaussScalar(first, im)
        return GaussScalar(first)


def parse_poly(text: str, n_vars: int) -> MultiPoly:
    """Parse a polynomial in x0..x{n_vars-1}."""
    if n_vars < 1:
        raise ValueError("n_vars must be positive")
    return _Parser(text, n_vars).parse()


def parse_unipoly(text: str) -> UniPoly:
    """Parse a univariate polynomial in z (a curve component)."""
    return _Parser(text, None).parse()


def parse_many(texts: List[str], n_vars: int) -> List[MultiPoly]:
    return [parse_poly(t, n_vars) for t in texts]
