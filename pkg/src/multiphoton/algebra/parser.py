"""Expression syntax for single-mode operator polynomials.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INT)?
    atom   := NUMBER | NAME | "(" expr ")"

``NUMBER`` is an integer, a rational ``p/q`` or a decimal.  Reserved names:
``a``, ``ad`` (creation), ``X1``, ``X2``, ``i`` and ``sqrt2``.  Every other
name is a commuting symbol; ``s_bar`` is the conjugate of ``s``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .coeffs import PolyCoeff
from .operators import OperatorPoly
from .scalars import ExactScalar

RESERVED = ("a", "ad", "X1", "X2", "i", "sqrt2")

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+/\d+|\d+\.\d*|\.\d+|\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()]))"
)


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}", pos + len(text[pos:]) - len(text[pos:].lstrip()))
        kind = m.lastgroup
        start = m.start(kind)
        toks.append(_Tok(kind, m.group(kind), start))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, atom: Callable[[str, int], object], number: Callable[[Fraction], object], max_exponent: int | None):
        self.toks = _tokenize(text)
        self.k = 0
        self.atom_fn = atom
        self.number_fn = number
        self.max_exponent = max_exponent

    def peek(self) -> _Tok:
        return self.toks[self.k]

    def take(self) -> _Tok:
        t = self.toks[self.k]
        self.k += 1
        return t

    def expect_op(self, op: str) -> _Tok:
        t = self.take()
        if t.kind != "op" or t.text != op:
            raise ParseError(f"expected {op!r}, found {t.text or 'end of input'!r}", t.pos)
        return t

    def parse(self):
        value = self.expr()
        t = self.peek()
        if t.kind != "end":
            raise ParseError(f"unexpected {t.text!r}", t.pos)
        return value

    def expr(self):
        value = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.take().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek().kind == "op" and self.peek().text == "*":
            self.take()
            value = value * self.unary()
        return value

    def unary(self):
        t = self.peek()
        if t.kind == "op" and t.text in "+-":
            self.take()
            v = self.unary()
            return -v if t.text == "-" else v
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            t = self.take()
            if t.kind == "op" and t.text == "-":
                raise ParseError("negative exponent", t.pos)
            if t.kind != "num" or not t.text.isdigit():
                raise ParseError("exponent must be a non-negative integer", t.pos)
            k = int(t.text)
            if self.max_exponent is not None and k > self.max_exponent:
                raise ParseError(f"exponent {k} exceeds cap {self.max_exponent}", t.pos)
            return base**k
        return base

    def atom(self):
        t = self.take()
        if t.kind == "num":
            return self.number_fn(Fraction(t.text))
        if t.kind == "name":
            return self.atom_fn(t.text, t.pos)
        if t.kind == "op" and t.text == "(":
            v = self.expr()
            self.expect_op(")")
            return v
        raise ParseError(f"unexpected {t.text or 'end of input'!r}", t.pos)


def _operator_atom(name: str, pos: int) -> OperatorPoly:
    if name == "a":
        return OperatorPoly.a()
    if name == "ad":
        return OperatorPoly.ad()
    if name == "X1":
        return OperatorPoly.X1()
    if name == "X2":
        return OperatorPoly.X2()
    if name == "i":
        return OperatorPoly.const(ExactScalar.i())
    if name == "sqrt2":
        return OperatorPoly.const(ExactScalar.sqrt2())
    return OperatorPoly.symbol(name)


def parse_expr(text: str, max_exponent: int | None = None) -> OperatorPoly:
    """Parse an expression into its normal-ordered polynomial."""
    return _Parser(text, _operator_atom, OperatorPoly.const, max_exponent).parse()


def parse_with(text: str, atom: Callable[[str, int], object], number: Callable[[Fraction], object], max_exponent: int | None = None):
    """Evaluate the grammar in a caller-supplied ring."""
    return _Parser(text, atom, number, max_exponent).parse()


def parse_coeff(text: str) -> PolyCoeff:
    """Parse an operator-free expression into a :class:`PolyCoeff`."""
    def atom(name: str, pos: int):
        if name in ("a", "ad", "X1", "X2"):
            raise ParseError(f"operator {name!r} not allowed in a coefficient", pos)
        if name == "i":
            return PolyCoeff.const(ExactScalar.i())
        if name == "sqrt2":
            return PolyCoeff.const(ExactScalar.sqrt2())
        return PolyCoeff.symbol(name)

    return _Parser(text, atom, PolyCoeff.const, None).parse()


def format_expr(A: OperatorPoly) -> str:
    return A.format()
