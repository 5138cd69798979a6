"""Exact scalars in Q(i)[sqrt2]."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

_ZERO = Fraction(0)

# _BASIS_PRODUCT[j][k] = (slot, factor) for e_j * e_k over (1, i, s, i*s)
_BASIS_PRODUCT = (
    ((0, 1), (1, 1), (2, 1), (3, 1)),
    ((1, 1), (0, -1), (3, 1), (2, -1)),
    ((2, 1), (3, 1), (0, 2), (1, 2)),
    ((3, 1), (2, -1), (1, 2), (0, -2)),
)


def _frac(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        # decimal reading keeps user input like 0.14 exact
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot make an exact rational from {value!r}")


@dataclass(frozen=True, slots=True)
class ExactScalar:
    """The number ``(re + im*i) + (re2 + im2*i)*sqrt2`` with rational parts."""

    re: Fraction = _ZERO
    im: Fraction = _ZERO
    re2: Fraction = _ZERO
    im2: Fraction = _ZERO

    @classmethod
    def of(cls, value) -> "ExactScalar":
        if isinstance(value, ExactScalar):
            return value
        if isinstance(value, complex):
            return cls(_frac(value.real), _frac(value.imag))
        return cls(_frac(value))

    @classmethod
    def sqrt2(cls) -> "ExactScalar":
        return cls(_ZERO, _ZERO, Fraction(1), _ZERO)

    @classmethod
    def i(cls) -> "ExactScalar":
        return cls(_ZERO, Fraction(1))

    def is_zero(self) -> bool:
        return not (self.re or self.im or self.re2 or self.im2)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other) -> "ExactScalar":
        o = ExactScalar.of(other)
        return ExactScalar(self.re + o.re, self.im + o.im, self.re2 + o.re2, self.im2 + o.im2)

    __radd__ = __add__

    def __neg__(self) -> "ExactScalar":
        return ExactScalar(-self.re, -self.im, -self.re2, -self.im2)

    def __sub__(self, other) -> "ExactScalar":
        return self + (-ExactScalar.of(other))

    def __rsub__(self, other) -> "ExactScalar":
        return ExactScalar.of(other) - self

    def __mul__(self, other) -> "ExactScalar":
        o = ExactScalar.of(other)
        # basis 1, i, s, i*s with s*s = 2; only nonzero parts are multiplied
        out = [_ZERO, _ZERO, _ZERO, _ZERO]
        mine = [(k, v) for k, v in enumerate((self.re, self.im, self.re2, self.im2)) if v]
        theirs = [(k, v) for k, v in enumerate((o.re, o.im, o.re2, o.im2)) if v]
        for j, u in mine:
            for k, v in theirs:
                slot, factor = _BASIS_PRODUCT[j][k]
                out[slot] += factor * u * v
        return ExactScalar(*out)

    __rmul__ = __mul__

    def conjugate(self) -> "ExactScalar":
        return ExactScalar(self.re, -self.im, self.re2, -self.im2)

    def inverse(self) -> "ExactScalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        # multiply by the sqrt2-conjugate, then by the complex conjugate
        flipped = ExactScalar(self.re, self.im, -self.re2, -self.im2)
        n = self * flipped  # lies in Q(i)
        denom = n.re * n.re + n.im * n.im
        n_inv = ExactScalar(n.re / denom, -n.im / denom)
        return flipped * n_inv

    def __truediv__(self, other) -> "ExactScalar":
        return self * ExactScalar.of(other).inverse()

    def __pow__(self, k: int) -> "ExactScalar":
        if k < 0:
            return self.inverse() ** (-k)
        out = ExactScalar(Fraction(1))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, ExactScalar):
            return (self.re, self.im, self.re2, self.im2) == (other.re, other.im, other.re2, other.im2)
        try:
            return self == ExactScalar.of(other)
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        return hash((self.re, self.im, self.re2, self.im2))

    def to_complex(self) -> complex:
        s2 = math.sqrt(2.0)
        return complex(float(self.re) + float(self.re2) * s2, float(self.im) + float(self.im2) * s2)

    def format(self) -> str:
        """Text accepted back by the expression parser."""
        parts = []
        for value, suffix in ((self.re, ""), (self.im, "i"), (self.re2, "sqrt2"), (self.im2, "i*sqrt2")):
            if not value:
                continue
            mag = abs(value)
            sign = "-" if value < 0 else "+"
            if not suffix:
                body = _fmt_frac(mag)
            elif mag == 1:
                body = suffix
            else:
                body = f"{_fmt_frac(mag)}*{suffix}"
            parts.append((sign, body))
        if not parts:
            return "0"
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"ExactScalar({self.format()})"


def _fmt_frac(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


ZERO = ExactScalar()
ONE = ExactScalar(Fraction(1))
I = ExactScalar.i()
SQRT2 = ExactScalar.sqrt2()
HALF_SQRT2 = ExactScalar(_ZERO, _ZERO, Fraction(1, 2))
