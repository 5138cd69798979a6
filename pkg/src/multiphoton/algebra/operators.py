"""Normal-ordered polynomials in a single bosonic mode."""

from __future__ import annotations

import re
from math import comb, factorial
from typing import Iterable, Mapping, NamedTuple, Sequence

from .coeffs import PolyCoeff
from .scalars import HALF_SQRT2, ExactScalar


class OperatorMonomial(NamedTuple):
    """``ad^dagger_power * a^annihilation_power``."""

    dagger_power: int
    annihilation_power: int

    @property
    def degree(self) -> int:
        return self.dagger_power + self.annihilation_power

    def format(self) -> str:
        parts = []
        for name, k in (("ad", self.dagger_power), ("a", self.annihilation_power)):
            if k == 1:
                parts.append(name)
            elif k > 1:
                parts.append(f"{name}^{k}")
        return "*".join(parts) if parts else "1"


def _order_key(mono: OperatorMonomial):
    return (mono.degree, mono.dagger_power)


class OperatorPoly:
    """Immutable map ``OperatorMonomial -> PolyCoeff`` with no zero entries.

    Because every stored monomial is normal ordered, two operators are equal
    exactly when their term maps are equal.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                c = PolyCoeff.of(c)
                if c:
                    clean[OperatorMonomial(*mono)] = c
        self._terms = dict(sorted(clean.items(), key=lambda kv: _order_key(kv[0])))
        self._hash = None

    # constructors

    @classmethod
    def const(cls, value) -> "OperatorPoly":
        return cls({(0, 0): value})

    @classmethod
    def a(cls) -> "OperatorPoly":
        return cls({(0, 1): 1})

    @classmethod
    def ad(cls) -> "OperatorPoly":
        return cls({(1, 0): 1})

    @classmethod
    def X1(cls) -> "OperatorPoly":
        return cls({(1, 0): HALF_SQRT2, (0, 1): HALF_SQRT2})

    @classmethod
    def X2(cls) -> "OperatorPoly":
        # -i (a - ad) / sqrt2
        i_half = ExactScalar.i() * HALF_SQRT2
        return cls({(1, 0): i_half, (0, 1): -i_half})

    @classmethod
    def symbol(cls, name: str) -> "OperatorPoly":
        return cls.const(PolyCoeff.symbol(name))

    @staticmethod
    def of(value) -> "OperatorPoly":
        if isinstance(value, OperatorPoly):
            return value
        return OperatorPoly.const(value)

    # access

    @property
    def terms(self) -> dict[OperatorMonomial, PolyCoeff]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, daggers: int, annihilators: int) -> PolyCoeff:
        return self._terms.get(OperatorMonomial(daggers, annihilators), PolyCoeff())

    def symbols(self) -> set[str]:
        out: set[str] = set()
        for c in self._terms.values():
            out |= c.symbols()
        return out

    def degree(self) -> int:
        return max((m.degree for m in self._terms), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    # arithmetic

    def __add__(self, other) -> "OperatorPoly":
        o = OperatorPoly.of(other)
        out = dict(self._terms)
        for mono, c in o._terms.items():
            out[mono] = out[mono] + c if mono in out else c
        return OperatorPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "OperatorPoly":
        return OperatorPoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "OperatorPoly":
        return self + (-OperatorPoly.of(other))

    def __rsub__(self, other) -> "OperatorPoly":
        return OperatorPoly.of(other) - self

    def __mul__(self, other) -> "OperatorPoly":
        if not isinstance(other, OperatorPoly):
            c = PolyCoeff.of(other)
            return OperatorPoly({m: v * c for m, v in self._terms.items()})
        out: dict[OperatorMonomial, PolyCoeff] = {}
        for (m, n), c1 in self._terms.items():
            for (p, q), c2 in other._terms.items():
                c12 = c1 * c2
                # a^n ad^p = sum_k C(n,k) C(p,k) k! ad^(p-k) a^(n-k)
                for k in range(min(n, p) + 1):
                    w = comb(n, k) * comb(p, k) * factorial(k)
                    mono = OperatorMonomial(m + p - k, n + q - k)
                    term = c12 * w
                    out[mono] = out[mono] + term if mono in out else term
        return OperatorPoly(out)

    def __rmul__(self, other) -> "OperatorPoly":
        # scalars commute with everything
        return self * other

    def __pow__(self, k: int) -> "OperatorPoly":
        if k < 0:
            raise ValueError("negative operator power")
        out = OperatorPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, OperatorPoly):
            return self._terms == other._terms
        try:
            return self == OperatorPoly.of(other)
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # text

    def format(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for mono, c in self._terms.items():
            op = mono.format()
            cs = c.format()
            single = len(c.terms) == 1
            if op == "1":
                pieces.append(cs if single else f"({cs})")
            elif c == PolyCoeff.const(1):
                pieces.append(op)
            elif c == PolyCoeff.const(-1):
                pieces.append(f"-{op}")
            elif single and " " not in cs.lstrip("-"):
                pieces.append(f"{cs}*{op}")
            else:
                pieces.append(f"({cs})*{op}")
        text = pieces[0]
        for p in pieces[1:]:
            text += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return text

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"OperatorPoly({self.format()})"

    def to_json(self) -> list[dict]:
        """``[{m, n, terms: [{symbols, re, im, sqrt2_re, sqrt2_im}]}]`` with exact strings."""
        out = []
        for mono, c in self._terms.items():
            terms = []
            for sym, s in c.items():
                terms.append(
                    {
                        "symbols": {n: k for n, k in sym},
                        "re": str(s.re),
                        "im": str(s.im),
                        "sqrt2_re": str(s.re2),
                        "sqrt2_im": str(s.im2),
                    }
                )
            out.append({"m": mono.dagger_power, "n": mono.annihilation_power, "terms": terms})
        return out


def normal_order(word: Sequence[str], coefficient=1) -> OperatorPoly:
    """Normal-order a word of ``"a"``/``"ad"`` factors by repeated CCR rewrites.

    This is a literal rewrite system (``a ad -> ad a + 1``) kept separate from
    the closed-form product in :class:`OperatorPoly` so the two can check each
    other.
    """
    for f in word:
        if f not in ("a", "ad"):
            raise ValueError(f"unknown factor {f!r}")
    pending: list[tuple[tuple[str, ...], int]] = [(tuple(word), 1)]
    done: dict[tuple[int, int], int] = {}
    while pending:
        w, c = pending.pop()
        pos = next((j for j in range(len(w) - 1) if w[j] == "a" and w[j + 1] == "ad"), None)
        if pos is None:
            key = (w.count("ad"), w.count("a"))
            done[key] = done.get(key, 0) + c
            continue
        pending.append((w[:pos] + ("ad", "a") + w[pos + 2 :], c))
        pending.append((w[:pos] + w[pos + 2 :], c))
    coeff = PolyCoeff.of(coefficient)
    return OperatorPoly({k: coeff * v for k, v in done.items() if v})


def commutator(A: OperatorPoly, B: OperatorPoly) -> OperatorPoly:
    A, B = OperatorPoly.of(A), OperatorPoly.of(B)
    return A * B - B * A


def adjoint(A: OperatorPoly) -> OperatorPoly:
    """Hermitian adjoint: ``(c ad^m a^n)^dagger = conj(c) ad^n a^m``."""
    out: dict[tuple[int, int], PolyCoeff] = {}
    for (m, n), c in OperatorPoly.of(A).items():
        out[(n, m)] = c.conjugate()
    # ad^n a^m is already normal ordered
    return OperatorPoly(out)


_POWER_KEY = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\^(\d+)$")


def substitute(A: OperatorPoly, bindings: Mapping[str, object]) -> OperatorPoly:
    """Simultaneously substitute symbols, then apply power rules.

    Keys are symbol names (``"mu_bar"``) or power rules (``"mu^2"``, meaning
    every ``mu**k`` with ``k >= 2`` is rewritten).  A value may not mention
    any bound symbol.
    """
    plain: dict[str, PolyCoeff] = {}
    powers: dict[str, tuple[int, PolyCoeff]] = {}
    for key, value in bindings.items():
        value = PolyCoeff.of(value)
        m = _POWER_KEY.match(key)
        if m:
            k = int(m.group(2))
            if k < 1:
                raise ValueError(f"bad power rule {key!r}")
            powers[m.group(1)] = (k, value)
        else:
            plain[key] = value
    for key, value in plain.items():
        hit = value.symbols() & set(plain)
        if hit:
            raise ValueError(f"cyclic binding: value for {key!r} mentions bound symbol(s) {sorted(hit)}")
    for name, (_, value) in powers.items():
        if name in value.symbols():
            raise ValueError(f"cyclic binding: power rule for {name!r} mentions {name!r}")
    out = {}
    for mono, c in OperatorPoly.of(A).items():
        out[mono] = c.substitute(plain, powers)
    return OperatorPoly(out)


def evaluate_numeric(
    A: OperatorPoly, values: Mapping[str, complex], eps: float = 1e-14, check_conjugates: bool = True
) -> dict[OperatorMonomial, complex]:
    """Evaluate coefficients numerically.

    A conjugate symbol ``s_bar`` that is not given explicitly takes the value
    ``conj(values[s])``.  Entries with modulus below ``eps`` are dropped.
    """
    from .coeffs import conj_name

    vals = dict(values)
    for name in A.symbols():
        if name in vals:
            continue
        partner = conj_name(name)
        if partner in values:
            vals[name] = complex(values[partner]).conjugate()
        else:
            raise KeyError(f"unbound symbol {name!r}")
    if check_conjugates:
        for name in list(values):
            partner = conj_name(name)
            if partner in values and abs(complex(values[partner]) - complex(values[name]).conjugate()) > 1e-12:
                raise ValueError(f"inconsistent conjugate bindings for {name!r} and {partner!r}")
    out = {}
    for mono, c in A.items():
        v = c.evaluate(vals)
        if abs(v) >= eps:
            out[mono] = v
    return out


def operator_sum(items: Iterable[OperatorPoly]) -> OperatorPoly:
    out = OperatorPoly()
    for it in items:
        out = out + it
    return out
