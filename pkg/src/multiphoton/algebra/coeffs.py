"""Commuting polynomial coefficients over named symbols.

Every symbol ``s`` has an involutive conjugation partner ``s_bar``; the
partner of ``s_bar`` is ``s``.  Nothing is assumed real: reality is imposed
by substituting ``s_bar -> s``.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .scalars import ONE, ZERO, ExactScalar

Monomial = tuple[tuple[str, int], ...]

CONJ_SUFFIX = "_bar"


def conj_name(name: str) -> str:
    if name.endswith(CONJ_SUFFIX):
        return name[: -len(CONJ_SUFFIX)]
    return name + CONJ_SUFFIX


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    powers = dict(a)
    for name, k in b:
        powers[name] = powers.get(name, 0) + k
    return tuple(sorted(powers.items()))


def _mono_key(mono: Monomial):
    return (sum(k for _, k in mono), mono)


class PolyCoeff:
    """Immutable polynomial ``sum scalar * prod(symbol**k)``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, ExactScalar] | None = None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                c = ExactScalar.of(c)
                if not c.is_zero():
                    clean[tuple(sorted((n, k) for n, k in mono if k))] = c
        self._terms = dict(sorted(clean.items(), key=lambda kv: _mono_key(kv[0])))
        self._hash = None

    @classmethod
    def const(cls, value) -> "PolyCoeff":
        return cls({(): ExactScalar.of(value)})

    @classmethod
    def symbol(cls, name: str, power: int = 1) -> "PolyCoeff":
        return cls({((name, power),): ONE})

    @property
    def terms(self) -> dict[Monomial, ExactScalar]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def symbols(self) -> set[str]:
        return {n for mono in self._terms for n, _ in mono}

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(not mono for mono in self._terms)

    def constant(self) -> ExactScalar:
        return self._terms.get((), ZERO)

    @staticmethod
    def of(value) -> "PolyCoeff":
        if isinstance(value, PolyCoeff):
            return value
        return PolyCoeff.const(value)

    def __add__(self, other) -> "PolyCoeff":
        o = PolyCoeff.of(other)
        out = dict(self._terms)
        for mono, c in o._terms.items():
            out[mono] = out.get(mono, ZERO) + c
        return PolyCoeff(out)

    __radd__ = __add__

    def __neg__(self) -> "PolyCoeff":
        return PolyCoeff({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "PolyCoeff":
        return self + (-PolyCoeff.of(other))

    def __rsub__(self, other) -> "PolyCoeff":
        return PolyCoeff.of(other) - self

    def __mul__(self, other) -> "PolyCoeff":
        o = PolyCoeff.of(other)
        out: dict[Monomial, ExactScalar] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in o._terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, ZERO) + c1 * c2
        return PolyCoeff(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "PolyCoeff":
        out = PolyCoeff.const(1)
        for _ in range(k):
            out = out * self
        return out

    def conjugate(self) -> "PolyCoeff":
        return PolyCoeff(
            {tuple((conj_name(n), k) for n, k in mono): c.conjugate() for mono, c in self._terms.items()}
        )

    def substitute(self, bindings: Mapping[str, "PolyCoeff"], power_rules: Mapping[str, tuple[int, "PolyCoeff"]] | None = None) -> "PolyCoeff":
        """Simultaneous symbol substitution followed by power reduction.

        ``power_rules`` maps a symbol to ``(k, replacement)`` meaning
        ``symbol**k -> replacement``, applied until no power >= k remains.
        """
        out = PolyCoeff()
        for mono, c in self._terms.items():
            term = PolyCoeff.const(c)
            for name, k in mono:
                if name in bindings:
                    term = term * (bindings[name] ** k)
                else:
                    term = term * PolyCoeff.symbol(name, k)
            out = out + term
        if power_rules:
            out = out.reduce_powers(power_rules)
        return out

    def reduce_powers(self, power_rules: Mapping[str, tuple[int, "PolyCoeff"]]) -> "PolyCoeff":
        for name, (k, repl) in power_rules.items():
            if name in repl.symbols():
                raise ValueError(f"power rule for {name!r} refers to itself")
        changed = True
        cur = self
        while changed:
            changed = False
            out = PolyCoeff()
            for mono, c in cur._terms.items():
                term = PolyCoeff.const(c)
                for name, e in mono:
                    rule = power_rules.get(name)
                    if rule is not None and e >= rule[0]:
                        q, rem = divmod(e, rule[0])
                        term = term * (rule[1] ** q) * PolyCoeff.symbol(name, rem)
                        changed = True
                    else:
                        term = term * PolyCoeff.symbol(name, e)
                out = out + term
            cur = out
        return cur

    def evaluate(self, values: Mapping[str, complex]) -> complex:
        total = 0j
        for mono, c in self._terms.items():
            v = c.to_complex()
            for name, k in mono:
                if name not in values:
                    raise KeyError(f"unbound symbol {name!r}")
                v *= values[name] ** k
            total += v
        return total

    def __eq__(self, other) -> bool:
        if isinstance(other, PolyCoeff):
            return self._terms == other._terms
        try:
            return self == PolyCoeff.of(other)
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def format(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for mono, c in self._terms.items():
            sym = "*".join(n if k == 1 else f"{n}^{k}" for n, k in mono)
            cs = c.format()
            if not sym:
                pieces.append(cs if _is_atomic(cs) else f"({cs})")
            elif c == ONE:
                pieces.append(sym)
            elif c == -ONE:
                pieces.append(f"-{sym}")
            elif _is_atomic(cs):
                pieces.append(f"{cs}*{sym}")
            else:
                pieces.append(f"({cs})*{sym}")
        text = pieces[0]
        for p in pieces[1:]:
            text += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return text

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"PolyCoeff({self.format()})"


def _is_atomic(text: str) -> bool:
    body = text[1:] if text.startswith("-") else text
    return " " not in body


def poly_sum(items: Iterable[PolyCoeff]) -> PolyCoeff:
    out = PolyCoeff()
    for it in items:
        out = out + it
    return out
