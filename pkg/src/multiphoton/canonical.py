"""Nonlinear canonical transformations and the multiphoton Hamiltonians.

The transformed mode is ``b = mu*a + nu*ad + gamma*F(X_i)``.  Symbolically
``mu``, ``nu`` and ``gamma`` are free complex symbols (with conjugate partners
``*_bar``); the real coupling strength is the symbol ``gt``.  With the phase
fixed to zero, ``mu = cosh r`` and ``nu = sinh r`` are real, so
``exp(r) = mu + nu`` and ``exp(-r) = mu - nu`` once ``mu^2 -> 1 + nu^2`` is
imposed.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .algebra import (
    ExactScalar,
    OperatorPoly,
    PolyCoeff,
    adjoint,
    commutator,
    conj_name,
    evaluate_numeric,
    substitute,
)
from .algebra.parser import ParseError, parse_with

MAX_DEGREE = 16

MU, NU, GAMMA, GT = "mu", "nu", "gamma", "gt"


class Variant(enum.Enum):
    """Which quadrature carries the nonlinearity."""

    I = 1
    II = 2

    @classmethod
    def parse(cls, value) -> "Variant":
        if isinstance(value, Variant):
            return value
        text = str(value).strip().upper()
        if text in ("I", "1", "X1"):
            return cls.I
        if text in ("II", "2", "X2"):
            return cls.II
        raise ValueError(f"unknown variant {value!r}; use I or II")


Coefficient = Union[int, Fraction, float, str]


@dataclass(frozen=True)
class NonlinearitySpec:
    """``F(X) = sum_k coefficients[k] * X**k`` on quadrature ``X_{quadrature_index}``.

    Coefficients are numbers or symbol names; symbols are treated as real.
    """

    quadrature_index: int
    coefficients: tuple = ()

    def __post_init__(self):
        if self.quadrature_index not in (1, 2):
            raise ValueError("quadrature_index must be 1 or 2")
        coeffs = list(self.coefficients)
        while coeffs and _is_zero_coeff(coeffs[-1]):
            coeffs.pop()
        for c in coeffs:
            if isinstance(c, complex) and c.imag:
                raise ValueError("F must be Hermitian: complex coefficient given")
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def monomial(cls, quadrature_index: int, power: int, scale: Coefficient = 1) -> "NonlinearitySpec":
        return cls(quadrature_index, tuple([0] * power + [scale]))

    @classmethod
    def zero(cls, quadrature_index: int = 1) -> "NonlinearitySpec":
        return cls(quadrature_index, ())

    @classmethod
    def parse(cls, text: str, quadrature_index: int | None = None) -> "NonlinearitySpec":
        """Parse e.g. ``"X2^2"`` or ``"X1 + 1/2*X1^3"``; only one quadrature may appear."""
        seen: set[int] = set()

        def atom(name: str, pos: int):
            if name in ("X1", "X2"):
                seen.add(int(name[1]))
                return _UPoly({1: PolyCoeff.const(1)})
            if name in ("a", "ad", "i", "sqrt2"):
                raise ParseError(f"{name!r} is not allowed in F", pos)
            return _UPoly({0: PolyCoeff.symbol(name)})

        poly = parse_with(text, atom, lambda q: _UPoly({0: PolyCoeff.const(q)}), MAX_DEGREE)
        if len(seen) > 1:
            raise ValueError("F may depend on only one quadrature")
        idx = seen.pop() if seen else (quadrature_index or 1)
        if quadrature_index is not None and idx != quadrature_index:
            raise ValueError(f"F is a function of X{idx}, expected X{quadrature_index}")
        deg = max(poly.terms, default=0)
        coeffs = []
        for k in range(deg + 1):
            c = poly.terms.get(k, PolyCoeff())
            coeffs.append(_coeff_to_plain(c))
        return cls(idx, tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def symbols(self) -> set[str]:
        return {c for c in self.coefficients if isinstance(c, str)}

    def coeff_poly(self, k: int) -> PolyCoeff:
        c = self.coefficients[k]
        if isinstance(c, str):
            return PolyCoeff.symbol(c)
        return PolyCoeff.const(ExactScalar.of(c))

    def operator(self) -> OperatorPoly:
        if self.degree > MAX_DEGREE:
            raise ValueError(f"degree {self.degree} exceeds cap {MAX_DEGREE}")
        X = OperatorPoly.X1() if self.quadrature_index == 1 else OperatorPoly.X2()
        out = OperatorPoly()
        power = OperatorPoly.const(1)
        for k in range(len(self.coefficients)):
            if not _is_zero_coeff(self.coefficients[k]):
                out = out + power * self.coeff_poly(k)
            power = power * X
        return out

    def _floats(self) -> list[float]:
        out = []
        for c in self.coefficients:
            if isinstance(c, str):
                raise ValueError(f"symbolic coefficient {c!r} has no numeric value")
            out.append(float(c))
        return out

    def value(self, x):
        """Numeric ``F(x)``."""
        total = 0.0 * x
        for k, c in enumerate(self._floats()):
            total = total + c * x**k
        return total

    def antiderivative(self, x):
        """Numeric ``G(x) = int_0^x F(y) dy``."""
        total = 0.0 * x
        for k, c in enumerate(self._floats()):
            total = total + c * x ** (k + 1) / (k + 1)
        return total

    def format(self) -> str:
        if self.is_zero():
            return "0"
        name = f"X{self.quadrature_index}"
        parts = []
        for k, c in enumerate(self.coefficients):
            if _is_zero_coeff(c):
                continue
            xs = "" if k == 0 else (name if k == 1 else f"{name}^{k}")
            cs = str(c)
            parts.append(cs if not xs else (xs if cs == "1" else f"{cs}*{xs}"))
        return " + ".join(parts)


def _is_zero_coeff(c) -> bool:
    return not isinstance(c, str) and c == 0


def _coeff_to_plain(c: PolyCoeff):
    if c.is_zero():
        return 0
    if c.is_constant():
        s = c.constant()
        if s.im or s.re2 or s.im2:
            raise ValueError("F coefficients must be rational reals or real symbols")
        return s.re
    items = list(c.items())
    if len(items) == 1:
        mono, s = items[0]
        if s == ExactScalar.of(1) and len(mono) == 1 and mono[0][1] == 1:
            return mono[0][0]
    raise ValueError(f"unsupported F coefficient {c}")


class _UPoly:
    """Univariate polynomial with PolyCoeff coefficients (parser ring for F)."""

    def __init__(self, terms):
        self.terms = {k: v for k, v in terms.items() if v}

    def __add__(self, o):
        out = dict(self.terms)
        for k, v in o.terms.items():
            out[k] = out.get(k, PolyCoeff()) + v
        return _UPoly(out)

    def __neg__(self):
        return _UPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        out = {}
        for i, u in self.terms.items():
            for j, v in o.terms.items():
                out[i + j] = out.get(i + j, PolyCoeff()) + u * v
        return _UPoly(out)

    def __pow__(self, n):
        out = _UPoly({0: PolyCoeff.const(1)})
        for _ in range(n):
            out = out * self
        return out


@dataclass(frozen=True)
class CanonicalParams:
    """Numeric transformation parameters; the coupling input is the real strength."""

    r: float
    gamma_tilde: float
    variant: Variant
    phi: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant.parse(self.variant))
        if self.phi != 0:
            raise ValueError("only phi = 0 is supported; general squeezing phases are out of scope")

    @property
    def mu(self) -> float:
        return math.cosh(self.r)

    @property
    def nu(self) -> float:
        return math.sinh(self.r)

    @property
    def gamma(self) -> complex:
        return 1j * self.gamma_tilde if self.variant is Variant.I else complex(self.gamma_tilde)

    def bindings(self) -> dict[str, complex]:
        return {MU: self.mu, NU: self.nu, GAMMA: self.gamma, GT: self.gamma_tilde}


def _sym(name: str) -> PolyCoeff:
    return PolyCoeff.symbol(name)


def constraint_bindings(variant: Variant, F: NonlinearitySpec | None = None) -> dict[str, PolyCoeff]:
    """Substitutions that impose phi = 0, the variant's linear constraint and Bogoliubov.

    ``gamma`` becomes ``i*gt`` (variant I) or ``gt`` (variant II) with ``gt`` real.
    """
    variant = Variant.parse(variant)
    i = ExactScalar.i()
    b: dict[str, PolyCoeff] = {
        conj_name(MU): _sym(MU),
        conj_name(NU): _sym(NU),
        conj_name(GT): _sym(GT),
    }
    if variant is Variant.I:
        b[GAMMA] = _sym(GT) * i
        b[conj_name(GAMMA)] = _sym(GT) * (-i)
    else:
        b[GAMMA] = _sym(GT)
        b[conj_name(GAMMA)] = _sym(GT)
    if F is not None:
        for s in F.symbols():
            b[conj_name(s)] = _sym(s)
    b[f"{MU}^2"] = _sym(NU) ** 2 + 1
    return b


def _check_F(F: NonlinearitySpec):
    if F.degree > MAX_DEGREE:
        raise ValueError(f"degree {F.degree} exceeds cap {MAX_DEGREE}")


def build_mode(F: NonlinearitySpec, params: CanonicalParams | None = None):
    """``b = mu*a + nu*ad + gamma*F(X_i)``.

    Symbolic (free complex ``mu``, ``nu``, ``gamma``) when ``params`` is None,
    otherwise a numeric map monomial -> complex coefficient.
    """
    _check_F(F)
    b = OperatorPoly.a() * _sym(MU) + OperatorPoly.ad() * _sym(NU) + F.operator() * _sym(GAMMA)
    if params is None:
        return b
    if params.variant.value != F.quadrature_index:
        raise ValueError("variant does not match the quadrature of F")
    return evaluate_numeric(b, params.bindings())


def check_canonical(mu: complex, nu: complex, gamma: complex, variant) -> tuple[float, float]:
    """Residuals of the two canonical constraints for free complex coefficients."""
    variant = Variant.parse(variant)
    res1 = abs(mu) ** 2 - abs(nu) ** 2 - 1.0
    z = mu * complex(gamma).conjugate() - complex(nu).conjugate() * gamma
    res2 = z.real if variant is Variant.I else z.imag
    return float(res1), float(res2)


def verify_ccr(F: NonlinearitySpec, variant=None) -> OperatorPoly:
    """``[b, b^dagger]`` with both constraint sets imposed; equals 1 for canonical maps."""
    variant = Variant(F.quadrature_index) if variant is None else Variant.parse(variant)
    b = build_mode(F)
    c = commutator(b, adjoint(b))
    return substitute(c, constraint_bindings(variant, F))


def expand_hamiltonian(F: NonlinearitySpec, variant=None, params: CanonicalParams | None = None):
    """``b^dagger b + 1/2`` normal ordered, constraints imposed (symbolic) or evaluated."""
    variant = Variant(F.quadrature_index) if variant is None else Variant.parse(variant)
    b = build_mode(F)
    H = adjoint(b) * b + OperatorPoly.const(Fraction(1, 2))
    H = substitute(H, constraint_bindings(variant, F))
    if params is None:
        return H
    return evaluate_numeric(H, {MU: params.mu, NU: params.nu, GT: params.gamma_tilde})


def quadratic_form_hamiltonian(F: NonlinearitySpec, variant=None) -> OperatorPoly:
    """Quadrature form ``e^{2r_i}/2 X_i^2 + e^{-2r_i}/2 [X_j + sqrt2 gt e^{r_i} F(X_i)]^2``.

    ``r_1 = r``, ``r_2 = -r``; ``e^{+-r}`` are represented as ``mu +- nu``.
    """
    variant = Variant(F.quadrature_index) if variant is None else Variant.parse(variant)
    _check_F(F)
    e_plus = _sym(MU) + _sym(NU)
    e_minus = _sym(MU) - _sym(NU)
    if variant is Variant.I:
        Xi, Xj, e_ri, e_mri = OperatorPoly.X1(), OperatorPoly.X2(), e_plus, e_minus
    else:
        Xi, Xj, e_ri, e_mri = OperatorPoly.X2(), OperatorPoly.X1(), e_minus, e_plus
    half = Fraction(1, 2)
    shifted = Xj + F.operator() * (_sym(GT) * e_ri * ExactScalar.sqrt2())
    H = Xi * Xi * (e_ri * e_ri * half) + shifted * shifted * (e_mri * e_mri * half)
    return substitute(H, constraint_bindings(variant, F))


def eq3_golden() -> dict[tuple[int, int], PolyCoeff]:
    """Printed four-photon Hamiltonian coefficients, in the mu/nu/gt ring.

    Uses cosh 2r = mu^2 + nu^2, sinh^2 r = nu^2, sinh 2r = 2 mu nu, e^r = mu + nu.
    """
    mu, nu, g = _sym(MU), _sym(NU), _sym(GT)
    half, quarter = Fraction(1, 2), Fraction(1, 4)
    e_r = mu + nu
    table = {
        (1, 1): mu * mu + nu * nu + g * g * 3,
        (0, 0): nu * nu + g * g * Fraction(3, 4) + half,
        (1, 0): g * e_r * half,
        (0, 1): g * e_r * half,
        (2, 0): (mu * nu * 2 - g * g * 3) * half,
        (0, 2): (mu * nu * 2 - g * g * 3) * half,
        (2, 1): g * e_r * half,
        (1, 2): g * e_r * half,
        (3, 0): -(g * e_r * half),
        (0, 3): -(g * e_r * half),
        (2, 2): g * g * Fraction(3, 2),
        (3, 1): -(g * g),
        (1, 3): -(g * g),
        (4, 0): g * g * quarter,
        (0, 4): g * g * quarter,
    }
    rule = {MU: (2, nu * nu + 1)}
    return {k: v.reduce_powers(rule) for k, v in table.items()}


def hamiltonian_terms_json(H, symbolic: bool = True) -> list[dict]:
    """Term list ``[{daggers, annihilators, coefficient}]`` for CLI output."""
    out = []
    if symbolic:
        for mono, c in H.items():
            out.append({"daggers": mono.dagger_power, "annihilators": mono.annihilation_power, "coefficient": c.format()})
    else:
        for mono in sorted(H, key=lambda m: (m.degree, m.dagger_power)):
            v = H[mono]
            out.append({"daggers": mono.dagger_power, "annihilators": mono.annihilation_power, "coefficient": [v.real, v.imag]})
    return out
