"""Fock-space projection and photon counting statistics."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .errors import TruncationError
from .numerics import SampledWavefunction, hermite_functions
from .numerics.hermite import MAX_ORDER

DEFAULT_N = 120
TARGET_TAIL = 1e-8
MOMENT_TAIL = 1e-6
PROJECTION_TAIL = 1e-4


@dataclass(frozen=True, eq=False)
class FockExpansion:
    coefficients: np.ndarray
    truncation: int
    tail_mass: float

    @classmethod
    def from_coefficients(cls, c) -> "FockExpansion":
        c = np.asarray(c, dtype=complex)
        return cls(c, c.size - 1, float(1.0 - np.sum(np.abs(c) ** 2)))

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.coefficients) ** 2


def fock_coefficients(psi: SampledWavefunction, N: int) -> FockExpansion:
    """``c_n = int phi_n(x) psi(x) dx`` for ``n <= N`` (trapezoid on the sample grid)."""
    if psi.representation != "X1":
        raise ValueError("Fock projection needs the X1 representation")
    if not 0 <= N <= MAX_ORDER:
        raise ValueError(f"truncation must lie in [0, {MAX_ORDER}]")
    phi = hermite_functions(N, psi.x)
    c = phi @ psi.values * psi.grid.dx
    out = FockExpansion.from_coefficients(c)
    if out.tail_mass >= PROJECTION_TAIL:
        raise TruncationError(
            f"tail mass {out.tail_mass:.3g} at N={N}; increase N or widen the grid"
        )
    return out


def fock_auto(psi: SampledWavefunction, N: int = DEFAULT_N, target: float = TARGET_TAIL, cap: int = MAX_ORDER) -> FockExpansion:
    """Double the truncation until the tail mass drops below ``target``."""
    while True:
        try:
            f = fock_coefficients(psi, N)
        except TruncationError:
            if N >= cap:
                raise
            N = min(2 * N, cap)
            continue
        if f.tail_mass < target or N >= cap:
            return f
        N = min(2 * N, cap)


def photon_number_distribution(f: FockExpansion) -> np.ndarray:
    """``P(n) = |c_n|^2``; not renormalized by the tail."""
    return f.probabilities


def _falling(n: np.ndarray, k: int) -> np.ndarray:
    out = np.ones_like(n, dtype=float)
    for j in range(k):
        out *= n - j
    return out


def factorial_moment(f: FockExpansion, k: int) -> float:
    """``<ad^k a^k> = sum_n n!/(n-k)! P(n)``."""
    if not 1 <= k <= 8:
        raise ValueError("k must lie in [1, 8]")
    if f.tail_mass >= MOMENT_TAIL:
        raise TruncationError(f"tail mass {f.tail_mass:.3g} too heavy for moments")
    n = np.arange(f.coefficients.size, dtype=float)
    return float(np.sum(_falling(n, k) * f.probabilities))


def mean_photon_number(f: FockExpansion) -> float:
    return factorial_moment(f, 1)


def g_correlation(f: FockExpansion, k: int) -> float:
    """``g^(k)(0) = <ad^k a^k> / <ad a>^k``."""
    if k not in (2, 4):
        raise ValueError("only g2 and g4 are defined here")
    mean = factorial_moment(f, 1)
    if mean <= 0:
        raise ValueError("g correlation undefined for zero mean photon number")
    return factorial_moment(f, k) / mean**k


def moments(f: FockExpansion) -> dict:
    return {
        "mean_n": mean_photon_number(f),
        "g2": g_correlation(f, 2),
        "g4": g_correlation(f, 4),
        "tail_mass": f.tail_mass,
        "N": f.truncation,
    }


def local_maxima(P: np.ndarray, rel_floor: float = 1e-4) -> list[int]:
    """Interior strict local maxima of ``P`` above ``rel_floor * max(P)``."""
    P = np.asarray(P)
    floor = rel_floor * P.max()
    return [n for n in range(1, P.size - 1) if P[n] > P[n - 1] and P[n] > P[n + 1] and P[n] > floor] + (
        [0] if P.size > 1 and P[0] > P[1] and P[0] > floor else []
    )


def total_variation(P: np.ndarray, Q: np.ndarray) -> float:
    n = max(P.size, Q.size)
    P = np.pad(P, (0, n - P.size))
    Q = np.pad(Q, (0, n - Q.size))
    return 0.5 * float(np.sum(np.abs(P - Q)))


def grid_mean_photon_number(psi: SampledWavefunction) -> float:
    """``<ad a> = int (|psi'|^2 + x^2 |psi|^2)/2 dx - 1/2`` with a spectral derivative."""
    if psi.representation != "X1":
        raise ValueError("needs the X1 representation")
    k = 2.0 * math.pi * np.fft.fftfreq(psi.grid.n_points, d=psi.grid.dx)
    d = np.fft.ifft(1j * k * np.fft.fft(psi.values))
    x = psi.x
    return float(np.sum(np.abs(d) ** 2 + x**2 * psi.density) * psi.grid.dx / 2.0 - 0.5)


def tpss_oracle(alpha: complex, r: float, N: int = 200, pad: int = 80) -> FockExpansion:
    """``D(alpha) S(r)|0>`` by dense matrix exponentials in a truncated space.

    ``S(r) = exp[(r/2)(a^2 - ad^2)]``, the sign for which ``S^dagger a S =
    a cosh r - ad sinh r`` so that ``mu a + nu ad`` annihilates ``S|0>``.
    The exponentials act in dimension ``N + 1 + pad``; the returned vector is
    cut to ``N + 1`` and its tail checked.
    """
    dim = N + 1 + pad
    a = np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1).astype(complex)
    ad = a.conj().T
    vac = np.zeros(dim, dtype=complex)
    vac[0] = 1.0
    sq = expm(0.5 * r * (a @ a - ad @ ad)) @ vac
    alpha = complex(alpha)
    vec = expm(alpha * ad - alpha.conjugate() * a) @ sq
    out = FockExpansion.from_coefficients(vec[: N + 1])
    if out.tail_mass >= 1e-8:
        raise TruncationError(f"oracle tail {out.tail_mass:.3g}; raise N")
    return out


def coherent_coefficients(alpha: complex, N: int) -> np.ndarray:
    alpha = complex(alpha)
    n = np.arange(N + 1)
    logfact = np.array([math.lgamma(k + 1) for k in n])
    mag = np.exp(-abs(alpha) ** 2 / 2 - 0.5 * logfact)
    return mag * alpha**n
