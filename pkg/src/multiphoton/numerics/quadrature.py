"""Quadrature helpers."""

from __future__ import annotations

import math
import warnings
from typing import Callable

import numpy as np
from scipy import integrate as _spi

from ..errors import NumericalError
from .hermite import hermite_functions


class IntegrationError(NumericalError):
    def __init__(self, message: str, estimate: float, error: float):
        super().__init__(f"{message} (estimate {estimate!r}, error {error:.3g})")
        self.estimate = estimate
        self.error = error


def integrate(f, domain=(-math.inf, math.inf), tol: float = 1e-10, limit: int = 500):
    """Integrate a callable adaptively, or a sampled array on a uniform grid.

    For sampled data ``domain`` is the grid spacing (float) and the
    trapezoid rule is used, which converges spectrally for smooth integrands
    that vanish at both ends.
    """
    if not callable(f):
        values = np.asarray(f)
        dx = float(domain)
        return np.sum(values) * dx - 0.5 * dx * (values[0] + values[-1])
    a, b = domain
    probe = f(0.5 * (a + b) if math.isfinite(a) and math.isfinite(b) else 0.0)
    if np.iscomplexobj(probe):
        re = integrate(lambda t: complex(f(t)).real, domain, tol / 2, limit)
        im = integrate(lambda t: complex(f(t)).imag, domain, tol / 2, limit)
        return complex(re, im)
    with warnings.catch_warnings():
        # non-convergence is reported through IntegrationError instead
        warnings.simplefilter("ignore", _spi.IntegrationWarning)
        val, err = _spi.quad(f, a, b, epsabs=tol, epsrel=0.0, limit=limit)
    if not err <= tol:
        raise IntegrationError("adaptive quadrature did not converge", val, err)
    return val


def gauss_hermite(n_nodes: int = 200) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights for ``int exp(-x^2) g(x) dx``."""
    return np.polynomial.hermite.hermgauss(n_nodes)


def hermite_weighted(g: Callable[[np.ndarray], np.ndarray], n_nodes: int = 200):
    """``int exp(-x^2) g(x) dx`` by Gauss-Hermite."""
    x, w = gauss_hermite(n_nodes)
    return np.sum(w * g(x))


def hermite_overlap_matrix(n_max: int, n_nodes: int = 200) -> np.ndarray:
    """``int phi_n phi_m dx`` for n, m <= n_max by Gauss-Hermite quadrature."""
    x, w = gauss_hermite(n_nodes)
    phi = hermite_functions(n_max, x)
    # phi_n phi_m = exp(-x^2) * polynomial; fold exp(+x^2) into the weights
    ww = np.exp(np.log(w) + x**2)
    return (phi * ww) @ phi.T
