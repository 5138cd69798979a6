"""Harmonic-oscillator eigenfunctions for X1 = (a + ad)/sqrt2."""

from __future__ import annotations

import math

import numpy as np

MAX_ORDER = 1024

_RESCALE = 1e150
_LOG_RESCALE = math.log(_RESCALE)


def hermite_functions(n_max: int, x) -> np.ndarray:
    """Table ``phi[n, j] = phi_n(x_j)`` for ``n = 0..n_max``.

    Uses the normalized three-term recurrence with a running per-point scale
    so large orders stay finite where ``exp(-x^2/2)`` alone would underflow.
    """
    if not 0 <= n_max <= MAX_ORDER:
        raise ValueError(f"order must lie in [0, {MAX_ORDER}], got {n_max}")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty((n_max + 1, x.size))
    log_scale = -0.5 * x**2
    prev = np.zeros_like(x)
    cur = np.full_like(x, math.pi**-0.25)
    out[0] = cur * np.exp(log_scale)
    for n in range(n_max):
        nxt = x * math.sqrt(2.0 / (n + 1)) * cur - math.sqrt(n / (n + 1)) * prev
        big = np.abs(nxt) > _RESCALE
        if big.any():
            nxt[big] /= _RESCALE
            cur[big] /= _RESCALE
            log_scale[big] += _LOG_RESCALE
        prev, cur = cur, nxt
        out[n + 1] = cur * np.exp(log_scale)
    return out


def hermite_function(n: int, x):
    """``phi_n(x) = pi^{-1/4} (2^n n!)^{-1/2} H_n(x) exp(-x^2/2)``."""
    if not 0 <= n <= MAX_ORDER:
        raise ValueError(f"order must lie in [0, {MAX_ORDER}], got {n}")
    scalar = np.ndim(x) == 0
    row = hermite_functions(n, x)[n]
    return float(row[0]) if scalar else row
