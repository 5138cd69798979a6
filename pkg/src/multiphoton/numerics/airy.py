"""Airy function Ai on the real line.

Maclaurin series for -7 < y < 6; asymptotic expansions outside, each
truncated at its smallest term.  Switch points were chosen where both
representations agree to better than 1e-12 absolute.  The series is summed
in extended precision: its terms reach ~1e4 on the edges of its range while
Ai itself is O(1e-5), and the lost digits would show up as noise in
finite-difference derivatives.
"""

from __future__ import annotations

import math

import numpy as np

AI0 = 3.0 ** (-2.0 / 3.0) / math.gamma(2.0 / 3.0)
AIP0 = -(3.0 ** (-1.0 / 3.0)) / math.gamma(1.0 / 3.0)
# Ai(0) and Ai'(0) to 30 digits for the extended-precision series
_AI0_X = np.longdouble("0.355028053887817239260063186004")
_AIP0_X = np.longdouble("-0.258819403792806798405183560189")

SERIES_MIN = -7.0
SERIES_MAX = 6.0

_N_ASYM = 64
_U = np.array(
    [1.0]
    + [
        math.exp(math.lgamma(3 * k + 0.5) - k * math.log(54.0) - math.lgamma(k + 1) - math.lgamma(k + 0.5))
        for k in range(1, _N_ASYM)
    ]
)


def _series(y: np.ndarray) -> np.ndarray:
    y = y.astype(np.longdouble)
    f = np.ones_like(y)
    g = y.copy()
    tf = np.ones_like(y)
    tg = y.copy()
    y3 = y**3
    for k in range(1, 200):
        tf = tf * y3 / ((3 * k - 1) * (3 * k))
        tg = tg * y3 / ((3 * k) * (3 * k + 1))
        f += tf
        g += tg
        if np.all(np.abs(tf) <= 1e-18 * np.abs(f)) and np.all(np.abs(tg) <= 1e-18 * np.maximum(np.abs(g), 1e-300)):
            break
    return (_AI0_X * f + _AIP0_X * g).astype(float)


def _truncated(terms: np.ndarray) -> np.ndarray:
    """Sum each row of ``terms`` up to (excluding) the first growing term."""
    mag = np.abs(terms)
    grow = np.zeros_like(mag, dtype=bool)
    grow[:, 1:] = mag[:, 1:] > mag[:, :-1]
    stop = np.cumsum(grow, axis=1) > 0
    return np.where(stop, 0.0, terms).sum(axis=1)


def _asym_positive_scaled(y: np.ndarray) -> np.ndarray:
    """``Ai(y) * exp(zeta)`` for large positive y."""
    zeta = 2.0 / 3.0 * y**1.5
    k = np.arange(_N_ASYM)
    # zeta**k overflowing to inf just zeroes a negligible term
    with np.errstate(over="ignore"):
        terms = ((-1.0) ** k * _U)[None, :] / zeta[:, None] ** k[None, :]
    return _truncated(terms) / (2.0 * math.sqrt(math.pi) * y**0.25)


def _asym_negative(y: np.ndarray) -> np.ndarray:
    z = -y
    zeta = 2.0 / 3.0 * z**1.5
    half = _N_ASYM // 2
    k = np.arange(half)
    sign = (-1.0) ** k
    with np.errstate(over="ignore"):
        even = (sign * _U[0::2][:half])[None, :] / zeta[:, None] ** (2 * k)[None, :]
        odd = (sign * _U[1::2][:half])[None, :] / zeta[:, None] ** (2 * k + 1)[None, :]
    # both series share the same cut-off index
    both = np.abs(even) + np.abs(odd)
    grow = np.zeros_like(both, dtype=bool)
    grow[:, 1:] = both[:, 1:] > both[:, :-1]
    stop = np.cumsum(grow, axis=1) > 0
    P = np.where(stop, 0.0, even).sum(axis=1)
    Q = np.where(stop, 0.0, odd).sum(axis=1)
    ph = zeta - math.pi / 4.0
    return (np.cos(ph) * P + np.sin(ph) * Q) / (math.sqrt(math.pi) * z**0.25)


def airy_ai(y, scaled: bool = False):
    """Ai(y).  With ``scaled=True`` returns ``Ai(y) * exp(2/3 y**1.5)`` for y > 0
    (unchanged for y <= 0), which avoids underflow in the decaying tail."""
    arr = np.asarray(y, dtype=float)
    flat = np.atleast_1d(arr).ravel()
    if not np.all(np.isfinite(flat)):
        raise ValueError("airy_ai requires finite arguments")
    out = np.empty_like(flat)
    mid = (flat > SERIES_MIN) & (flat < SERIES_MAX)
    pos = flat >= SERIES_MAX
    neg = flat <= SERIES_MIN
    if mid.any():
        v = _series(flat[mid])
        if scaled:
            ym = flat[mid]
            v = np.where(ym > 0, v * np.exp(2.0 / 3.0 * np.clip(ym, 0, None) ** 1.5), v)
        out[mid] = v
    if pos.any():
        v = _asym_positive_scaled(flat[pos])
        if not scaled:
            v = v * np.exp(-2.0 / 3.0 * flat[pos] ** 1.5)
        out[pos] = v
    if neg.any():
        out[neg] = _asym_negative(flat[neg])
    if arr.ndim == 0:
        return float(out[0])
    return out.reshape(arr.shape)
