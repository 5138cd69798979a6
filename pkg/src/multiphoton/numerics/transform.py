"""Change of representation between the X1- and X2-diagonal bases.

With ``[X1, X2] = i`` the kernel is ``<x1|x2> = exp(i x1 x2) / sqrt(2 pi)``.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import NumericalError
from .grid import Grid, SampledWavefunction

EDGE_TOL = 1e-12
_CHUNK = 512


class DecayError(NumericalError):
    """The sampled function has not decayed at the ends of its grid."""


def check_decay(psi: SampledWavefunction, tol: float = EDGE_TOL) -> None:
    edge = psi.edge_amplitude()
    if edge > tol * max(1.0, float(np.max(np.abs(psi.values)))):
        raise DecayError(
            f"|psi| = {edge:.3g} at the grid ends of [{psi.grid.x_min:.4g}, {psi.grid.x_max:.4g}]; widen the grid"
        )


def fourier_sum(values: np.ndarray, src: np.ndarray, dst: np.ndarray, sign: int) -> np.ndarray:
    """``sum_k exp(sign*i*dst_j*src_k) values_k`` evaluated in row blocks."""
    out = np.empty(dst.size, dtype=complex)
    for start in range(0, dst.size, _CHUNK):
        block = dst[start : start + _CHUNK]
        out[start : start + _CHUNK] = np.exp((1j * sign) * np.outer(block, src)) @ values
    return out


def representation_transform(
    psi: SampledWavefunction, target: Grid, edge_tol: float = EDGE_TOL
) -> SampledWavefunction:
    """Map a sampled state to the other quadrature representation on ``target``.

    X2 -> X1 uses ``exp(+i x1 x2)``, X1 -> X2 uses ``exp(-i x1 x2)``; the
    integral is the trapezoid rule on the source samples.
    """
    check_decay(psi, edge_tol)
    sign = 1 if psi.representation == "X2" else -1
    rep = "X1" if psi.representation == "X2" else "X2"
    vals = fourier_sum(psi.values, psi.x, target.points, sign) * (psi.grid.dx / math.sqrt(2.0 * math.pi))
    out_norm = float(np.sum(np.abs(vals) ** 2) * target.dx)
    return SampledWavefunction(target, vals, rep, abs(out_norm - psi.norm2()))


def conjugate_grid(grid: Grid, support: tuple[float, float] | None = None, oversample: float = 1.25) -> Grid:
    """A grid in the conjugate variable that band-limits ``grid`` exactly.

    Spans the Nyquist band ``+-pi/dx`` and resolves the source extent.
    """
    lo, hi = support if support is not None else (grid.x_min, grid.x_max)
    k_max = math.pi / grid.dx
    extent = max(abs(lo), abs(hi)) * 2.0
    dk = 2.0 * math.pi / (extent * oversample)
    return Grid.with_spacing(-k_max, k_max, dk)


def resample(psi: SampledWavefunction, target: Grid) -> SampledWavefunction:
    """Band-limited resampling onto another grid in the same representation."""
    mid = conjugate_grid(psi.grid, (min(psi.grid.x_min, target.x_min), max(psi.grid.x_max, target.x_max)))
    other = representation_transform(psi, mid, edge_tol=1.0)
    back = representation_transform(other, target, edge_tol=1.0)
    return SampledWavefunction(target, back.values, psi.representation, psi.norm_residual)
