"""Wigner quasiprobability distribution of a sampled pure state.

Convention: ``W(x, p) = (1/pi) int conj(psi(x+y)) psi(x-y) exp(2ipy) dy``,
so that ``int W = 1`` and a pure state has ``2 pi int W^2 = 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericalError
from .numerics import Grid, SampledWavefunction, representation_transform
from .numerics.transform import check_decay, fourier_sum
from .states import momentum_grid, support_window

DEFAULT_POINTS = 201
IMAG_TOL = 1e-10
WINDOW_TOL = 1e-7  # amplitude; density 1e-14 relative


@dataclass(frozen=True, eq=False)
class WignerGrid:
    x_axis: Grid
    p_axis: Grid
    values: np.ndarray  # shape (n_x, n_p)
    imag_residue: float
    x_density: np.ndarray  # |psi|^2 on x_axis, from the same resampling
    p_density: np.ndarray  # X2-representation density on p_axis

    def long_form(self):
        X, P = np.meshgrid(self.x_axis.points, self.p_axis.points, indexing="ij")
        return X.ravel(), P.ravel(), self.values.ravel()


def default_axes(psi: SampledWavefunction, n_points: int = DEFAULT_POINTS,
                 mom: SampledWavefunction | None = None) -> tuple[Grid, Grid]:
    """Windows where the X1 and X2 amplitudes exceed ``WINDOW_TOL`` of their peak."""
    if psi.representation != "X1":
        raise ValueError("needs the X1 representation")
    lo, hi = support_window(psi, WINDOW_TOL)
    if mom is None:
        mom = representation_transform(psi, momentum_grid(psi))
    plo, phi = support_window(mom, WINDOW_TOL)
    return Grid(lo, hi, n_points), Grid(plo, phi, n_points)


def _fine_grid(psi: SampledWavefunction, x_axis: Grid, p_reach: float) -> tuple[Grid, int, int]:
    """Fine grid containing every x_axis node, covering the support of psi."""
    h_target = min(psi.grid.dx, math.pi / (4.0 * (p_reach + 1.0)))
    M = max(1, math.ceil(x_axis.dx / h_target))
    h = x_axis.dx / M
    lo, hi = support_window(psi)
    lo, hi = min(lo, x_axis.x_min), max(hi, x_axis.x_max)
    below = math.ceil((x_axis.x_min - lo) / h)
    above = math.ceil((hi - x_axis.x_min) / h)
    start = x_axis.x_min - below * h
    n = below + above + 1
    return Grid(start, start + (n - 1) * h, n), below, M


def wigner_transform(psi: SampledWavefunction, x_axis: Grid | None = None, p_axis: Grid | None = None) -> WignerGrid:
    """Evaluate W on ``x_axis`` x ``p_axis``.

    ``psi`` is resampled (band-limited, through its X2 representation) onto a
    fine grid on which every ``x +- y`` lands exactly, so no interpolation is
    involved; the y-integral is then a trapezoid sum per (x, p).
    """
    if psi.representation != "X1":
        raise ValueError("needs the X1 representation")
    check_decay(psi)
    mgrid = momentum_grid(psi)
    mom = representation_transform(psi, mgrid)
    if x_axis is None or p_axis is None:
        dx_axis, dp_axis = default_axes(psi, mom=mom)
        x_axis = x_axis or dx_axis
        p_axis = p_axis or dp_axis
    plo, phi = support_window(mom)
    p_reach = max(abs(plo), abs(phi), abs(p_axis.x_min), abs(p_axis.x_max))
    fine, offset, M = _fine_grid(psi, x_axis, p_reach)
    vals = fourier_sum(mom.values, mom.x, fine.points, +1) * (mgrid.dx / math.sqrt(2.0 * math.pi))
    h = fine.dx
    n_fine = fine.n_points
    centers = offset + M * np.arange(x_axis.n_points)
    K = n_fine
    ks = np.arange(-K, K + 1)
    plus = centers[:, None] + ks[None, :]
    minus = centers[:, None] - ks[None, :]
    ok = (plus >= 0) & (plus < n_fine) & (minus >= 0) & (minus < n_fine)
    # drop y values that are outside the grid for every x
    used = ok.any(axis=0)
    ks, plus, minus, ok = ks[used], plus[:, used], minus[:, used], ok[:, used]
    padded = np.concatenate([vals, [0.0]])
    plus = np.where(ok, plus, n_fine)
    minus = np.where(ok, minus, n_fine)
    corr = np.conj(padded[plus]) * padded[minus]
    kernel = np.exp(2j * np.outer(ks * h, p_axis.points))
    W = corr @ kernel * (h / math.pi)
    imag = float(np.max(np.abs(W.imag)))
    if imag > IMAG_TOL:
        raise NumericalError(f"Wigner function has imaginary residue {imag:.3g}")
    x_density = np.abs(vals[centers]) ** 2
    p_psi = representation_transform(psi, p_axis, edge_tol=1.0)
    return WignerGrid(x_axis, p_axis, W.real.copy(), imag, x_density, np.abs(p_psi.values) ** 2)


def _trap(values: np.ndarray, dx: float, axis: int) -> np.ndarray:
    return np.trapezoid(values, dx=dx, axis=axis)


def _refine_peak(W: np.ndarray, i: int, j: int, x: Grid, p: Grid) -> tuple[float, float]:
    def vertex(fm, f0, fp):
        den = fm - 2 * f0 + fp
        return 0.0 if den == 0 else 0.5 * (fm - fp) / den

    di = vertex(W[i - 1, j], W[i, j], W[i + 1, j]) if 0 < i < W.shape[0] - 1 else 0.0
    dj = vertex(W[i, j - 1], W[i, j], W[i, j + 1]) if 0 < j < W.shape[1] - 1 else 0.0
    return x.x_min + (i + di) * x.dx, p.x_min + (j + dj) * p.dx


@dataclass(frozen=True)
class WignerDiagnostics:
    norm: float
    purity: float
    min_value: float
    argmin: tuple[float, float]
    peak: tuple[float, float]
    max_abs: float
    axis_angle_deg: float
    marginal_x_error: float
    marginal_p_error: float
    imag_residue: float

    def to_dict(self) -> dict:
        return {
            "norm": self.norm,
            "purity": self.purity,
            "min_value": self.min_value,
            "argmin": list(self.argmin),
            "peak": list(self.peak),
            "max_abs": self.max_abs,
            "axis_angle_deg": self.axis_angle_deg,
            "marginal_x_error": self.marginal_x_error,
            "marginal_p_error": self.marginal_p_error,
            "imag_residue": self.imag_residue,
        }


def principal_axis_angle(w: WignerGrid) -> float:
    """Angle (degrees, in (-90, 90]) of the major axis of the positive-part covariance."""
    Wp = np.clip(w.values, 0.0, None)
    X, P = np.meshgrid(w.x_axis.points, w.p_axis.points, indexing="ij")
    m = Wp.sum()
    mx, mp = (Wp * X).sum() / m, (Wp * P).sum() / m
    cxx = (Wp * (X - mx) ** 2).sum() / m
    cpp = (Wp * (P - mp) ** 2).sum() / m
    cxp = (Wp * (X - mx) * (P - mp)).sum() / m
    return math.degrees(0.5 * math.atan2(2.0 * cxp, cxx - cpp))


def axis_misalignment(angle_deg: float) -> float:
    """Distance in degrees from the nearest coordinate axis."""
    a = abs(angle_deg) % 90.0
    return min(a, 90.0 - a)


def wigner_diagnostics(w: WignerGrid, psi: SampledWavefunction | None = None) -> WignerDiagnostics:
    """Normalization, purity, extrema, orientation and marginal errors of W.

    The marginal references are the densities carried by ``w`` (computed
    from ``psi`` when it was built); ``psi`` is accepted for API symmetry.
    """
    dx, dp = w.x_axis.dx, w.p_axis.dx
    W = w.values
    norm = float(_trap(_trap(W, dp, 1), dx, 0))
    purity = float(2.0 * math.pi * _trap(_trap(W**2, dp, 1), dx, 0))
    imin = np.unravel_index(int(np.argmin(W)), W.shape)
    imax = np.unravel_index(int(np.argmax(W)), W.shape)
    marg_x = _trap(W, dp, 1)
    marg_p = _trap(W, dx, 0)
    return WignerDiagnostics(
        norm=norm,
        purity=purity,
        min_value=float(W[imin]),
        argmin=(float(w.x_axis.points[imin[0]]), float(w.p_axis.points[imin[1]])),
        peak=_refine_peak(W, int(imax[0]), int(imax[1]), w.x_axis, w.p_axis),
        max_abs=float(np.max(np.abs(W))),
        axis_angle_deg=principal_axis_angle(w),
        marginal_x_error=float(np.max(np.abs(marg_x - w.x_density))),
        marginal_p_error=float(np.max(np.abs(marg_p - w.p_density))),
        imag_residue=w.imag_residue,
    )
