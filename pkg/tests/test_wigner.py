"""Wigner function: analytic Gaussian cases and the four-photon shapes."""

import math

import numpy as np
import pytest

from multiphoton.numerics import DecayError, Grid, SampledWavefunction
from multiphoton.states import StateParams, quadrature_stats, state_x1
from multiphoton.wigner import axis_misalignment, wigner_diagnostics, wigner_transform

BETA = 3 * math.sqrt(2)
R = 0.8


def fig(family, g):
    return StateParams.from_beta(family, R, g, BETA)


@pytest.fixture(scope="module")
def vacuum():
    psi = state_x1(StateParams("tpss", 0.0))
    return psi, wigner_transform(psi)


@pytest.fixture(scope="module")
def tpss():
    psi = state_x1(fig("tpss", 0.0))
    return psi, wigner_transform(psi)


@pytest.fixture(scope="module")
def fpss1():
    psi = state_x1(fig("fpss1", 0.14))
    return psi, wigner_transform(psi)


def test_vacuum_is_gaussian(vacuum):
    _, w = vacuum
    X, P = np.meshgrid(w.x_axis.points, w.p_axis.points, indexing="ij")
    assert np.max(np.abs(w.values - np.exp(-X * X - P * P) / math.pi)) < 1e-8
    origin = wigner_transform(vacuum[0], Grid(-1.0, 1.0, 3), Grid(-1.0, 1.0, 3)).values[1, 1]
    assert origin == pytest.approx(0.31831, abs=1e-5)


def test_squeezed_coherent_state_is_gaussian(tpss):
    _, w = tpss
    X, P = np.meshgrid(w.x_axis.points, w.p_axis.points, indexing="ij")
    x0 = 6 * math.exp(-R)
    # variances e^{-2r}/2 and e^{2r}/2
    ref = np.exp(-((X - x0) ** 2) * math.exp(2 * R) - P * P * math.exp(-2 * R)) / math.pi
    assert np.max(np.abs(w.values - ref)) < 1e-8


@pytest.mark.parametrize("name", ["vacuum", "tpss", "fpss1"])
def test_diagnostics(name, request):
    psi, w = request.getfixturevalue(name)
    d = wigner_diagnostics(w, psi)
    assert d.norm == pytest.approx(1.0, abs=1e-4)
    assert d.purity == pytest.approx(1.0, abs=1e-4)
    assert d.marginal_x_error < 1e-6 and d.marginal_p_error < 1e-6
    assert d.max_abs <= 1 / math.pi + 1e-8
    assert d.imag_residue < 1e-10


@pytest.mark.parametrize("name", ["vacuum", "tpss"])
def test_gaussian_states_are_nonnegative(name, request):
    psi, w = request.getfixturevalue(name)
    assert wigner_diagnostics(w, psi).min_value >= -1e-6


def test_default_axes_shape(tpss):
    _, w = tpss
    assert w.values.shape == (201, 201)
    x, p, v = w.long_form()
    assert x.size == p.size == v.size == 201 * 201


def test_tpss_peak_and_axes(tpss):
    d = wigner_diagnostics(tpss[1], tpss[0])
    assert d.peak[0] == pytest.approx(6 * math.exp(-R), abs=1e-3)
    assert d.peak[1] == pytest.approx(0.0, abs=1e-3)
    assert axis_misalignment(d.axis_angle_deg) < 1e-6


def test_fpss1_is_moved_relative_to_tpss(fpss1, tpss):
    d1 = wigner_diagnostics(fpss1[1], fpss1[0])
    d0 = wigner_diagnostics(tpss[1], tpss[0])
    displaced = math.dist(d1.peak, d0.peak) > 0.3
    rotated = axis_misalignment(d1.axis_angle_deg) > 5.0
    assert displaced or rotated


def test_fpss2_marginal_mean_follows_eigenvalue_equation():
    # real part of <b> = beta gives <X1> = sqrt2 e^{-r} (beta - gt <X2^2>)
    psi = state_x1(fig("fpss2", 0.14))
    s = quadrature_stats(psi)
    expected = math.sqrt(2) * math.exp(-R) * (BETA - 0.14 * (s.var_X2 + s.mean_X2**2))
    assert s.mean_X1 == pytest.approx(expected, abs=1e-8)


def test_axis_misalignment():
    assert axis_misalignment(0.0) == 0.0
    assert axis_misalignment(-89.0) == pytest.approx(1.0)
    assert axis_misalignment(45.0) == 45.0


def test_requires_decay():
    grid = Grid(-3.0, 3.0, 301)
    psi = SampledWavefunction(grid, np.exp(-grid.points**2 / 8), "X1")
    with pytest.raises(DecayError):
        wigner_transform(psi)


def test_requires_x1_representation(vacuum):
    psi = vacuum[0]
    with pytest.raises(ValueError):
        wigner_transform(SampledWavefunction(psi.grid, psi.values, "X2"))
