"""Closed-form and transformed squeezed-state wavefunctions."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multiphoton.canonical import NonlinearitySpec, Variant
from multiphoton.numerics import Grid, SampledWavefunction
from multiphoton.states import (
    AiryFormData,
    Family,
    StateParams,
    alpha_from_beta,
    beta_from_alpha,
    eigen_residual,
    excess_kurtosis,
    native_grid,
    native_rep_data,
    psi_fpss1,
    psi_fpss2_airy,
    psi_fpss2_transform,
    psi_native,
    psi_tpss,
    quadrature_stats,
    state_x1,
    state_x2,
)

BETA = 3 * math.sqrt(2)
R = 0.8


def fig(family, g, r=R, beta=BETA):
    return StateParams.from_beta(family, r, g, beta)


def overlap(a, b):
    return abs(a.overlap(b))


# parameters


@settings(max_examples=100, deadline=None)
@given(st.floats(-3, 3), st.floats(-3, 3), st.floats(0, 2))
def test_alpha_beta_round_trip(a1, a2, r):
    alpha = complex(a1, a2)
    beta = beta_from_alpha(alpha, r)
    assert beta == pytest.approx(math.cosh(r) * alpha + math.sinh(r) * alpha.conjugate(), abs=1e-12)
    assert alpha_from_beta(beta, r) == pytest.approx(alpha, abs=1e-12)


def test_params_validation():
    with pytest.raises(ValueError):
        StateParams("tpss", 0.8, 0.1)
    with pytest.raises(ValueError):
        StateParams("fpss2", 0.8, -0.1)
    with pytest.raises(ValueError):
        StateParams("generic", 0.8, 0.1)
    g = StateParams("generic", 0.8, 0.1, 1.0, F=NonlinearitySpec.parse("X2^3"))
    assert g.variant is Variant.II and g.gamma == 0.1
    assert fig("fpss1", 0.1).gamma == 0.1j


# native representation


def test_tpss_limit_of_variant_one():
    p = StateParams("fpss1", R, 0.0, 1.3)
    m, v = psi_native(p).moments()
    assert m == pytest.approx(math.sqrt(2) * 1.3, abs=1e-10)
    assert v == pytest.approx(math.exp(-1.6) / 2, abs=1e-10)


@pytest.mark.parametrize("g", [0.05, 0.14, 0.5])
def test_fpss1_density_is_the_tpss_density(g):
    p = fig("fpss1", g)
    grid = native_grid(p)
    a = psi_fpss1(p, grid)
    b = psi_native(fig("tpss", 0.0), grid)
    assert np.max(np.abs(a.density - b.density)) < 1e-12


def test_variant_two_is_antisqueezed_in_its_own_representation():
    psi = psi_native(fig("fpss2", 0.14))
    assert psi.representation == "X2"
    assert psi.moments()[1] == pytest.approx(math.exp(1.6) / 2, abs=1e-10)


def test_fpss1_moments():
    m, v = psi_fpss1(fig("fpss1", 0.14)).moments()
    assert m == pytest.approx(6 * math.exp(-0.8), abs=1e-10)
    assert m == pytest.approx(2.6960, abs=1e-4)
    assert v == pytest.approx(math.exp(-1.6) / 2, abs=1e-10)


def test_fpss1_phase_derivative():
    # slope of the phase is sqrt2*alpha2 - sqrt2*e^{r}*gt*x^2 for a squared X1 nonlinearity
    p = StateParams("fpss1", R, 0.14, complex(1.9, 0.6))
    psi = psi_fpss1(p)
    x = psi.x
    h = psi.grid.dx
    phase = np.unwrap(np.angle(psi.values))
    # fourth-order centred difference
    slope = (phase[:-4] - 8 * phase[1:-3] + 8 * phase[3:-1] - phase[4:]) / (12 * h)
    xc = x[2:-2]
    keep = np.abs(xc - math.sqrt(2) * 1.9) < 1.0
    expected = math.sqrt(2) * 0.6 - math.sqrt(2) * math.exp(R) * 0.14 * xc**2
    assert np.max(np.abs(slope - expected)[keep]) < 1e-6


def test_narrow_grid_is_rejected():
    with pytest.raises(ValueError):
        psi_native(fig("tpss", 0.0), Grid(-1.0, 1.0, 101))


# Airy form and the transform route


def test_airy_constants():
    form = AiryFormData.from_params(R, 0.14, BETA)
    assert form.k == pytest.approx(math.exp(-R) / (2 * math.sqrt(2) * 0.14))
    assert form.l == pytest.approx(math.exp(R) / (math.sqrt(2) * 0.14))
    assert form.m == pytest.approx(form.k**2 - BETA / 0.14)


def test_fig1_density_is_not_gaussian():
    psi = psi_fpss2_airy(fig("fpss2", 0.14))
    assert psi.norm2() == pytest.approx(1.0, abs=1e-12)
    assert abs(excess_kurtosis(psi)) > 0.01
    assert psi.airy_form.N > 0


@pytest.mark.parametrize("g", [0.05, 0.14, 0.3])
def test_airy_matches_transform(g):
    a = psi_fpss2_airy(fig("fpss2", g))
    b = psi_fpss2_transform(fig("fpss2", g), a.grid)
    assert overlap(a, b) >= 1 - 1e-6


def test_airy_rejects_degenerate_inputs():
    with pytest.raises(ValueError):
        psi_fpss2_airy(StateParams("fpss2", R, 0.14, complex(1, 1)))
    with pytest.raises(ValueError):
        psi_fpss2_airy(fig("fpss2", 0.0))


@pytest.mark.parametrize("beta", [BETA, complex(2.0, 1.5)])
def test_transform_reduces_to_tpss(beta):
    a = psi_fpss2_transform(fig("fpss2", 0.0, beta=beta))
    b = psi_tpss(R, beta, a.grid)
    assert overlap(a, b) >= 1 - 1e-8


def test_printed_position_sign_fails_the_cross_check():
    # the literal x2 centre -sqrt2*alpha2 puts the state at -<X2>
    p = fig("fpss2", 0.0, beta=complex(2.0, 1.5))
    data = native_rep_data(p, "printed")
    grid = native_grid(p)
    x = grid.points
    v = np.exp(-((x - data.x0) ** 2) / (2 * data.sigma) + 1j * data.c * x)
    printed = SampledWavefunction(grid, v, "X2").normalized()
    assert eigen_residual(printed, p) > 1.0
    assert eigen_residual(psi_native(p), p) < 1e-8


def test_r_zero_state_is_normalized():
    psi = state_x1(fig("fpss2", 0.1, r=0.0))
    assert psi.norm2() == pytest.approx(1.0, abs=1e-8)


# quadrature statistics


def test_vacuum_variances():
    s = quadrature_stats(state_x1(StateParams("tpss", 0.0)))
    assert s.var_X1 == pytest.approx(0.5, abs=1e-8)
    assert s.var_X2 == pytest.approx(0.5, abs=1e-8)


@pytest.mark.parametrize("g", [0.0, 0.05, 0.14, 0.4])
def test_fpss1_squeezing(g):
    s = quadrature_stats(state_x1(fig("fpss1", g)))
    assert s.var_X1 == pytest.approx(math.exp(-1.6) / 2, abs=1e-8)


@pytest.mark.parametrize("g", [0.0, 0.05, 0.14, 0.4])
def test_fpss2_antisqueezing(g):
    s = quadrature_stats(state_x1(fig("fpss2", g)))
    assert s.var_X2 == pytest.approx(math.exp(1.6) / 2, abs=1e-6)


def test_x2_representation_route():
    p = fig("fpss1", 0.14)
    s = quadrature_stats(state_x2(p))
    assert s.var_X1 == pytest.approx(math.exp(-1.6) / 2, abs=1e-8)


# eigenvalue equation


@pytest.mark.parametrize(
    "family,g", [("tpss", 0.0), ("fpss1", 0.0), ("fpss1", 0.14), ("fpss2", 0.0), ("fpss2", 0.14)]
)
def test_eigen_residual(family, g):
    p = fig(family, g)
    assert eigen_residual(state_x1(p), p) < 1e-5


def test_generic_cubic_state_is_an_eigenvector():
    p = StateParams("generic", 0.5, 0.05, 1.0, F=NonlinearitySpec.parse("X2^3"))
    psi = psi_native(p)
    assert eigen_residual(psi, p) < 1e-5
    assert psi.norm2() == pytest.approx(1.0, abs=1e-8)


# continuity and limits


@settings(max_examples=8, deadline=None)
@given(st.floats(0.01, 0.5), st.floats(0.0, 1.5))
def test_continuity_in_coupling(g, r):
    a = state_x1(fig("fpss2", g, r=r))
    b = state_x1(fig("fpss2", g + 1e-4, r=r), a.grid)
    assert overlap(a, b) > 1 - 1e-3


@pytest.mark.parametrize("family", ["fpss1", "fpss2"])
def test_small_coupling_approaches_tpss(family):
    a = state_x1(fig(family, 1e-3))
    b = psi_tpss(R, BETA, a.grid)
    assert overlap(a, b) >= 1 - 1e-3
