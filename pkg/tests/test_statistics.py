"""Fock projection, photon counting moments and the dense-matrix oracle."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multiphoton.errors import TruncationError
from multiphoton.numerics import SampledWavefunction
from multiphoton.states import StateParams, psi_tpss, state_x1
from multiphoton.statistics import (
    FockExpansion,
    coherent_coefficients,
    factorial_moment,
    fock_auto,
    fock_coefficients,
    g_correlation,
    grid_mean_photon_number,
    local_maxima,
    mean_photon_number,
    moments,
    photon_number_distribution,
    total_variation,
    tpss_oracle,
)

BETA = 3 * math.sqrt(2)


def coherent(alpha):
    return state_x1(StateParams("tpss", 0.0, 0.0, alpha))


def squeezed_vacuum(r):
    return state_x1(StateParams("tpss", r, 0.0, 0.0))


def fock_state(n, N=10):
    c = np.zeros(N + 1)
    c[n] = 1.0
    return FockExpansion.from_coefficients(c)


# projection


def test_coherent_expansion():
    f = fock_coefficients(coherent(1.0), 40)
    n = np.arange(41)
    expected = np.exp(-0.5) / np.sqrt([float(math.factorial(k)) for k in n])
    assert abs(f.coefficients[0]) == pytest.approx(0.60653, abs=1e-5)
    assert np.max(np.abs(np.abs(f.coefficients) - expected)) < 1e-10


def test_vacuum_projection():
    f = fock_coefficients(coherent(0.0), 20)
    assert abs(f.coefficients[0]) == pytest.approx(1.0, abs=1e-10)
    assert np.max(np.abs(f.coefficients[1:])) < 1e-10


def test_squeezed_vacuum_has_no_odd_components():
    f = fock_coefficients(squeezed_vacuum(0.8), 120)
    assert np.max(np.abs(f.coefficients[1::2])) < 1e-10


def test_heavy_tail_raises():
    with pytest.raises(TruncationError):
        fock_coefficients(coherent(4.0), 5)


def test_auto_truncation_meets_target():
    f = fock_auto(state_x1(StateParams.from_beta("fpss2", 2.0, 0.2, BETA)))
    assert f.tail_mass < 1e-8
    assert f.truncation > 120


def test_projection_needs_x1():
    psi = SampledWavefunction(coherent(0.0).grid, coherent(0.0).values, "X2")
    with pytest.raises(ValueError):
        fock_coefficients(psi, 10)


@pytest.mark.parametrize("family,g", [("tpss", 0.0), ("fpss1", 0.14), ("fpss2", 0.14)])
def test_probability_plus_tail_is_one(family, g):
    f = fock_auto(state_x1(StateParams.from_beta(family, 0.8, g, BETA)))
    assert np.sum(photon_number_distribution(f)) + f.tail_mass == pytest.approx(1.0, abs=1e-9)


# moments


def test_coherent_distribution_is_poisson():
    P = photon_number_distribution(fock_coefficients(coherent(1.0), 40))
    n = np.arange(41)
    poisson = np.exp(-1.0) / np.array([math.factorial(k) for k in n], dtype=float)
    assert np.max(np.abs(P - poisson)) < 1e-10


def test_fock_two_moments():
    f = fock_state(2)
    assert factorial_moment(f, 2) == 2
    assert g_correlation(f, 2) == pytest.approx(0.5)


@pytest.mark.parametrize("k", range(1, 9))
def test_coherent_factorial_moments(k):
    assert factorial_moment(fock_coefficients(coherent(1.0), 60), k) == pytest.approx(1.0, abs=1e-8)


def test_vacuum_factorial_moments_vanish():
    f = fock_coefficients(coherent(0.0), 20)
    assert all(abs(factorial_moment(f, k)) < 1e-12 for k in range(1, 9))


def test_coherent_correlations_are_one():
    m = moments(fock_auto(coherent(BETA)))
    assert m["g2"] == pytest.approx(1.0, abs=1e-8)
    assert m["g4"] == pytest.approx(1.0, abs=1e-8)


def test_squeezed_vacuum_g2():
    g2 = g_correlation(fock_auto(squeezed_vacuum(0.8)), 2)
    assert g2 == pytest.approx(3 + 1 / math.sinh(0.8) ** 2, abs=1e-6)
    assert g2 == pytest.approx(4.26786, abs=1e-5)


def test_moment_order_bounds():
    f = fock_state(1)
    with pytest.raises(ValueError):
        factorial_moment(f, 9)
    with pytest.raises(ValueError):
        g_correlation(f, 3)
    with pytest.raises(ValueError):
        g_correlation(fock_state(0), 2)


@pytest.mark.parametrize("family,g", [("tpss", 0.0), ("fpss1", 0.14), ("fpss2", 0.14)])
def test_mean_matches_derivative_route(family, g):
    psi = state_x1(StateParams.from_beta(family, 0.8, g, BETA))
    assert mean_photon_number(fock_auto(psi)) == pytest.approx(grid_mean_photon_number(psi), abs=1e-6)


@settings(max_examples=20, deadline=None)
@given(st.floats(0, 2 * math.pi))
def test_correlations_ignore_global_phase(theta):
    f = fock_auto(state_x1(StateParams.from_beta("fpss2", 0.8, 0.14, BETA)))
    rotated = FockExpansion(f.coefficients * np.exp(1j * theta), f.truncation, f.tail_mass)
    assert g_correlation(rotated, 2) == pytest.approx(g_correlation(f, 2), rel=1e-12)
    assert g_correlation(rotated, 4) == pytest.approx(g_correlation(f, 4), rel=1e-12)


def test_increasing_truncation_stays_within_tail_bound():
    psi = state_x1(StateParams.from_beta("fpss2", 1.0, 0.1, BETA))
    small = fock_coefficients(psi, 120)
    large = fock_coefficients(psi, 240)
    for k in (1, 2, 4):
        bound = math.factorial(k) * 120**k * small.tail_mass
        assert abs(factorial_moment(large, k) - factorial_moment(small, k)) <= bound + 1e-9


# dense-matrix oracle


def test_oracle_coherent_limit():
    f = tpss_oracle(1.0, 0.0, N=40)
    assert np.max(np.abs(f.coefficients - coherent_coefficients(1.0, 40))) < 1e-10


def test_oracle_squeezed_vacuum():
    f = tpss_oracle(0.0, 0.8, N=120)
    assert np.max(np.abs(f.coefficients[1::2])) < 1e-10
    assert mean_photon_number(f) == pytest.approx(math.sinh(0.8) ** 2, abs=1e-8)


def test_oracle_matches_grid_pipeline():
    from multiphoton.states import alpha_from_beta

    alpha = alpha_from_beta(BETA, 0.8)
    oracle = tpss_oracle(alpha, 0.8, N=120)
    grid = fock_coefficients(psi_tpss(0.8, BETA), 120)
    assert np.max(np.abs(np.abs(oracle.coefficients) - np.abs(grid.coefficients))) < 1e-6


# distribution shape helpers


def test_local_maxima_and_total_variation():
    P = np.array([0.1, 0.3, 0.1, 0.2, 0.3, 0.0])
    assert sorted(local_maxima(P)) == [1, 4]
    assert total_variation(P, P) == 0
    assert total_variation(np.array([1.0]), np.array([0.0, 1.0])) == 1.0
