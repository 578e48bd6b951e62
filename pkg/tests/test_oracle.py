"""Closed-form amplitude checks, including an independent integrator cross-check.

Frozen expected values below were produced by numerically integrating the
Schroedinger equation of the exact Hamiltonian with scipy's adaptive DOP853
at rtol 1e-12 and reading off the amplitudes; the same integration is also
run live in test_closed_forms_match_independent_integrator.
"""

import math

import numpy as np
import pytest
from scipy.integrate import solve_ivp

from cavitylink.hamiltonian import build_exact, effective_embedding
from cavitylink.model import SQRT2, SystemParams
from cavitylink.oracle import (
    effective_amplitudes,
    entanglement_time,
    exact_amplitudes,
    resonance_ratio,
)

T_STAR = math.pi / SQRT2


def test_initial_condition():
    a = exact_amplitudes(1.0, 5.0, 0.0)
    assert a.d1 == 1.0
    for name in ("d2", "d3", "d4", "d5", "d6", "d7", "d8", "d9"):
        assert getattr(a, name) == 0.0


def test_maximal_entanglement_point():
    # nu = sqrt(3) makes the fast phase ratio n = 2; at t = pi/(sqrt 2 lam)
    # everything but the atom-B amplitudes vanishes
    a = exact_amplitudes(1.0, math.sqrt(3.0), T_STAR)
    assert abs(a.d1) < 1e-12
    assert abs(a.d2) < 1e-12
    assert abs(a.d3) < 1e-12
    assert abs(a.d4) < 1e-12
    assert a.d5.real == pytest.approx(1.0 / SQRT2, abs=1e-12)
    assert a.d5 == a.d9


def test_frozen_odd_ratio_point():
    # nu = sqrt(8) gives n = 3 (odd), so the transfer is incomplete at t*;
    # frozen values from the independent integration described above
    a = exact_amplitudes(1.0, math.sqrt(8.0), T_STAR)
    assert a.d1.real == pytest.approx(-1.0 / 9.0, abs=1e-12)
    assert abs(a.d2) < 1e-12
    assert a.d3.real == pytest.approx(-2.0 * SQRT2 / 9.0, abs=1e-12)
    assert abs(a.d4) < 1e-12
    assert a.d5.real == pytest.approx(8.0 / (9.0 * SQRT2), abs=1e-12)
    assert a.d5.real == pytest.approx(0.6285393610547089, abs=1e-12)


def test_branches_identical_and_pattern():
    rng = np.random.default_rng(42)
    for _ in range(300):
        nu = float(rng.uniform(0.0, 12.0))
        t = float(rng.uniform(0.0, 9.0))
        a = exact_amplitudes(1.0, nu, t)
        assert a.d2 == a.d6 and a.d3 == a.d7 and a.d4 == a.d8 and a.d5 == a.d9
        # d1, d3, d5 real; d2, d4 purely imaginary
        assert a.d1.imag == 0.0 and a.d3.imag == 0.0 and a.d5.imag == 0.0
        assert a.d2.real == 0.0 and a.d4.real == 0.0


def test_normalization_identity():
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(1000):
        nu = float(rng.uniform(0.0, 15.0))
        t = float(rng.uniform(0.0, 10.0))
        worst = max(worst, exact_amplitudes(1.0, nu, t).norm_identity_deviation())
    assert worst < 1e-12


def test_effective_normalization_identity():
    rng = np.random.default_rng(2025)
    worst = 0.0
    for _ in range(1000):
        t = float(rng.uniform(0.0, 10.0))
        worst = max(worst, effective_amplitudes(1.0, t).norm_identity_deviation())
    assert worst < 1e-12


def test_effective_amplitudes_values():
    at_star = effective_amplitudes(1.0, T_STAR)
    assert abs(at_star.d1) < 1e-12
    assert abs(at_star.d2) < 1e-12
    assert at_star.d4.real == pytest.approx(1.0 / SQRT2, abs=1e-12)

    at_zero = effective_amplitudes(1.0, 0.0)
    assert at_zero.d1 == 1.0 and at_zero.d2 == 0.0 and at_zero.d4 == 0.0

    quarter = effective_amplitudes(1.0, math.pi / (2.0 * SQRT2))
    assert quarter.d1.real == pytest.approx(0.5, abs=1e-12)
    assert quarter.d2 == pytest.approx(-0.5j, abs=1e-12)
    assert quarter.d4.real == pytest.approx(1.0 / (2.0 * SQRT2), abs=1e-12)


def test_argument_validation():
    with pytest.raises(ValueError):
        exact_amplitudes(0.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        exact_amplitudes(1.0, -1.0, 1.0)
    with pytest.raises(ValueError):
        exact_amplitudes(1.0, 1.0, -0.1)
    with pytest.raises(ValueError):
        effective_amplitudes(-1.0, 1.0)


def test_entanglement_time():
    assert entanglement_time(1.0, 1) == pytest.approx(math.pi / SQRT2)
    assert entanglement_time(2.0, 1) == pytest.approx(math.pi / (2.0 * SQRT2))
    assert entanglement_time(1.0, 3) == pytest.approx(3.0 * math.pi / SQRT2)
    for bad in (0, 2, -1, 4):
        with pytest.raises(ValueError):
            entanglement_time(1.0, bad)
    with pytest.raises(ValueError):
        entanglement_time(0.0, 1)


def test_resonance_ratio():
    assert resonance_ratio(2) == pytest.approx(math.sqrt(3.0))
    assert resonance_ratio(4) == pytest.approx(math.sqrt(15.0))
    assert resonance_ratio(20) == pytest.approx(math.sqrt(399.0))
    for bad in (0, 1, 3, -2):
        with pytest.raises(ValueError):
            resonance_ratio(bad)


def test_resonance_grid_reaches_target():
    for n in (2, 4, 6):
        for m in (1, 3):
            nu = resonance_ratio(n)
            t = entanglement_time(1.0, m)
            a = exact_amplitudes(1.0, nu, t)
            assert abs(2.0 * abs(a.d5) ** 2 - 1.0) < 1e-12


def test_schroedinger_residual_scales_quadratically():
    h_matrix = build_exact(SystemParams(nu=math.sqrt(8.0))).entries

    def residual(step):
        worst = 0.0
        for t in (0.4, 1.1, 1.9):
            plus = exact_amplitudes(1.0, math.sqrt(8.0), t + step).as_vector()
            minus = exact_amplitudes(1.0, math.sqrt(8.0), t - step).as_vector()
            centre = exact_amplitudes(1.0, math.sqrt(8.0), t).as_vector()
            r = (plus - minus) / (2.0 * step) + 1j * (h_matrix @ centre)
            worst = max(worst, float(np.abs(r).max()))
        return worst

    coarse = residual(1e-3)
    fine = residual(5e-4)
    assert coarse < 1e-4
    assert fine < coarse / 3.0  # second-order convergence


def test_closed_forms_match_independent_integrator():
    psi0 = np.zeros(11, dtype=complex)
    psi0[0] = 1.0
    for nu in (math.sqrt(3.0), math.sqrt(8.0), math.sqrt(120.0)):
        h_matrix = build_exact(SystemParams(nu=nu)).entries

        def rhs(_t, y):
            return -1j * (h_matrix @ y)

        for t_end in (0.7, T_STAR):
            sol = solve_ivp(rhs, (0.0, t_end), psi0, rtol=1e-12, atol=1e-14,
                            method="DOP853")
            expected = exact_amplitudes(1.0, nu, t_end).as_vector()
            assert np.abs(sol.y[:, -1] - expected).max() < 1e-8


def test_exact_amplitudes_converge_to_effective():
    # pair the exact amplitudes against the embedded effective ones on the
    # non-fibre components; the fibre amplitudes have no effective partner
    embed = effective_embedding()
    non_fibre = [0, 1, 3, 4, 5, 7, 8]

    def paired_deviation(nu):
        worst = 0.0
        for t in np.linspace(0.0, T_STAR, 400):
            exact_vec = exact_amplitudes(1.0, nu, t).as_vector()
            eff_vec = embed @ effective_amplitudes(1.0, t).as_vector()
            worst = max(worst, float(np.abs((exact_vec - eff_vec)[non_fibre]).max()))
        return worst

    assert paired_deviation(math.sqrt(120.0)) < 0.05
    assert paired_deviation(100.0) < 0.005


def test_fibre_amplitude_bounded():
    for nu in (math.sqrt(120.0), 100.0):
        worst = max(
            abs(exact_amplitudes(1.0, nu, t).d3) for t in np.linspace(0.0, T_STAR, 400)
        )
        assert worst <= 1.0 / nu


def test_cavity_difference_equals_effective_photon_amplitude():
    # (d2 - d4)/sqrt(2) reproduces the effective photon amplitude exactly,
    # for every nu: the antisymmetric cavity combination is the resonant mode
    rng = np.random.default_rng(9)
    for _ in range(100):
        nu = float(rng.uniform(0.0, 20.0))
        t = float(rng.uniform(0.0, 8.0))
        a = exact_amplitudes(1.0, nu, t)
        b = effective_amplitudes(1.0, t)
        assert abs((a.d2 - a.d4) / SQRT2 - b.d2) < 1e-14
