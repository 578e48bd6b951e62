import math

import numpy as np
import pytest

from cavitylink.dynamics import evolve_closed
from cavitylink.hamiltonian import build_exact
from cavitylink.model import DIM, SQRT2, SystemParams, pure_density
from cavitylink.observables import (
    fidelity_f1,
    fidelity_f2,
    fidelity_f3,
    populations,
    target_state_exact,
    target_state_effective,
)
from cavitylink.oracle import effective_amplitudes, entanglement_time, exact_amplitudes

T_STAR = entanglement_time(1.0)


def test_target_states():
    exact = target_state_exact()
    assert exact.shape == (11,)
    assert exact[4] == exact[8] == pytest.approx(1.0 / SQRT2)
    assert np.count_nonzero(exact) == 2
    assert abs(np.vdot(exact, exact) - 1.0) < 1e-15

    eff = target_state_effective()
    assert eff.shape == (5,)
    assert eff[3] == eff[4] == pytest.approx(1.0 / SQRT2)
    assert np.count_nonzero(eff) == 2


def test_f1_values():
    assert fidelity_f1(target_state_exact()) == pytest.approx(1.0)
    e1 = np.zeros(11, dtype=complex)
    e1[0] = 1.0
    assert fidelity_f1(e1) == 0.0
    # at nu^2 = 8 the entangling time gives the rational fidelity 64/81
    psi = exact_amplitudes(1.0, math.sqrt(8.0), T_STAR).as_vector()
    assert fidelity_f1(psi) == pytest.approx(64.0 / 81.0, abs=1e-12)


def test_f2_values():
    for t, expected in [(0.0, 0.0), (T_STAR / 2.0, 0.25), (T_STAR, 1.0)]:
        psi = effective_amplitudes(1.0, t).as_vector()
        assert fidelity_f2(psi) == pytest.approx(expected, abs=1e-12)


def test_f3_values():
    assert fidelity_f3(pure_density(target_state_exact())) == pytest.approx(1.0)
    assert fidelity_f3(np.eye(11, dtype=complex) / 11.0) == pytest.approx(1.0 / 11.0)


def test_f3_agrees_with_f1_on_pure_states():
    rng = np.random.default_rng(7)
    for _ in range(25):
        psi = rng.normal(size=11) + 1j * rng.normal(size=11)
        psi /= np.linalg.norm(psi)
        assert abs(fidelity_f3(pure_density(psi)) - fidelity_f1(psi)) < 1e-12


def test_fidelity_shape_checks():
    with pytest.raises(ValueError):
        fidelity_f1(np.zeros(5))
    with pytest.raises(ValueError):
        fidelity_f2(np.zeros(11))
    with pytest.raises(ValueError):
        fidelity_f3(np.zeros(11))
    with pytest.raises(ValueError):
        fidelity_f3(np.zeros((11, 5)))


def test_populations_of_basis_and_target():
    e3 = np.zeros(11, dtype=complex)
    e3[2] = 1.0
    pops = populations(e3)
    assert pops[2] == 1.0 and pops.sum() == 1.0

    pops = populations(pure_density(target_state_exact()))
    assert pops[4] == pytest.approx(0.5)
    assert pops[8] == pytest.approx(0.5)
    assert pops.sum() == pytest.approx(1.0)


def test_populations_rejects_bad_shapes():
    with pytest.raises(ValueError):
        populations(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        populations(np.zeros((2, 2, 2)))


def test_polarization_branches_stay_identical():
    # the initial state and the Hamiltonian treat both circular
    # polarizations symmetrically, so the two chains carry equal amplitudes
    psi0 = np.zeros(DIM, dtype=complex)
    psi0[0] = 1.0
    traj = evolve_closed(build_exact(SystemParams(nu=math.sqrt(24.0))),
                         psi0, np.linspace(0.1, 2.0 * T_STAR, 17))
    for psi in traj.snapshots:
        assert np.abs(psi[1:5] - psi[5:9]).max() < 1e-12


def test_fidelities_stay_in_unit_interval():
    rng = np.random.default_rng(11)
    for _ in range(50):
        psi = rng.normal(size=11) + 1j * rng.normal(size=11)
        psi /= np.linalg.norm(psi)
        assert 0.0 <= fidelity_f1(psi) <= 1.0
        assert 0.0 <= fidelity_f3(pure_density(psi)) <= 1.0 + 1e-15
        short = rng.normal(size=5) + 1j * rng.normal(size=5)
        short /= np.linalg.norm(short)
        assert 0.0 <= fidelity_f2(short) <= 1.0
