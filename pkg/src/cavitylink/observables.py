"""Fidelities with the target entangled state, and population diagnostics.

The target is the maximally entangled two-atom state accompanied by field
vacuum, (|g-1>_A |e-1>_B + |g+1>_A |e+1>_B)/sqrt(2). F1 and F2 are squared
overlaps of pure states from the exact and effective models; F3 is the
corresponding diagonal matrix element of an open-system density matrix.
"""

from __future__ import annotations

import numpy as np

from .model import DIM, DIM_EFFECTIVE, SQRT2


def target_state_exact() -> np.ndarray:
    """(e5 + e9)/sqrt(2) in the canonical 11-state basis."""
    psi = np.zeros(DIM, dtype=complex)
    psi[4] = psi[8] = 1.0 / SQRT2
    return psi


def target_state_effective() -> np.ndarray:
    """(e4 + e5)/sqrt(2) in the 5-state effective basis."""
    psi = np.zeros(DIM_EFFECTIVE, dtype=complex)
    psi[3] = psi[4] = 1.0 / SQRT2
    return psi


_TARGET_EXACT = target_state_exact()
_TARGET_EFFECTIVE = target_state_effective()


def fidelity_f1(psi: np.ndarray) -> float:
    """|<target|psi>|^2 for an exact-model state vector."""
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (DIM,):
        raise ValueError(f"F1 expects an {DIM}-component state vector")
    return float(abs(np.vdot(_TARGET_EXACT, psi)) ** 2)


def fidelity_f2(psi: np.ndarray) -> float:
    """|<target|psi>|^2 for an effective-model state vector."""
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (DIM_EFFECTIVE,):
        raise ValueError(f"F2 expects a {DIM_EFFECTIVE}-component state vector")
    return float(abs(np.vdot(_TARGET_EFFECTIVE, psi)) ** 2)


def fidelity_f3(rho: np.ndarray) -> float:
    """<target| rho |target> for an 11x11 density matrix."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (DIM, DIM):
        raise ValueError(f"F3 expects an {DIM}x{DIM} density matrix")
    value = np.vdot(_TARGET_EXACT, rho @ _TARGET_EXACT)
    return float(value.real)


def populations(snapshot: np.ndarray) -> np.ndarray:
    """Diagonal probabilities of a state vector or density matrix."""
    arr = np.asarray(snapshot, dtype=complex)
    if arr.ndim == 1:
        return np.abs(arr) ** 2
    if arr.ndim == 2 and arr.shape[0] == arr.shape[1]:
        return np.diag(arr).real.copy()
    raise ValueError("snapshot must be a state vector or a square density matrix")
