"""Interaction-picture Hamiltonians over the canonical basis.

Two models are provided. The exact model couples the 9 single-excitation
states as two 5-site chains sharing the initial state:

    1 --lambda_a-- 2 --nu-- 3 --nu-- 4 --lambda_b-- 5      (sigma-minus)
    1 --lambda_a-- 6 --nu-- 7 --nu-- 8 --lambda_b-- 9      (sigma-plus)

with the ground sinks 10 and 11 dynamically decoupled. All couplings are
taken real and positive; on resonance the diagonal vanishes.

The effective model is the large-nu limit in the normal-mode picture: of
the three photon normal modes per polarization only the fibre-free mode c0
stays resonant with the atoms, so each polarization branch reduces to a
3-level chain atomA -> c0 photon -> atomB with couplings lambda_a/sqrt(2)
and -lambda_b/sqrt(2). Its 5-state basis, ordered

    1  |e>_A    |0>_c    |g>_B
    2  |g-1>_A  |1-1>_c  |g>_B
    3  |g+1>_A  |1+1>_c  |g>_B
    4  |g-1>_A  |0>_c    |e-1>_B
    5  |g+1>_A  |0>_c    |e+1>_B

uses c for the shared normal mode.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import DIM, DIM_EFFECTIVE, EXCITATION_NUMBERS, SQRT2, SystemParams, format_complex

HERMITICITY_TOL = 1e-12


@dataclass(frozen=True)
class HamiltonianMatrix:
    """A Hermitian matrix (units of lambda_a) tagged with its model."""

    entries: np.ndarray
    model_tag: str  # "Exact11" or "Effective5"

    def __post_init__(self) -> None:
        entries = np.asarray(self.entries, dtype=complex)
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)
        if self.model_tag not in ("Exact11", "Effective5"):
            raise ValueError(f"unknown model tag {self.model_tag!r}")
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ValueError("Hamiltonian must be square")
        if np.abs(entries - entries.conj().T).max() > HERMITICITY_TOL:
            raise ValueError("Hamiltonian must be Hermitian")

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


def build_exact(params: SystemParams) -> HamiltonianMatrix:
    """The 11x11 interaction Hamiltonian for the full cavity-fibre-cavity chain."""
    lam_a, lam_b, nu = params.lambda_a, params.lambda_b, params.nu
    h = np.zeros((DIM, DIM), dtype=complex)
    couplings = [
        (0, 1, lam_a), (1, 2, nu), (2, 3, nu), (3, 4, lam_b),
        (0, 5, lam_a), (5, 6, nu), (6, 7, nu), (7, 8, lam_b),
    ]
    for i, j, v in couplings:
        h[i, j] = v
        h[j, i] = v
    return HamiltonianMatrix(h, "Exact11")


def build_effective(params: SystemParams) -> HamiltonianMatrix:
    """The 5x5 resonant normal-mode Hamiltonian (fibre modes eliminated).

    The minus sign on the atom-B couplings comes from the c0 mode being the
    antisymmetric combination of the two cavity modes.
    """
    g_a = params.lambda_a / SQRT2
    g_b = -params.lambda_b / SQRT2
    h = np.zeros((DIM_EFFECTIVE, DIM_EFFECTIVE), dtype=complex)
    for i, j, v in [(0, 1, g_a), (0, 2, g_a), (1, 3, g_b), (2, 4, g_b)]:
        h[i, j] = v
        h[j, i] = v
    return HamiltonianMatrix(h, "Effective5")


@dataclass(frozen=True)
class NormalModeMap:
    """Unitary map from (a_A, a_B, b) to the normal modes (c0, c+, c-).

    Rows are the normal modes, columns the physical modes, identical for the
    two polarizations. c0 carries no fibre component, which is what protects
    the effective dynamics from fibre loss.
    """

    coefficients: np.ndarray

    def unitarity_deviation(self) -> float:
        u = self.coefficients
        return float(np.abs(u @ u.conj().T - np.eye(3)).max())


def normal_mode_map() -> NormalModeMap:
    u = np.array(
        [
            [1.0 / SQRT2, -1.0 / SQRT2, 0.0],
            [0.5, 0.5, 1.0 / SQRT2],
            [0.5, 0.5, -1.0 / SQRT2],
        ],
        dtype=complex,
    )
    u.setflags(write=False)
    return NormalModeMap(u)


def effective_embedding() -> np.ndarray:
    """Isometry from the 5-state effective basis into the 11-state basis.

    The atomic states map to themselves and each c0 photon state maps to the
    antisymmetric cavity combination (|1>_cA - |1>_cB)/sqrt(2) of its
    polarization. Columns are orthonormal: E† E = identity(5).
    """
    e = np.zeros((DIM, DIM_EFFECTIVE), dtype=complex)
    e[0, 0] = 1.0
    e[1, 1] = 1.0 / SQRT2
    e[3, 1] = -1.0 / SQRT2
    e[5, 2] = 1.0 / SQRT2
    e[7, 2] = -1.0 / SQRT2
    e[4, 3] = 1.0
    e[8, 4] = 1.0
    e.setflags(write=False)
    return e


def number_commutator_deviation(h: HamiltonianMatrix) -> float:
    """Max element of [H, N] for the exact model; 0 means N is conserved."""
    if h.model_tag != "Exact11":
        raise ValueError("number conservation check applies to the exact model")
    n = np.diag(EXCITATION_NUMBERS.astype(complex))
    m = h.entries
    return float(np.abs(m @ n - n @ m).max())


def format_matrix(h: HamiltonianMatrix) -> str:
    """Plain-text debug rendering, row-major, entries as re+imi."""
    rows = []
    for row in h.entries:
        rows.append(" ".join(format_complex(z) for z in row))
    return "\n".join(rows)
