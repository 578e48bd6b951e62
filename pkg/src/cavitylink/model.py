"""Truncated Hilbert space and value types for the fibre-coupled two-atom system.

The simulated system is a Lambda-type atom (A) in one cavity and a V-type
atom (B) in another, the cavities connected by a short optical fibre that
supports a single resonant mode per circular polarization. Starting from
atom A excited and all field modes empty, the total excitation number N is
at most 1 at all times: the Hamiltonian conserves N and every decay channel
lowers it. The state space is therefore truncated, exactly, to the 9
single-excitation product states plus the 2 ground sinks reachable by decay.

Canonical basis order (indices are 1-based in documentation and CSV column
names, 0-based in arrays):

    1   |e>_A      |0>_A    |0>_f    |0>_B    |g>_B
    2   |g-1>_A    |1-1>_A  |0>_f    |0>_B    |g>_B
    3   |g-1>_A    |0>_A    |1-1>_f  |0>_B    |g>_B
    4   |g-1>_A    |0>_A    |0>_f    |1-1>_B  |g>_B
    5   |g-1>_A    |0>_A    |0>_f    |0>_B    |e-1>_B
    6   |g+1>_A    |1+1>_A  |0>_f    |0>_B    |g>_B
    7   |g+1>_A    |0>_A    |1+1>_f  |0>_B    |g>_B
    8   |g+1>_A    |0>_A    |0>_f    |1+1>_B  |g>_B
    9   |g+1>_A    |0>_A    |0>_f    |0>_B    |e+1>_B
    10  |g-1>_A    |0>_A    |0>_f    |0>_B    |g>_B    (sink, N = 0)
    11  |g+1>_A    |0>_A    |0>_f    |0>_B    |g>_B    (sink, N = 0)

States 2-5 form the sigma-minus chain, 6-9 the sigma-plus chain. Amplitude
CSV columns follow this order and are named d1..d9, s10, s11.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

DIM = 11
DIM_EFFECTIVE = 5

SQRT2 = math.sqrt(2.0)

# Subsystem level labels.
ATOM_A_LEVELS = ("e", "g-1", "g+1")
MODE_LEVELS = ("0", "1-1", "1+1")
ATOM_B_LEVELS = ("g", "e-1", "e+1")


@dataclass(frozen=True)
class BasisState:
    """One product state of the five subsystems."""

    atom_a: str
    cavity_a: str
    fibre: str
    cavity_b: str
    atom_b: str

    def __post_init__(self) -> None:
        if self.atom_a not in ATOM_A_LEVELS:
            raise ValueError(f"bad atom_a label {self.atom_a!r}")
        for name in ("cavity_a", "fibre", "cavity_b"):
            if getattr(self, name) not in MODE_LEVELS:
                raise ValueError(f"bad {name} label {getattr(self, name)!r}")
        if self.atom_b not in ATOM_B_LEVELS:
            raise ValueError(f"bad atom_b label {self.atom_b!r}")

    def label(self) -> str:
        return (
            f"|{self.atom_a}>_A |{self.cavity_a}>_cA |{self.fibre}>_f "
            f"|{self.cavity_b}>_cB |{self.atom_b}>_B"
        )


def excitation_number(state: BasisState) -> int:
    """Total excitation number N of a basis state (atomic plus photonic)."""
    n = 1 if state.atom_a == "e" else 0
    for mode in (state.cavity_a, state.fibre, state.cavity_b):
        if mode != "0":
            n += 1
    if state.atom_b != "g":
        n += 1
    return n


def _chain(sign: str) -> list[BasisState]:
    g, one, e = f"g{sign}", f"1{sign}", f"e{sign}"
    return [
        BasisState(g, one, "0", "0", "g"),
        BasisState(g, "0", one, "0", "g"),
        BasisState(g, "0", "0", one, "g"),
        BasisState(g, "0", "0", "0", e),
    ]


def enumerate_basis() -> tuple[BasisState, ...]:
    """The 11 canonical basis states, in the order documented above."""
    states = [BasisState("e", "0", "0", "0", "g")]
    states += _chain("-1")
    states += _chain("+1")
    states.append(BasisState("g-1", "0", "0", "0", "g"))
    states.append(BasisState("g+1", "0", "0", "0", "g"))
    return tuple(states)


BASIS = enumerate_basis()
_INDEX = {state: i for i, state in enumerate(BASIS)}

# N per canonical index; used by the number-conservation checks.
EXCITATION_NUMBERS = np.array([excitation_number(s) for s in BASIS])


def basis_index(state: BasisState) -> int:
    """0-based canonical index of a basis state."""
    try:
        return _INDEX[state]
    except KeyError:
        raise ValueError(f"state {state.label()} is outside the truncated space") from None


def amplitude_column_names() -> tuple[str, ...]:
    """CSV column names for the 11 canonical amplitudes."""
    return ("d1", "d2", "d3", "d4", "d5", "d6", "d7", "d8", "d9", "s10", "s11")


@dataclass(frozen=True)
class SystemParams:
    """Couplings and decay rates, all in units of the atom-A coupling lambda_a.

    lambda_b is not free: the scheme requires lambda_b = sqrt(2) * lambda_a
    so that both polarization branches transfer population completely. It is
    exposed as a derived property rather than a settable field.
    """

    lambda_a: float = 1.0
    nu: float = 0.0
    gamma_c: float = 0.0
    gamma_f: float = 0.0
    kappa_a: float = 0.0

    def __post_init__(self) -> None:
        if not self.lambda_a > 0.0:
            raise ValueError("lambda_a must be positive")
        if self.nu < 0.0:
            raise ValueError("nu must be nonnegative")
        for name in ("gamma_c", "gamma_f", "kappa_a"):
            if getattr(self, name) < 0.0:
                raise ValueError(f"{name} must be nonnegative")

    @property
    def lambda_b(self) -> float:
        return SQRT2 * self.lambda_a


def as_state_vector(psi: Iterable[complex], dim: int = DIM) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (dim,):
        raise ValueError(f"state vector must have shape ({dim},), got {psi.shape}")
    return psi


def norm_deviation(psi: np.ndarray) -> float:
    return abs(float(np.vdot(psi, psi).real) - 1.0)


def pure_density(psi: np.ndarray) -> np.ndarray:
    """Rank-1 density matrix |psi><psi| of a normalized state vector."""
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim != 1:
        raise ValueError("pure_density expects a state vector")
    if norm_deviation(psi) > 1e-6:
        raise ValueError(f"state vector is not normalized (deviation {norm_deviation(psi):.3e})")
    return np.outer(psi, psi.conj())


def check_density_matrix(
    rho: np.ndarray,
    trace_tol: float = 1e-8,
    herm_tol: float = 1e-10,
    eig_floor: float = -1e-8,
) -> np.ndarray:
    """Validate Hermiticity, unit trace and positivity; return rho unchanged."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError("density matrix must be square")
    herm = float(np.abs(rho - rho.conj().T).max())
    if herm > herm_tol:
        raise ValueError(f"density matrix not Hermitian (deviation {herm:.3e})")
    tr = abs(float(np.trace(rho).real) - 1.0)
    if tr > trace_tol:
        raise ValueError(f"density matrix trace deviates from 1 by {tr:.3e}")
    min_eig = float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min())
    if min_eig < eig_floor:
        raise ValueError(f"density matrix has negative eigenvalue {min_eig:.3e}")
    return rho


@dataclass
class Trajectory:
    """Time series of snapshots plus derived observables.

    kind is "state" (snapshots shaped (n, d)) or "density" (shaped (n, d, d)).
    observables maps series names such as "F1" or "trace_dev" to real arrays
    of length n; the "populations" entry is an (n, d) array.
    """

    times: np.ndarray
    snapshots: np.ndarray
    kind: str
    observables: dict[str, np.ndarray]
    diagnostics: dict[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.times = np.asarray(self.times, dtype=float)
        self.snapshots = np.asarray(self.snapshots, dtype=complex)
        if self.kind not in ("state", "density"):
            raise ValueError(f"unknown trajectory kind {self.kind!r}")
        if self.times.ndim != 1 or self.times.size == 0:
            raise ValueError("times must be a nonempty 1-d array")
        if np.any(np.diff(self.times) <= 0.0):
            raise ValueError("times must be strictly increasing")
        expected_ndim = 2 if self.kind == "state" else 3
        if self.snapshots.ndim != expected_ndim or len(self.snapshots) != len(self.times):
            raise ValueError("snapshot count must match time count")

    def __len__(self) -> int:
        return len(self.times)


def format_complex(z: complex) -> str:
    """Render a complex number as re+imi / re-imi with round-trip precision."""
    re, im = float(z.real), float(z.imag)
    sign = "+" if im >= 0.0 or math.isnan(im) else "-"
    return f"{re!r}{sign}{abs(im)!r}i"
