"""Numerical propagators for the closed and open system.

Closed evolution uses the spectral decomposition of the Hamiltonian, so the
only error is the eigensolver's. Open evolution integrates the Lindblad
master equation

    drho/dt = -i [H, rho] + sum_k gamma_k (L_k rho L_k† - (L_k† L_k rho + rho L_k† L_k)/2)

with a classical fixed-step 4th-order Runge-Kutta scheme. Step adequacy is
certified rather than assumed: after each integration the run is repeated
with dt/2 and accepted only if the final-time fidelity F3 moved by less
than a tolerance, halving again (reusing the finer run) up to a retry
limit. Every jump operator moves exactly one canonical basis state to a
lower-excitation one, so the dissipator is a sum of single-entry matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hamiltonian import HamiltonianMatrix
from .model import (
    DIM,
    SystemParams,
    Trajectory,
    as_state_vector,
    check_density_matrix,
    norm_deviation,
)
from .observables import fidelity_f1, fidelity_f2, fidelity_f3, populations

RECONSTRUCTION_TOL = 1e-10
NORM_TOL = 1e-10

# Default integrator step as a fraction of the fastest coupling period; the
# value keeps the zero-rate reduction to closed evolution below 1e-8 per
# element out to a few entanglement times.
DEFAULT_DT_FACTOR = 0.01
STABILITY_DT_FACTOR = 0.1


class ConvergenceError(RuntimeError):
    """Raised when dt halving fails to stabilize the final-time fidelity."""

    def __init__(self, message: str, coarse: float, fine: float, dt: float):
        super().__init__(message)
        self.coarse = coarse
        self.fine = fine
        self.dt = dt


class Propagator:
    """Cached eigendecomposition of a Hamiltonian, applied as exp(-iHt)."""

    def __init__(self, hamiltonian: HamiltonianMatrix):
        matrix = np.asarray(hamiltonian.entries)
        herm_dev = float(np.abs(matrix - matrix.conj().T).max())
        if herm_dev > RECONSTRUCTION_TOL:
            raise ValueError(f"Hamiltonian is not Hermitian (deviation {herm_dev:.3e})")
        self.hamiltonian = hamiltonian
        self.eigenvalues, self.eigenvectors = np.linalg.eigh(matrix)
        recon = self.eigenvectors @ np.diag(self.eigenvalues) @ self.eigenvectors.conj().T
        self.reconstruction_error = float(np.abs(recon - matrix).max())
        if self.reconstruction_error > RECONSTRUCTION_TOL:
            raise ValueError(
                f"spectral reconstruction error {self.reconstruction_error:.3e} too large"
            )

    def propagate(self, psi0: np.ndarray, t: float) -> np.ndarray:
        v = self.eigenvectors
        phases = np.exp(-1j * self.eigenvalues * t)
        return v @ (phases * (v.conj().T @ psi0))


def evolve_closed(
    hamiltonian: HamiltonianMatrix, psi0: np.ndarray, times: np.ndarray
) -> Trajectory:
    """Schroedinger evolution of psi0 sampled at the requested times."""
    dim = hamiltonian.dim
    psi0 = as_state_vector(psi0, dim)
    if norm_deviation(psi0) > 1e-6:
        raise ValueError("initial state must be normalized")
    prop = Propagator(hamiltonian)
    times = np.asarray(times, dtype=float)
    states = np.empty((len(times), dim), dtype=complex)
    for k, t in enumerate(times):
        states[k] = prop.propagate(psi0, t)
        if norm_deviation(states[k]) > NORM_TOL:
            raise RuntimeError(f"norm drifted by {norm_deviation(states[k]):.3e} at t={t}")
    fid = fidelity_f1 if hamiltonian.model_tag == "Exact11" else fidelity_f2
    label = "F1" if hamiltonian.model_tag == "Exact11" else "F2"
    observables = {
        label: np.array([fid(s) for s in states]),
        "trace_dev": np.array([norm_deviation(s) for s in states]),
        "populations": np.array([populations(s) for s in states]),
    }
    return Trajectory(times, states, "state", observables)


CHANNEL_LABELS = (
    "cavityA-", "cavityA+", "cavityB-", "cavityB+",
    "fibre-", "fibre+", "atomA-", "atomA+", "atomB-", "atomB+",
)


@dataclass(frozen=True)
class LindbladChannel:
    """One decay channel: a single-entry jump operator and its rate."""

    label: str
    rate: float
    source: int  # 0-based canonical index drained by the jump
    target: int  # 0-based canonical index receiving the population

    def __post_init__(self) -> None:
        if self.rate < 0.0:
            raise ValueError("channel rate must be nonnegative")

    def operator(self) -> np.ndarray:
        op = np.zeros((DIM, DIM), dtype=complex)
        op[self.target, self.source] = 1.0
        return op


def build_channels(params: SystemParams) -> list[LindbladChannel]:
    """The ten decay channels of the master equation in a fixed label order.

    Cavity and fibre photons decay to the sink of their polarization. Atom A
    decays from |e> into either ground sublevel; atom B decays from |e_j>
    back to |g>, landing in the sink that matches atom A's sublevel.
    """
    gc, gf, ka = params.gamma_c, params.gamma_f, params.kappa_a
    spec = [
        ("cavityA-", gc, 1, 9), ("cavityA+", gc, 5, 10),
        ("cavityB-", gc, 3, 9), ("cavityB+", gc, 7, 10),
        ("fibre-", gf, 2, 9), ("fibre+", gf, 6, 10),
        ("atomA-", ka, 0, 9), ("atomA+", ka, 0, 10),
        ("atomB-", ka, 4, 9), ("atomB+", ka, 8, 10),
    ]
    return [LindbladChannel(label, rate, src, dst) for label, rate, src, dst in spec]


@dataclass(frozen=True)
class IntegratorConfig:
    """Fixed-step integration settings.

    Prefer the for_params constructor, which derives a stable default dt
    from the fastest coupling and enforces dt <= 0.1/max(lambda_a, nu).
    """

    dt: float
    t_max: float
    convergence_tol: float = 1e-8
    max_halvings: int = 6

    def __post_init__(self) -> None:
        if not self.dt > 0.0:
            raise ValueError("dt must be positive")
        if self.t_max < 0.0:
            raise ValueError("t_max must be nonnegative")
        if self.convergence_tol <= 0.0:
            raise ValueError("convergence_tol must be positive")
        if self.max_halvings < 0:
            raise ValueError("max_halvings must be nonnegative")

    @classmethod
    def for_params(
        cls,
        params: SystemParams,
        t_max: float,
        dt: float | None = None,
        convergence_tol: float = 1e-8,
        max_halvings: int = 6,
    ) -> "IntegratorConfig":
        scale = max(params.lambda_a, params.nu)
        if dt is None:
            dt = DEFAULT_DT_FACTOR / scale
        if dt > STABILITY_DT_FACTOR / scale:
            raise ValueError(
                f"dt={dt} exceeds the stability guard {STABILITY_DT_FACTOR / scale:.3e}"
            )
        return cls(dt=dt, t_max=t_max, convergence_tol=convergence_tol,
                   max_halvings=max_halvings)


def _rhs_factory(hamiltonian: np.ndarray, channels: list[LindbladChannel]):
    h = hamiltonian
    active = [ch for ch in channels if ch.rate > 0.0]
    if not active:
        def rhs_closed(rho: np.ndarray) -> np.ndarray:
            return -1j * (h @ rho - rho @ h)
        return rhs_closed

    ls = np.stack([math.sqrt(ch.rate) * ch.operator() for ch in active])
    ls_dag = ls.conj().transpose(0, 2, 1)
    # G = sum_k L_k† L_k, diagonal here but assembled generically.
    g = np.einsum("kij,kil->jl", ls.conj(), ls)

    def rhs(rho: np.ndarray) -> np.ndarray:
        out = -1j * (h @ rho - rho @ h)
        out += (ls @ rho @ ls_dag).sum(axis=0)
        out -= 0.5 * (g @ rho + rho @ g)
        return out

    return rhs


def _rk4_step(rhs, rho: np.ndarray, h: float) -> np.ndarray:
    k1 = rhs(rho)
    k2 = rhs(rho + 0.5 * h * k1)
    k3 = rhs(rho + 0.5 * h * k2)
    k4 = rhs(rho + h * k3)
    return rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _integrate(rhs, rho0: np.ndarray, times: np.ndarray, dt: float) -> np.ndarray:
    """March rho0 through the sorted times, landing on each exactly."""
    rho = rho0.copy()
    t = 0.0
    out = np.empty((len(times), DIM, DIM), dtype=complex)
    for k, target_t in enumerate(times):
        span = target_t - t
        if span > 0.0:
            n_steps = max(1, math.ceil(span / dt - 1e-12))
            h = span / n_steps
            for _ in range(n_steps):
                rho = _rk4_step(rhs, rho, h)
            t = target_t
        out[k] = rho
    return out


def evolve_open(
    hamiltonian: HamiltonianMatrix,
    channels: list[LindbladChannel],
    rho0: np.ndarray,
    config: IntegratorConfig,
    times: np.ndarray,
) -> Trajectory:
    """Master-equation evolution with a dt-halving convergence check.

    The returned trajectory is the coarsest run whose final-time F3 agrees
    with its dt/2 refinement to within config.convergence_tol. Diagnostics
    record the accepted dt, how many halvings were needed and both fidelity
    estimates of the accepted pair.
    """
    if hamiltonian.model_tag != "Exact11":
        raise ValueError("open evolution is defined on the exact 11-state model")
    rho0 = check_density_matrix(rho0)
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0:
        raise ValueError("times must be a nonempty 1-d array")
    if times[0] < 0.0 or np.any(np.diff(times) <= 0.0):
        raise ValueError("times must be nonnegative and strictly increasing")

    rhs = _rhs_factory(np.asarray(hamiltonian.entries), channels)
    dt = config.dt
    snapshots = _integrate(rhs, rho0, times, dt)
    f3_coarse = fidelity_f3(snapshots[-1])
    halvings = 0
    while True:
        fine = _integrate(rhs, rho0, times, dt / 2.0)
        f3_fine = fidelity_f3(fine[-1])
        if abs(f3_fine - f3_coarse) < config.convergence_tol:
            break
        if halvings >= config.max_halvings:
            raise ConvergenceError(
                f"final-time F3 still moving by {abs(f3_fine - f3_coarse):.3e} "
                f"after {halvings} halvings (dt={dt:.3e})",
                coarse=f3_coarse,
                fine=f3_fine,
                dt=dt,
            )
        snapshots, f3_coarse = fine, f3_fine
        dt /= 2.0
        halvings += 1

    trace_dev = np.array([abs(float(np.trace(r).real) - 1.0) for r in snapshots])
    observables = {
        "F3": np.array([fidelity_f3(r) for r in snapshots]),
        "trace_dev": trace_dev,
        "populations": np.array([populations(r) for r in snapshots]),
    }
    diagnostics = {
        "dt": dt,
        "halvings": float(halvings),
        "f3_final": f3_coarse,
        "f3_final_refined": f3_fine,
        "max_trace_dev": float(trace_dev.max()),
    }
    return Trajectory(times, snapshots, "density", observables, diagnostics)


@dataclass(frozen=True)
class TraceReport:
    """Worst-case CPTP deviations over an open trajectory."""

    max_trace_dev: float
    max_hermiticity_dev: float
    min_eigenvalue: float


def steady_trace_check(traj: Trajectory) -> TraceReport:
    """Scan every snapshot of an open run for trace, Hermiticity and positivity."""
    if traj.kind != "density":
        raise ValueError("steady_trace_check expects an open-system trajectory")
    if len(traj) == 0:
        raise ValueError("trajectory is empty")
    trace_dev = 0.0
    herm_dev = 0.0
    min_eig = math.inf
    for rho in traj.snapshots:
        trace_dev = max(trace_dev, abs(float(np.trace(rho).real) - 1.0))
        herm_dev = max(herm_dev, float(np.abs(rho - rho.conj().T).max()))
        eigs = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))
        min_eig = min(min_eig, float(eigs.min()))
    return TraceReport(trace_dev, herm_dev, min_eig)


__all__ = [
    "ConvergenceError",
    "Propagator",
    "evolve_closed",
    "LindbladChannel",
    "CHANNEL_LABELS",
    "build_channels",
    "IntegratorConfig",
    "evolve_open",
    "TraceReport",
    "steady_trace_check",
    "DEFAULT_DT_FACTOR",
]
