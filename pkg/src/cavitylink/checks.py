"""Self-validation checks wired to the CLI validate subcommand.

Each check measures a deviation and compares it against a tolerance, so a
failure report always carries the observed number. The closed-form
amplitude function is injectable to let the test suite verify that a
corrupted formula is actually caught.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import oracle
from .dynamics import IntegratorConfig, Propagator, build_channels, evolve_closed, evolve_open, steady_trace_check
from .hamiltonian import build_effective, build_exact, effective_embedding, normal_mode_map
from .model import SQRT2, SystemParams, pure_density
from .observables import fidelity_f1, fidelity_f3

AmplitudeFn = Callable[[float, float, float], oracle.ExactAmplitudes]

T_STAR = oracle.entanglement_time(1.0)
_NU_SET = (math.sqrt(3.0), math.sqrt(8.0), math.sqrt(24.0), math.sqrt(120.0))


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    measured: float
    tolerance: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.name}: measured={self.measured:.3e} tolerance={self.tolerance:.3e}"
        if self.detail:
            text += f" ({self.detail})"
        return text


def _result(name: str, measured: float, default_tol: float,
            override: float | None, detail: str = "") -> CheckResult:
    tol = default_tol if override is None else override
    return CheckResult(name, measured <= tol, float(measured), float(tol), detail)


def _initial_state(dim: int) -> np.ndarray:
    psi = np.zeros(dim, dtype=complex)
    psi[0] = 1.0
    return psi


def _sample_points(n: int, seed: int = 20240811) -> tuple[np.ndarray, np.ndarray]:
    rng = np.random.default_rng(seed)
    return rng.uniform(0.0, 15.0, n), rng.uniform(0.0, 10.0, n)


def _check_normalization(fn: AmplitudeFn, override: float | None) -> CheckResult:
    nus, ts = _sample_points(1000)
    measured = max(fn(1.0, nu, t).norm_identity_deviation() for nu, t in zip(nus, ts))
    return _result("closed-form-normalization", measured, 1e-12, override,
                   "probability identity over 1000 sampled (nu, t)")


def _check_symmetry(fn: AmplitudeFn, override: float | None) -> CheckResult:
    nus, ts = _sample_points(200, seed=7)
    measured = 0.0
    for nu, t in zip(nus, ts):
        a = fn(1.0, nu, t)
        measured = max(
            measured,
            abs(a.d2 - a.d6), abs(a.d3 - a.d7), abs(a.d4 - a.d8), abs(a.d5 - a.d9),
            abs(a.d1.imag), abs(a.d3.imag), abs(a.d5.imag),
            abs(a.d2.real), abs(a.d4.real),
        )
    return _result("closed-form-symmetry", measured, 1e-12, override,
                   "branch equality and real/imaginary pattern")


def _check_effective_normalization(override: float | None) -> CheckResult:
    _, ts = _sample_points(1000, seed=11)
    measured = max(
        oracle.effective_amplitudes(1.0, t).norm_identity_deviation() for t in ts
    )
    return _result("effective-normalization", measured, 1e-12, override)


def _check_schroedinger_residual(fn: AmplitudeFn, override: float | None) -> CheckResult:
    h = 1e-3
    measured = 0.0
    for nu in (math.sqrt(3.0), math.sqrt(8.0)):
        ham = build_exact(SystemParams(nu=nu)).entries
        for t in (0.3, 0.9, 1.7, 2.2):
            plus = fn(1.0, nu, t + h).as_vector()
            minus = fn(1.0, nu, t - h).as_vector()
            centre = fn(1.0, nu, t).as_vector()
            residual = (plus - minus) / (2.0 * h) + 1j * (ham @ centre)
            measured = max(measured, float(np.abs(residual).max()))
    return _result("schroedinger-residual", measured, 1e-4, override,
                   "central finite difference vs -iH psi")


def _check_propagator_vs_closed_form(fn: AmplitudeFn, override: float | None) -> CheckResult:
    times = np.linspace(0.0, 2.0 * T_STAR, 50)
    measured = 0.0
    for nu in _NU_SET:
        prop = Propagator(build_exact(SystemParams(nu=nu)))
        psi0 = _initial_state(11)
        for t in times:
            numeric = prop.propagate(psi0, t)
            measured = max(measured, float(np.abs(numeric - fn(1.0, nu, t).as_vector()).max()))
    return _result("propagator-vs-closed-form", measured, 1e-6, override,
                   "4 coupling ratios, 50 times")


def _check_spectral_frequencies(override: float | None) -> CheckResult:
    measured = 0.0
    for nu in _NU_SET:
        prop = Propagator(build_exact(SystemParams(nu=nu)))
        reachable = prop.eigenvalues[np.abs(prop.eigenvectors[0, :]) > 1e-10]
        ratio = math.sqrt(1.0 + nu * nu)
        expected = np.sort([0.0, -SQRT2, SQRT2, -SQRT2 * ratio, SQRT2 * ratio])
        if reachable.size != expected.size:
            return _result("spectral-frequencies", math.inf, 1e-10, override,
                           f"expected 5 reachable eigenvalues, found {reachable.size}")
        measured = max(measured, float(np.abs(np.sort(reachable) - expected).max()))
    return _result("spectral-frequencies", measured, 1e-10, override,
                   "eigenvalues reachable from the initial state")


def _check_normal_mode_unitarity(override: float | None) -> CheckResult:
    nm = normal_mode_map()
    measured = max(nm.unitarity_deviation(), float(abs(nm.coefficients[0, 2])))
    return _result("normal-mode-unitarity", measured, 1e-12, override,
                   "U U† = 1 and fibre-free resonant mode")


def _paired_deviation(fn: AmplitudeFn, nu: float, times: Sequence[float]) -> float:
    embed = effective_embedding()
    non_fibre = [0, 1, 3, 4, 5, 7, 8]
    worst = 0.0
    for t in times:
        exact_vec = fn(1.0, nu, t).as_vector()
        eff_vec = embed @ oracle.effective_amplitudes(1.0, t).as_vector()
        worst = max(worst, float(np.abs((exact_vec - eff_vec)[non_fibre]).max()))
    return worst


def _check_effective_convergence(fn: AmplitudeFn, nu: float, tol: float,
                                 override: float | None) -> CheckResult:
    times = np.linspace(0.0, T_STAR, 400)
    measured = _paired_deviation(fn, nu, times)
    return _result(f"effective-convergence-nu{nu * nu:.0f}", measured, tol, override,
                   "amplitudes vs embedded effective amplitudes, fibre excluded")


def _check_effective_populations(override: float | None) -> CheckResult:
    nu = 100.0
    times = np.linspace(0.0, 2.0 * T_STAR, 80)
    exact_traj = evolve_closed(build_exact(SystemParams(nu=nu)), _initial_state(11), times)
    eff_traj = evolve_closed(build_effective(SystemParams(nu=nu)), _initial_state(5), times)
    embed = effective_embedding()
    measured = 0.0
    for psi, phi in zip(exact_traj.snapshots, eff_traj.snapshots):
        projected = np.abs(embed.conj().T @ psi) ** 2
        measured = max(measured, float(np.abs(projected - np.abs(phi) ** 2).max()))
    return _result("effective-populations-nu10000", measured, 1e-3, override,
                   "population trajectories, exact model projected onto effective basis")


def _open_setup(params: SystemParams, times: np.ndarray):
    ham = build_exact(params)
    config = IntegratorConfig.for_params(params, t_max=float(times[-1]))
    rho0 = pure_density(_initial_state(11))
    return evolve_open(ham, build_channels(params), rho0, config, times)


def _check_open_closed_reduction(override: float | None) -> CheckResult:
    params = SystemParams(nu=math.sqrt(3.0))
    times = np.linspace(0.0, T_STAR, 21)[1:]
    open_traj = _open_setup(params, times)
    closed_traj = evolve_closed(build_exact(params), _initial_state(11), times)
    measured = 0.0
    for rho, psi in zip(open_traj.snapshots, closed_traj.snapshots):
        measured = max(measured, float(np.abs(rho - np.outer(psi, psi.conj())).max()))
    return _result("open-closed-reduction", measured, 1e-8, override,
                   "zero-rate master equation vs Schroedinger evolution")


def _check_open_cptp(override: float | None) -> list[CheckResult]:
    params = SystemParams(nu=math.sqrt(3.0), gamma_c=0.05, gamma_f=0.05, kappa_a=0.05)
    times = np.linspace(0.0, T_STAR, 21)[1:]
    report = steady_trace_check(_open_setup(params, times))
    return [
        _result("open-trace", report.max_trace_dev, 1e-8, override),
        _result("open-hermiticity", report.max_hermiticity_dev, 1e-10, override),
        _result("open-positivity", max(0.0, -report.min_eigenvalue), 1e-6, override,
                f"min eigenvalue {report.min_eigenvalue:.3e}"),
    ]


def _check_f3_pure_consistency(override: float | None) -> CheckResult:
    rng = np.random.default_rng(23)
    measured = 0.0
    for _ in range(50):
        psi = rng.normal(size=11) + 1j * rng.normal(size=11)
        psi /= np.linalg.norm(psi)
        measured = max(measured, abs(fidelity_f3(pure_density(psi)) - fidelity_f1(psi)))
    return _result("f3-pure-state-consistency", measured, 1e-12, override)


def run_all_checks(
    tolerance: float | None = None,
    exact_amplitude_fn: AmplitudeFn | None = None,
) -> list[CheckResult]:
    """Run the full validation suite; tolerance overrides every default."""
    fn = exact_amplitude_fn or oracle.exact_amplitudes
    results = [
        _check_normalization(fn, tolerance),
        _check_symmetry(fn, tolerance),
        _check_effective_normalization(tolerance),
        _check_schroedinger_residual(fn, tolerance),
        _check_propagator_vs_closed_form(fn, tolerance),
        _check_spectral_frequencies(tolerance),
        _check_normal_mode_unitarity(tolerance),
        _check_effective_convergence(fn, math.sqrt(120.0), 0.05, tolerance),
        _check_effective_convergence(fn, 100.0, 0.005, tolerance),
        _check_effective_populations(tolerance),
        _check_open_closed_reduction(tolerance),
        *_check_open_cptp(tolerance),
        _check_f3_pure_consistency(tolerance),
    ]
    return results
