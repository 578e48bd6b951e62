"""Simulator for a fibre-coupled two-atom, two-cavity entangling scheme.

The package evolves a Lambda-type and a V-type atom, each in its own
cavity with the cavities linked by a short optical fibre, inside the
exactly truncated single-excitation space. It provides closed-form
amplitude solutions, an exact spectral propagator, a Lindblad master
equation integrator with step-halving convergence control, the three
entanglement fidelities, and a deterministic sweep/CSV front end.
"""

from .model import (
    BasisState,
    SystemParams,
    Trajectory,
    enumerate_basis,
    excitation_number,
    pure_density,
)
from .hamiltonian import (
    HamiltonianMatrix,
    NormalModeMap,
    build_effective,
    build_exact,
    effective_embedding,
    normal_mode_map,
)
from .oracle import (
    EffectiveAmplitudes,
    ExactAmplitudes,
    effective_amplitudes,
    entanglement_time,
    exact_amplitudes,
    resonance_ratio,
)
from .dynamics import (
    ConvergenceError,
    IntegratorConfig,
    LindbladChannel,
    Propagator,
    build_channels,
    evolve_closed,
    evolve_open,
    steady_trace_check,
)
from .observables import (
    fidelity_f1,
    fidelity_f2,
    fidelity_f3,
    populations,
    target_state_effective,
    target_state_exact,
)
from .sweep import PRESETS, RunRecord, SweepSpec, parse_config, run_point, run_preset

__version__ = "0.1.0"

__all__ = [
    "BasisState",
    "SystemParams",
    "Trajectory",
    "enumerate_basis",
    "excitation_number",
    "pure_density",
    "HamiltonianMatrix",
    "NormalModeMap",
    "build_effective",
    "build_exact",
    "effective_embedding",
    "normal_mode_map",
    "EffectiveAmplitudes",
    "ExactAmplitudes",
    "effective_amplitudes",
    "entanglement_time",
    "exact_amplitudes",
    "resonance_ratio",
    "ConvergenceError",
    "IntegratorConfig",
    "LindbladChannel",
    "Propagator",
    "build_channels",
    "evolve_closed",
    "evolve_open",
    "steady_trace_check",
    "fidelity_f1",
    "fidelity_f2",
    "fidelity_f3",
    "populations",
    "target_state_effective",
    "target_state_exact",
    "PRESETS",
    "RunRecord",
    "SweepSpec",
    "parse_config",
    "run_point",
    "run_preset",
    "__version__",
]
