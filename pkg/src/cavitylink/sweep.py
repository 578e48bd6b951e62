"""Parameter sweeps with deterministic CSV output.

A sweep runs one model over the Cartesian product of parameter value lists
and a uniform time grid, emitting one CSV row per (parameters, time) pair.
Rows are ordered lexicographically by (nu, gamma_f, gamma_c, kappa_a, t)
with each value list sorted ascending, and floats are written with
round-trip repr formatting, so identical inputs give byte-identical files
and any row can be recomputed from its own parameter echo.

Built-in presets reproduce the three reference figure layouts:

    fig2  closed models, four nu values, F1 and F2 labeled per row
    fig3  open model, four nu values crossed with four fibre decay rates
    fig4  open model at nu = sqrt(399), cavity decay crossed with atomic decay

The fig2 CSV carries an extra F_label column ahead of t so that a renderer
can draw the exact and effective curves in the same panel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .dynamics import IntegratorConfig, build_channels, evolve_closed, evolve_open
from .hamiltonian import build_effective, build_exact
from .model import DIM, SQRT2, SystemParams, pure_density
from .oracle import entanglement_time

T_STAR = entanglement_time(1.0)

SWEEP_COLUMNS = ("nu_over_lambda", "gamma_f", "gamma_c", "kappa_a", "t", "F")
FIG2_COLUMNS = ("nu_over_lambda", "gamma_f", "gamma_c", "kappa_a", "F_label", "t", "F")

MODELS = ("exact", "effective", "open")


@dataclass(frozen=True)
class SweepSpec:
    """Declarative description of one sweep (all rates in units of lambda)."""

    model: str
    nu_values: tuple[float, ...] = (0.0,)
    gamma_f_values: tuple[float, ...] = (0.0,)
    gamma_c_values: tuple[float, ...] = (0.0,)
    kappa_a_values: tuple[float, ...] = (0.0,)
    t_max: float = T_STAR
    n_time_samples: int = 201
    output_path: str = "sweep.csv"

    def __post_init__(self) -> None:
        if self.model not in MODELS:
            raise ValueError(f"model must be one of {MODELS}, got {self.model!r}")
        for name in ("nu_values", "gamma_f_values", "gamma_c_values", "kappa_a_values"):
            values = getattr(self, name)
            if len(values) == 0:
                raise ValueError(f"{name} must be nonempty")
            if any(v < 0.0 for v in values):
                raise ValueError(f"{name} must be nonnegative")
        if self.model in ("exact", "effective"):
            for name in ("gamma_f_values", "gamma_c_values", "kappa_a_values"):
                if tuple(getattr(self, name)) != (0.0,):
                    raise ValueError(f"closed model {self.model!r} cannot take decay rates")
        if self.t_max < 0.0:
            raise ValueError("t_max must be nonnegative")
        if self.n_time_samples < 2:
            raise ValueError("n_time_samples must be at least 2")

    def time_grid(self) -> np.ndarray:
        return np.linspace(0.0, self.t_max, self.n_time_samples)


@dataclass
class RunRecord:
    """One parameter point of a sweep: lossless echo plus results.

    Re-running run_point with the echoed parameters (and the echoed dt for
    open runs) reproduces the fidelity series bit for bit.
    """

    model: str
    nu: float
    gamma_f: float
    gamma_c: float
    kappa_a: float
    times: np.ndarray
    fidelity: np.ndarray
    fidelity_label: str
    dt: float | None = None
    halvings: int = 0
    max_trace_dev: float = 0.0

    def echo(self) -> dict:
        return {
            "model": self.model,
            "nu": self.nu,
            "gamma_f": self.gamma_f,
            "gamma_c": self.gamma_c,
            "kappa_a": self.kappa_a,
            "dt": self.dt,
        }


def initial_state(dim: int = DIM) -> np.ndarray:
    psi = np.zeros(dim, dtype=complex)
    psi[0] = 1.0
    return psi


def run_point(
    model: str,
    nu: float,
    gamma_f: float,
    gamma_c: float,
    kappa_a: float,
    times: np.ndarray,
    dt: float | None = None,
) -> RunRecord:
    """Evolve one parameter point and package the result."""
    if model == "exact":
        params = SystemParams(nu=nu)
        traj = evolve_closed(build_exact(params), initial_state(), times)
        label = "F1"
    elif model == "effective":
        params = SystemParams(nu=nu)
        traj = evolve_closed(build_effective(params), initial_state(5), times)
        label = "F2"
    elif model == "open":
        params = SystemParams(nu=nu, gamma_f=gamma_f, gamma_c=gamma_c, kappa_a=kappa_a)
        config = IntegratorConfig.for_params(params, t_max=float(times[-1]), dt=dt)
        traj = evolve_open(
            build_exact(params),
            build_channels(params),
            pure_density(initial_state()),
            config,
            times,
        )
        label = "F3"
    else:
        raise ValueError(f"unknown model {model!r}")
    diag = traj.diagnostics
    return RunRecord(
        model=model,
        nu=nu,
        gamma_f=gamma_f,
        gamma_c=gamma_c,
        kappa_a=kappa_a,
        times=traj.times,
        fidelity=traj.observables[label],
        fidelity_label=label,
        dt=diag.get("dt"),
        halvings=int(diag.get("halvings", 0)),
        max_trace_dev=float(diag.get("max_trace_dev", 0.0)),
    )


def format_float(x: float) -> str:
    """Shortest decimal string that round-trips to the same float."""
    return repr(float(x))


def write_csv(path: str, header: tuple[str, ...], rows: list[tuple]) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(format_float(v) if isinstance(v, float) else str(v) for v in row))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def run_sweep(spec: SweepSpec) -> tuple[list[RunRecord], list[tuple]]:
    """Run every parameter point of a spec; return records and CSV rows."""
    times = spec.time_grid()
    records: list[RunRecord] = []
    rows: list[tuple] = []
    for nu in sorted(spec.nu_values):
        for gf in sorted(spec.gamma_f_values):
            for gc in sorted(spec.gamma_c_values):
                for ka in sorted(spec.kappa_a_values):
                    rec = run_point(spec.model, nu, gf, gc, ka, times)
                    records.append(rec)
                    for t, f in zip(rec.times, rec.fidelity):
                        rows.append((nu, gf, gc, ka, float(t), float(f)))
    return records, rows


def execute_spec(spec: SweepSpec, output_path: str | None = None) -> str:
    """Run a sweep and write its CSV; returns the path written."""
    path = output_path or spec.output_path
    _, rows = run_sweep(spec)
    write_csv(path, SWEEP_COLUMNS, rows)
    return path


# ---------------------------------------------------------------------------
# Presets


@dataclass(frozen=True)
class Preset:
    name: str
    description: str
    runner: Callable[[str], str] = field(repr=False)


def _fig2_runner(path: str) -> str:
    nus = sorted(math.sqrt(q) for q in (8.0, 24.0, 80.0, 120.0))
    times = np.linspace(0.0, 2.0 * T_STAR, 201)
    rows: list[tuple] = []
    # The effective model does not depend on nu; it is computed once and its
    # rows echo each panel's nu so panels group correctly.
    eff = run_point("effective", 0.0, 0.0, 0.0, 0.0, times)
    for nu in nus:
        exact = run_point("exact", nu, 0.0, 0.0, 0.0, times)
        for label, rec in (("F1", exact), ("F2", eff)):
            for t, f in zip(rec.times, rec.fidelity):
                rows.append((nu, 0.0, 0.0, 0.0, label, float(t), float(f)))
    write_csv(path, FIG2_COLUMNS, rows)
    return path


def _fig3_spec() -> SweepSpec:
    return SweepSpec(
        model="open",
        nu_values=tuple(sorted((math.sqrt(3.0), 2.0 * SQRT2, math.sqrt(99.0), math.sqrt(120.0)))),
        gamma_f_values=(0.001, 0.01, 0.1, 1.0),
        gamma_c_values=(0.0,),
        kappa_a_values=(0.0,),
        t_max=2.0 * T_STAR,
        n_time_samples=201,
        output_path="fig3.csv",
    )


def _fig4_spec() -> SweepSpec:
    return SweepSpec(
        model="open",
        nu_values=(math.sqrt(399.0),),
        gamma_f_values=(0.0,),
        gamma_c_values=(0.001, 0.01, 0.1, 1.0),
        kappa_a_values=(0.001, 0.01, 0.1, 1.0),
        t_max=2.0 * T_STAR,
        n_time_samples=201,
        output_path="fig4.csv",
    )


def _spec_runner(spec_factory: Callable[[], SweepSpec]) -> Callable[[str], str]:
    def run(path: str) -> str:
        spec = spec_factory()
        return execute_spec(replace(spec, output_path=path))
    return run


PRESETS: dict[str, Preset] = {
    "fig2": Preset(
        "fig2",
        "closed models, nu^2/lambda^2 in {8, 24, 80, 120}, t in [0, 2 pi/sqrt(2)], "
        "201 samples; F1 (exact) and F2 (effective) rows labeled by F_label",
        _fig2_runner,
    ),
    "fig3": Preset(
        "fig3",
        "open model, nu/lambda in {sqrt(3), 2 sqrt(2), sqrt(99), sqrt(120)}, "
        "gamma_f in {0.001, 0.01, 0.1, 1.0}, gamma_c = kappa_a = 0; "
        "fidelity F3 vs time",
        _spec_runner(_fig3_spec),
    ),
    "fig4": Preset(
        "fig4",
        "open model, nu = sqrt(399) lambda, gamma_f = 0, panels over gamma_c in "
        "{0.001, 0.01, 0.1, 1.0} with curves over kappa_a in the same set "
        "(reading: cavity decay varies per panel, atomic decay per curve)",
        _spec_runner(_fig4_spec),
    ),
}


def run_preset(name: str, output_path: str | None = None) -> str:
    if name not in PRESETS:
        raise ValueError(f"unknown preset {name!r}; available: {', '.join(sorted(PRESETS))}")
    path = output_path or f"{name}.csv"
    return PRESETS[name].runner(path)


# ---------------------------------------------------------------------------
# Config-file parsing

_LIST_KEYS = {
    "nu_values": "nu_values",
    "nu_sq_values": "nu_values",
    "gamma_f_values": "gamma_f_values",
    "gamma_c_values": "gamma_c_values",
    "kappa_a_values": "kappa_a_values",
}


def parse_config(text: str) -> SweepSpec:
    """Parse a flat key = value sweep description.

    Keys: model, nu_values (or nu_sq_values, which squares-roots its
    entries), gamma_f_values, gamma_c_values, kappa_a_values, t_max,
    samples, out. Lists are comma separated; # starts a comment.
    """
    fields: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key = value, got {raw!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key == "model":
            fields["model"] = value
        elif key in _LIST_KEYS:
            try:
                values = tuple(float(v) for v in value.split(",") if v.strip())
            except ValueError:
                raise ValueError(f"line {lineno}: bad number in list for {key}") from None
            if key == "nu_sq_values":
                if any(v < 0.0 for v in values):
                    raise ValueError(f"line {lineno}: nu_sq_values must be nonnegative")
                values = tuple(math.sqrt(v) for v in values)
            fields[_LIST_KEYS[key]] = values
        elif key == "t_max":
            fields["t_max"] = float(value)
        elif key in ("samples", "n_time_samples"):
            fields["n_time_samples"] = int(value)
        elif key in ("out", "output_path"):
            fields["output_path"] = value
        else:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
    if "model" not in fields:
        raise ValueError("config must set model")
    return SweepSpec(**fields)
