"""Command-line interface.

Subcommands:
    evolve     one run of a single model, CSV time series plus a summary
    sweep      a preset or config-file parameter sweep to CSV
    validate   the self-check suite, one line per check
    presets    list the built-in sweep presets

Exit codes: 0 success, 1 usage error, 2 numerical convergence failure,
3 validation failure. Everything is deterministic; there is no random
number generator anywhere in the package, which is why --seedless exists
only to be rejected.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .checks import run_all_checks
from .dynamics import ConvergenceError, IntegratorConfig, build_channels, evolve_closed, evolve_open
from .hamiltonian import build_effective, build_exact
from .model import DIM, DIM_EFFECTIVE, SystemParams, format_complex, pure_density
from .oracle import entanglement_time
from .sweep import PRESETS, format_float, parse_config, run_preset, execute_spec, write_csv

T_STAR = entanglement_time(1.0)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CONVERGENCE = 2
EXIT_VALIDATION = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # noqa: A002 - argparse signature
        raise UsageError(message)


def build_parser() -> _Parser:
    parser = _Parser(prog="cavitylink", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("evolve", help="evolve one parameter point")
    ev.add_argument("--model", required=True, choices=("exact", "effective", "open"))
    ev.add_argument("--nu-sq", type=float, default=None,
                    help="nu^2/lambda^2 (so irrational couplings are entered exactly)")
    ev.add_argument("--gamma-f", type=float, default=None, help="fibre decay rate (units of lambda)")
    ev.add_argument("--gamma-c", type=float, default=None, help="cavity decay rate (units of lambda)")
    ev.add_argument("--kappa-a", type=float, default=None, help="atomic decay rate (units of lambda)")
    ev.add_argument("--t-max", type=float, default=None, help="final time (units of 1/lambda)")
    ev.add_argument("--t-star", action="store_true",
                    help="shorthand for --t-max pi/sqrt(2), the first entanglement time")
    ev.add_argument("--samples", type=int, default=201, help="time samples (default 201)")
    ev.add_argument("--dt", type=float, default=None, help="integrator step (open model only)")
    ev.add_argument("--convergence-tol", type=float, default=None,
                    help="accepted final-fidelity change under dt halving (open model only)")
    ev.add_argument("--max-halvings", type=int, default=None,
                    help="dt halving retries before failing (open model only)")
    ev.add_argument("--out", default="evolve.csv", help="output CSV path (default evolve.csv)")
    ev.add_argument("--populations", action="store_true", help="add p1..p11 columns")
    ev.add_argument("--amplitudes", action="store_true",
                    help="add complex amplitude columns d1..d9,s10,s11 (exact model only)")
    ev.add_argument("--seedless", action="store_true", help=argparse.SUPPRESS)

    sw = sub.add_parser("sweep", help="run a parameter sweep to CSV")
    sw.add_argument("--preset", choices=sorted(PRESETS), default=None)
    sw.add_argument("--config", default=None, help="key = value sweep description file")
    sw.add_argument("--out", default=None, help="override the output CSV path")
    sw.add_argument("--seedless", action="store_true", help=argparse.SUPPRESS)

    va = sub.add_parser("validate", help="run the self-check suite")
    va.add_argument("--tol", type=float, default=None,
                    help="override every check tolerance (diagnostic mode)")

    sub.add_parser("presets", help="list the built-in sweep presets")
    return parser


def _reject_seedless(args) -> None:
    if getattr(args, "seedless", False):
        raise UsageError("--seedless is reserved: runs are deterministic by construction, "
                         "there is no seed to remove")


def _evolve_times(args) -> np.ndarray:
    if args.t_star and args.t_max is not None:
        raise UsageError("--t-star and --t-max are mutually exclusive")
    t_max = T_STAR if (args.t_star or args.t_max is None) else args.t_max
    if t_max < 0.0:
        raise UsageError("--t-max must be nonnegative")
    if args.samples < 2:
        raise UsageError("--samples must be at least 2")
    if t_max == 0.0:
        return np.array([0.0])
    return np.linspace(0.0, t_max, args.samples)


def cmd_evolve(args) -> int:
    _reject_seedless(args)
    model = args.model
    rates = {"--gamma-f": args.gamma_f, "--gamma-c": args.gamma_c, "--kappa-a": args.kappa_a}
    if model in ("exact", "effective"):
        given = [flag for flag, value in rates.items() if value is not None]
        if given:
            raise UsageError(f"{', '.join(given)} only apply to --model open")
        for flag, value in (("--dt", args.dt), ("--convergence-tol", args.convergence_tol),
                            ("--max-halvings", args.max_halvings)):
            if value is not None:
                raise UsageError(f"{flag} only applies to --model open "
                                 "(closed evolution is exact)")
    if model == "effective" and args.nu_sq is not None:
        raise UsageError("--nu-sq does not apply to --model effective "
                         "(the effective model has no fibre coupling)")
    if model in ("exact", "open") and args.nu_sq is None:
        raise UsageError(f"--model {model} requires --nu-sq")
    if args.nu_sq is not None and args.nu_sq < 0.0:
        raise UsageError("--nu-sq must be nonnegative")
    if args.amplitudes and model != "exact":
        raise UsageError("--amplitudes only applies to --model exact")

    times = _evolve_times(args)
    nu = float(np.sqrt(args.nu_sq)) if args.nu_sq is not None else 0.0
    # The summary also reports the fidelity at the entanglement time when it
    # falls inside the window; that time is integrated exactly, not read off
    # the grid, and is excluded from the CSV unless it is a grid point.
    t_star_inside = times[-1] >= T_STAR
    run_times = np.union1d(times, [T_STAR]) if t_star_inside else times

    if model == "exact":
        traj = evolve_closed(build_exact(SystemParams(nu=nu)), _basis_one(DIM), run_times)
        label = "F1"
    elif model == "effective":
        traj = evolve_closed(build_effective(SystemParams()), _basis_one(DIM_EFFECTIVE), run_times)
        label = "F2"
    else:
        params = SystemParams(
            nu=nu,
            gamma_f=args.gamma_f or 0.0,
            gamma_c=args.gamma_c or 0.0,
            kappa_a=args.kappa_a or 0.0,
        )
        extra = {}
        if args.convergence_tol is not None:
            extra["convergence_tol"] = args.convergence_tol
        if args.max_halvings is not None:
            extra["max_halvings"] = args.max_halvings
        try:
            config = IntegratorConfig.for_params(params, t_max=float(run_times[-1]),
                                                 dt=args.dt, **extra)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        traj = evolve_open(build_exact(params), build_channels(params),
                           pure_density(_basis_one(DIM)), config, run_times)
        label = "F3"

    keep = np.isin(run_times, times)
    _write_evolve_csv(args, traj, label, keep)

    fidelity = traj.observables[label]
    print(f"model={model} rows={int(keep.sum())} out={args.out}")
    for key, value in sorted(traj.diagnostics.items()):
        print(f"  {key}={format_float(value)}")
    print(f"{label}(t={format_float(run_times[-1])}) = {fidelity[-1]:.6f}")
    if t_star_inside:
        at_star = fidelity[np.nonzero(run_times == T_STAR)[0][0]]
        print(f"{label}(t*={T_STAR:.6f}) = {at_star:.6f}")
    return EXIT_OK


def _basis_one(dim: int) -> np.ndarray:
    psi = np.zeros(dim, dtype=complex)
    psi[0] = 1.0
    return psi


def _write_evolve_csv(args, traj, label: str, keep: np.ndarray) -> None:
    dim = traj.snapshots.shape[1] if traj.kind == "state" else traj.snapshots.shape[2]
    header: list[str] = ["t", label]
    if args.populations:
        header += [f"p{i}" for i in range(1, dim + 1)]
    if args.amplitudes:
        header += ["d1", "d2", "d3", "d4", "d5", "d6", "d7", "d8", "d9", "s10", "s11"]
    header.append("trace_dev")

    rows = []
    for k in np.nonzero(keep)[0]:
        row: list = [float(traj.times[k]), float(traj.observables[label][k])]
        if args.populations:
            row += [float(p) for p in traj.observables["populations"][k]]
        if args.amplitudes:
            row += [format_complex(z) for z in traj.snapshots[k]]
        row.append(float(traj.observables["trace_dev"][k]))
        rows.append(tuple(row))
    write_csv(args.out, tuple(header), rows)


def cmd_sweep(args) -> int:
    _reject_seedless(args)
    if (args.preset is None) == (args.config is None):
        raise UsageError("sweep needs exactly one of --preset or --config")
    if args.preset is not None:
        path = run_preset(args.preset, args.out)
    else:
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                spec = parse_config(fh.read())
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}") from None
        except ValueError as exc:
            raise UsageError(f"bad config: {exc}") from None
        path = execute_spec(spec, args.out)
    print(f"wrote {path}")
    return EXIT_OK


def cmd_validate(args) -> int:
    results = run_all_checks(tolerance=args.tol)
    for result in results:
        print(result.line())
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return EXIT_VALIDATION if failed else EXIT_OK


def cmd_presets(_args) -> int:
    for name in sorted(PRESETS):
        print(f"{name}: {PRESETS[name].description}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)

    try:
        if args.command == "evolve":
            return cmd_evolve(args)
        if args.command == "sweep":
            return cmd_sweep(args)
        if args.command == "validate":
            return cmd_validate(args)
        if args.command == "presets":
            return cmd_presets(args)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"convergence failure: {exc} "
              f"(coarse={exc.coarse!r}, fine={exc.fine!r})", file=sys.stderr)
        return EXIT_CONVERGENCE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
