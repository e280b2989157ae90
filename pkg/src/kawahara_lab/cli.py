"""Command-line interface.

Every subcommand writes its report into ``--output`` (a directory) together
with a ``<command>.manifest.json`` holding the full configuration, the seed
and the package version. Settings come from built-in defaults, then an
optional JSON ``--config`` file, then explicit flags.

Exit codes: 0 success, 1 a check failed (reports still written),
2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import platform
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy

from . import __version__
from . import exact_algebra as ea
from .branch import (BRANCH_CSV_HEADER, NoBranchError, branch_csv, branch_rows, branch_sweep,
                     kawahara_branch, mkawahara_branch, profile_eval)
from .evolution import (DIAGNOSTICS_HEADER, ETDRK4, EvolutionState, diagnostics_csv, invariants,
                        orbital_distance, shift_profile, stability_experiment)
from .grid import Grid, GridProfile, auto_grid, l2_norm_sq
from .models import ALBERT_SPEED, WaveModel
from .petviashvili import OperatorNotPositiveError, PetviashviliError, petviashvili_solve
from .pf2 import (KernelSamples, bimodal_kernel, full_report, gaussian_kernel, nonlinearity_kernel,
                  sech2_kernel)
from .spectral_stability import GridTooCoarseError, NearSingularError, analyze

COMMANDS = ["derive-system", "branch", "profile", "solve", "spectrum", "index", "pf2", "evolve",
            "experiment", "verify"]


class ConfigError(ValueError):
    """Bad configuration; maps to exit code 2."""


@dataclass
class RunConfig:
    command: str = ""
    equation: str = "kawahara"
    speed: float = 1.0
    gamma: float | None = None
    N: int = 1024
    L: float | None = None
    tol: float = 1e-12
    source: str = "paper"
    convention: str = "derived"
    seed: int = 42
    output: str = "kawahara_out"
    format: str = "json"
    # branch
    omega_min: float = 0.5
    omega_max: float = 2.0
    steps: int = 4
    # spectrum / index
    m: int = 6
    solve: bool = False
    # pf2
    kernel: str = "sech2"
    kernel_file: str | None = None
    samples: int = 100_000
    # evolve / experiment
    T: float = 10.0
    dt: float = 1e-3
    eps: float = 0.01
    perturbation: str = "scale"
    sample_every: int = 100

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


CHOICES = {
    "equation": ("kawahara", "mkawahara", "albert"),
    "source": ("paper", "derived"),
    "convention": ("paper", "derived"),
    "format": ("csv", "json"),
    "kernel": ("sech2", "gaussian", "bimodal", "branch", "file"),
    "perturbation": ("scale", "random"),
}


def build_config(args: argparse.Namespace) -> RunConfig:
    """Defaults < config file < flags."""
    fields = {f.name for f in dataclasses.fields(RunConfig)}
    values = {}
    if getattr(args, "config", None):
        try:
            data = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config file: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
        unknown = set(data) - fields
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        values.update(data)
    for key, val in vars(args).items():
        if key in fields:
            values[key] = val
    if getattr(args, "albert", False):
        values["equation"] = "albert"
    values["command"] = args.command
    cfg = RunConfig(**values)
    for key, allowed in CHOICES.items():
        if getattr(cfg, key) not in allowed:
            raise ConfigError(f"{key} must be one of {', '.join(allowed)}")
    if cfg.speed <= 0:
        raise ConfigError("speed must be positive")
    try:
        _grid_for(cfg, 1.0)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return cfg


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def _fmt_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        return "null"
    return f"{x:.17g}"


def to_json(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON with sorted keys and floats printed to 17 significant digits."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {to_json(obj[k], indent, _level + 1)}"
                 for k in sorted(obj, key=str)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        items = [pad + to_json(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if obj is None:
        return "null"
    return json.dumps(str(obj))


def emit_report(cfg: RunConfig, name: str, payload, fmt: str | None = None) -> Path:
    """Write ``payload`` (dict for json, text for csv) to ``<output>/<name>``."""
    fmt = fmt or ("csv" if isinstance(payload, str) else "json")
    text = payload if isinstance(payload, str) else to_json(payload) + "\n"
    path = Path(cfg.output) / f"{name}.{fmt}"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return path


def write_manifest(cfg: RunConfig, outputs: list, status: int) -> Path:
    manifest = {
        "command": cfg.command,
        "config": cfg.to_dict(),
        "seed": cfg.seed,
        "version": __version__,
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "python": platform.python_version(),
        "outputs": [p.name for p in outputs],
        "exit_code": status,
    }
    return emit_report(cfg, f"{cfg.command}.manifest", manifest, "json")


# ---------------------------------------------------------------------------
# shared setup
# ---------------------------------------------------------------------------


def _grid_for(cfg: RunConfig, b: float) -> Grid:
    if cfg.L is not None:
        return Grid(cfg.N, float(cfg.L))
    if cfg.equation == "albert":
        return Grid(cfg.N, 25.0)
    return auto_grid(b, cfg.N)


def wave_setup(cfg: RunConfig):
    """Model, speed, grid, reference profile and inverse length for the configured wave.

    With ``gamma`` set explicitly (Kawahara or mKawahara) no closed form is
    available and the profile comes from the Petviashvili solver.
    """
    if cfg.equation == "albert":
        model, speed, b = WaveModel.albert(), ALBERT_SPEED, 1.0
        grid = _grid_for(cfg, b)
        return model, speed, grid, GridProfile(grid, 1.0 / np.cosh(grid.x) ** 4), b, None
    if cfg.equation == "kawahara":
        point = kawahara_branch(cfg.speed, cfg.source)
        b = point.b
    else:
        point = mkawahara_branch(cfg.speed, cfg.convention)
        b = point.alpha
    grid = _grid_for(cfg, b)
    if cfg.gamma is None:
        return point.model(), point.speed, grid, profile_eval(point, grid), b, point
    model = WaveModel.preset(cfg.equation, cfg.gamma)
    prof, _ = petviashvili_solve(model, cfg.speed, grid, tol=cfg.tol)
    return model, cfg.speed, grid, prof, b, None


# ---------------------------------------------------------------------------
# subcommands; each returns (status, [paths])
# ---------------------------------------------------------------------------


def cmd_derive_system(cfg: RunConfig):
    if cfg.equation == "mkawahara":
        derived = ea.derived_mkawahara_system()
        text = "derived system (modified Kawahara)\n" + ea.format_system(derived) + "\n"
        payload = {"equation": "mkawahara", "derived": text}
    else:
        derived = ea.derived_kawahara_system()
        report = ea.compare_with_paper_system(derived)
        paper = "\n".join(f"{lbl}: {p.to_str()} = 0" for lbl, p in ea.PAPER_KAWAHARA_SYSTEM)
        text = ("derived system (Kawahara)\n" + ea.format_system(derived) + "\n\n"
                "reference system\n" + paper + "\n\n" + report.text() + "\n")
        payload = {"equation": "kawahara", "derived": ea.format_system(derived),
                   "reference": paper, "diff": report.to_dict()}
    print(text, end="")
    if cfg.format == "csv":
        return 0, [emit_report(cfg, "derive-system", text, "txt")]
    return 0, [emit_report(cfg, "derive-system", payload)]


def cmd_branch(cfg: RunConfig):
    if cfg.steps < 1 or cfg.omega_min <= 0 or cfg.omega_max < cfg.omega_min:
        raise ConfigError("need 0 < omega-min <= omega-max and steps >= 1")
    speeds = np.linspace(cfg.omega_min, cfg.omega_max, cfg.steps) if cfg.steps > 1 else [cfg.omega_min]
    points = branch_sweep([float(w) for w in speeds], cfg.source)
    if cfg.format == "csv":
        text = branch_csv(points)
        print(text, end="")
        return 0, [emit_report(cfg, "branch", text)]
    out = emit_report(cfg, "branch", {"header": BRANCH_CSV_HEADER, "rows": branch_rows(points)})
    print(out.read_text(), end="")
    return 0, [out]


def cmd_profile(cfg: RunConfig):
    model, speed, grid, phi, _, _ = wave_setup(cfg)
    res = float(np.max(np.abs(model.stationary_residual(grid, phi.values, speed))))
    summary = {"speed": speed, "model": model.to_dict(), "grid": grid.to_dict(),
               "residual_sup": res, "norm_sq": l2_norm_sq(grid, phi.values)}
    print(to_json(summary))
    if cfg.format == "csv":
        return 0, [emit_report(cfg, "profile", phi.to_csv()),
                   emit_report(cfg, "profile.summary", summary)]
    return 0, [emit_report(cfg, "profile", {**summary, "xi": grid.x, "phi": phi.values})]


def cmd_solve(cfg: RunConfig):
    model, speed, grid, ref, _, point = wave_setup(cfg)
    prof, report = petviashvili_solve(model, speed, grid, tol=cfg.tol)
    info = report.to_dict()
    if point is not None or cfg.equation == "albert":
        info["sup_err_vs_closed_form"] = float(np.max(np.abs(prof.values - ref.values)))
    print(to_json(info))
    paths = [emit_report(cfg, "solve.report", info)]
    if cfg.format == "csv":
        paths.append(emit_report(cfg, "solve", prof.to_csv()))
    else:
        paths.append(emit_report(cfg, "solve", {"xi": grid.x, "phi": prof.values}))
    return (0 if report.converged else 1), paths


def _spectrum(cfg: RunConfig):
    model, speed, grid, phi, b, _ = wave_setup(cfg)
    if cfg.solve:
        phi, _ = petviashvili_solve(model, speed, grid, tol=cfg.tol)
    rep = analyze(model, speed, phi, m=cfg.m, b=b)
    rep.meta["residual_sup"] = float(np.max(np.abs(model.stationary_residual(grid, phi.values, speed))))
    return rep


def cmd_spectrum(cfg: RunConfig):
    rep = _spectrum(cfg)
    d = rep.to_dict()
    print(to_json(d))
    return (0 if d["stable"] else 1), [emit_report(cfg, "spectrum", d)]


def cmd_index(cfg: RunConfig):
    rep = _spectrum(cfg)
    d = {"omega": rep.meta["speed"], "gamma": rep.meta["gamma"], "index_I": rep.index_I,
         "chi_residual": rep.chi_residual, "negative": bool(rep.index_I < 0),
         "profile_residual_sup": rep.meta["residual_sup"]}
    print(to_json(d))
    paths = [emit_report(cfg, "index", d)]
    if cfg.format == "csv":
        paths.append(emit_report(cfg, "chi", GridProfile(rep.chi.grid, rep.chi.values).to_csv()))
    return (0 if rep.index_I < 0 else 1), paths


def cmd_pf2(cfg: RunConfig):
    if cfg.kernel == "file":
        if not cfg.kernel_file:
            raise ConfigError("--kernel file needs --kernel-file")
        try:
            kernel = KernelSamples.from_csv(Path(cfg.kernel_file).read_text())
        except OSError as exc:
            raise ConfigError(f"cannot read kernel file: {exc}") from exc
    elif cfg.kernel == "branch":
        point = (kawahara_branch(cfg.speed, cfg.source) if cfg.equation == "kawahara"
                 else mkawahara_branch(cfg.speed, cfg.convention))
        kernel = nonlinearity_kernel(point)
    else:
        kernel = {"sech2": sech2_kernel, "gaussian": gaussian_kernel,
                  "bimodal": bimodal_kernel}[cfg.kernel]()
    rep = full_report(kernel, cfg.samples, cfg.seed)
    d = {**rep.to_dict(), "max_second_difference": rep.max_second_difference,
         "tp2_pass": rep.tp2_pass, "num_samples": rep.num_samples, "kernel": cfg.kernel,
         "provenance": kernel.provenance}
    print(to_json(d))
    ok = rep.positive and rep.log_concave and rep.tp2_pass
    return (0 if ok else 1), [emit_report(cfg, "pf2", d)]


def _diag_rows(rows) -> list:
    return [{h: getattr(r, h) for h in DIAGNOSTICS_HEADER} for r in rows]


def cmd_evolve(cfg: RunConfig):
    """Unperturbed evolution of the wave: the profile should translate rigidly."""
    model, speed, grid, phi, _, _ = wave_setup(cfg)
    n_steps = int(round(cfg.T / cfg.dt))
    stepper = ETDRK4(model, grid, cfg.dt)
    state = EvolutionState.from_values(grid, phi.values)
    i0 = invariants(state, model)
    state = stepper.advance(state, n_steps)
    i1 = invariants(state, model)
    exact = shift_profile(phi, -speed * state.time)
    shift, dist = orbital_distance(state.profile(), phi)
    d = {"T": state.time, "dt": cfg.dt, "steps": n_steps,
         "sup_err_vs_translate": float(np.max(np.abs(state.u - exact.values))),
         "orbital_dist": dist, "best_shift": shift,
         "drift": {k: abs(b - a) / abs(a) for k, a, b in zip(("mass", "momentum", "energy"), i0, i1)}}
    print(to_json(d))
    paths = [emit_report(cfg, "evolve", d)]
    if cfg.format == "csv":
        paths.append(emit_report(cfg, "evolve.final", state.profile().to_csv()))
    return 0, paths


def cmd_experiment(cfg: RunConfig):
    model, speed, grid, phi, _, _ = wave_setup(cfg)
    exp = stability_experiment(model, speed, phi, cfg.eps, T=cfg.T, dt=cfg.dt,
                               perturbation=cfg.perturbation, seed=cfg.seed,
                               sample_every=cfg.sample_every)
    trend = exp.final_half_trend()
    ok = (exp.max_dist <= 5.0 * exp.d0 and not trend["monotone_increasing"]
          and trend["growth_over_half"] < 0.5 * exp.d0)
    d = {"d0": exp.d0, "max_dist": exp.max_dist, "min_dist": exp.min_dist,
         "domain_contaminated": exp.domain_contaminated, **trend, "bounded": ok}
    print(to_json(d))
    if cfg.format == "csv":
        paths = [emit_report(cfg, "experiment", diagnostics_csv(exp.rows)),
                 emit_report(cfg, "experiment.summary", d)]
    else:
        paths = [emit_report(cfg, "experiment", {**d, "rows": _diag_rows(exp.rows)})]
    return (0 if ok else 1), paths


def cmd_verify(cfg: RunConfig):
    from .acceptance import run_all

    results = run_all(verbose=True)
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} criteria passed")
    d = {"criteria": [r.to_dict() for r in results], "all_passed": passed == len(results)}
    return (0 if d["all_passed"] else 1), [emit_report(cfg, "verify", d)]


HANDLERS = {
    "derive-system": cmd_derive_system, "branch": cmd_branch, "profile": cmd_profile,
    "solve": cmd_solve, "spectrum": cmd_spectrum, "index": cmd_index, "pf2": cmd_pf2,
    "evolve": cmd_evolve, "experiment": cmd_experiment, "verify": cmd_verify,
}


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser, wave: bool = True) -> None:
    S = argparse.SUPPRESS
    p.add_argument("--config", default=S, help="JSON file with RunConfig fields; flags override it")
    p.add_argument("--output", default=S, help="output directory (default kawahara_out)")
    p.add_argument("--format", default=S, choices=CHOICES["format"], help="report format (default json)")
    p.add_argument("--seed", type=int, default=S, help="PRNG seed (default 42)")
    if not wave:
        return
    p.add_argument("--equation", default=S, choices=CHOICES["equation"],
                   help="wave family (default kawahara)")
    p.add_argument("--albert", action="store_true", default=S,
                   help="shorthand for --equation albert (sech^4 wave, speed 12/35)")
    p.add_argument("--speed", "--omega", dest="speed", type=float, default=S,
                   help="wave speed (default 1)")
    p.add_argument("--gamma", type=float, default=S,
                   help="fifth-order coefficient; default is the value induced by the branch")
    p.add_argument("--N", type=int, default=S, help="grid points, power of two (default 1024)")
    p.add_argument("--L", type=float, default=S, help="half-period; default chosen from the wave width")
    p.add_argument("--tol", type=float, default=S, help="solver tolerance (default 1e-12)")
    p.add_argument("--source", default=S, choices=CHOICES["source"],
                   help="Kawahara branch: closed forms from the reference (paper) or rederived")
    p.add_argument("--convention", default=S, choices=CHOICES["convention"],
                   help="modified Kawahara amplitude convention (default derived)")


def make_parser() -> argparse.ArgumentParser:
    S = argparse.SUPPRESS
    parser = argparse.ArgumentParser(prog="kawahara-lab", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("derive-system", help="print derived and reference coefficient systems with a diff")
    _common(p)

    p = sub.add_parser("branch", help="tabulate the Kawahara solution branch")
    _common(p)
    p.add_argument("--omega-min", type=float, default=S, help="first speed (default 0.5)")
    p.add_argument("--omega-max", type=float, default=S, help="last speed (default 2)")
    p.add_argument("--steps", type=int, default=S, help="number of speeds (default 4)")

    p = sub.add_parser("profile", help="sample the closed-form profile on the grid")
    _common(p)

    p = sub.add_parser("solve", help="Petviashvili solve for the profile")
    _common(p)

    for name, hlp in (("spectrum", "lowest eigenvalues of the linearised operator"),
                      ("index", "index I = <chi, phi> with L chi = phi")):
        p = sub.add_parser(name, help=hlp)
        _common(p)
        p.add_argument("--m", type=int, default=S, help="number of eigenvalues (default 6)")
        p.add_argument("--solve", action="store_true", default=S,
                       help="use the Petviashvili profile instead of the closed form")

    p = sub.add_parser("pf2", help="positivity, log-concavity and TP2 checks of a kernel")
    _common(p)
    p.add_argument("--kernel", default=S, choices=CHOICES["kernel"], help="kernel (default sech2)")
    p.add_argument("--kernel-file", default=S, help="CSV with header k,g (with --kernel file)")
    p.add_argument("--samples", type=int, default=S, help="Monte-Carlo determinants (default 100000)")

    for name, hlp in (("evolve", "ETDRK4 evolution of the unperturbed wave"),
                      ("experiment", "orbital stability run from a perturbed wave")):
        p = sub.add_parser(name, help=hlp)
        _common(p)
        p.add_argument("--T", type=float, default=S, help="final time (default 10)")
        p.add_argument("--dt", type=float, default=S, help="time step (default 1e-3)")
        p.add_argument("--sample-every", type=int, default=S, help="steps between diagnostics (default 100)")
        if name == "experiment":
            p.add_argument("--eps", type=float, default=S, help="perturbation size (default 0.01)")
            p.add_argument("--perturbation", default=S, choices=CHOICES["perturbation"],
                           help="scale: (1+eps) phi; random: smooth Philox noise (default scale)")

    p = sub.add_parser("verify", help="run every acceptance check and print a PASS/FAIL table")
    _common(p, wave=False)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)  # exits 2 with usage on bad input
    try:
        cfg = build_config(args)
    except (ConfigError, TypeError) as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        status, paths = HANDLERS[cfg.command](cfg)
        write_manifest(cfg, paths, status)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 2
    except (OperatorNotPositiveError, NoBranchError, GridTooCoarseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (PetviashviliError, NearSingularError, FloatingPointError) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    return status


if __name__ == "__main__":
    sys.exit(main())
