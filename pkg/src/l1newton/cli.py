"""Command-line front end.

Four subcommands: ``solve`` runs one solver on a stored instance bundle,
``experiment`` regenerates one of the three reference experiments and
reports its iteration table, ``scaling`` times solves over a range of
sizes and fits the cost exponent, ``certify`` checks a stored solution
against its instance via the duality certificate.

A TOML config file (``--config``) supplies defaults for any flag; flags
given on the command line win.  Exit codes: 0 converged/success, 2 not
converged (or certificate rejected), 3 singular linear system, 4 config
or usage error.

Iteration tables are deterministic byte for byte on one platform; wall
times appear only on stderr and in JSON output.
"""

from __future__ import annotations

import argparse
import csv
import enum
import io
import json
import sys
import time
from dataclasses import dataclass, field as dataclass_field
from pathlib import Path

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .duality import certify, gap_tolerance
from .operators import load_csv_vector
from .problems import (
    ExperimentKind,
    ExperimentSpec,
    make_instance,
    load_bundle,
    save_bundle,
)
from .prox import Problem, Weights
from .solvers import (
    IterationRecord,
    SolveOptions,
    SolveReport,
    SolveStatus,
    StopRule,
    solve_active_set,
    solve_ista,
    solve_ssn,
)

__all__ = [
    "Command",
    "OutputFormat",
    "RunConfig",
    "ScalingResult",
    "main",
    "run_solve",
    "run_experiment",
    "run_scaling",
    "run_certify",
    "format_records_table",
    "records_to_csv",
    "records_from_csv",
]

SOLVER_CHOICES = ("ssn", "active-set", "ista")

# Reference-scale parameter sets for the three experiments.  The desk
# compressed-sensing size keeps the spike density of the full-scale setup
# (n/128); --full-scale restores the full-size run.
EXPERIMENT_DEFAULTS = {
    ExperimentKind.INVERSE_INTEGRATION: {
        "n": 500, "w": 3e-3, "gamma": 5e5, "noise_rel": 0.05,
    },
    ExperimentKind.HAAR_DEBLUR: {
        "n": 1024, "w": 0.12, "gamma": 1e4, "noise_rel": 0.25,
    },
    ExperimentKind.COMPRESSED_SENSING: {
        "n": 1024, "m": 64, "w": 0.05, "gamma": 5e4, "noise_rel": 0.05,
    },
}
FULL_SCALE_CS = {"n": 8192, "m": 512}
DEFAULT_SEEDS = {
    ExperimentKind.INVERSE_INTEGRATION: 3,
    ExperimentKind.HAAR_DEBLUR: 0,
    ExperimentKind.COMPRESSED_SENSING: 5,
}

DEFAULT_SCALING_SIZES = (100, 150, 224, 335, 501, 750)

CONFIG_KEYS = {
    "n", "m", "w", "gamma", "noise_rel", "noise_abs", "seed", "solver",
    "tol", "max_iters", "certify", "format", "out", "sizes", "repeats",
    "full_scale", "blur_width",
}


class ConfigError(Exception):
    """Bad config file, bad flag combination, or missing input file."""


class Command(enum.Enum):
    SOLVE = "solve"
    EXPERIMENT = "experiment"
    SCALING = "scaling"
    CERTIFY = "certify"


class OutputFormat(enum.Enum):
    TABLE = "table"
    CSV = "csv"
    JSON = "json"


@dataclass
class RunConfig:
    """Everything one subcommand invocation needs."""

    command: Command
    solver: str = "ssn"
    options: SolveOptions = dataclass_field(default_factory=SolveOptions)
    output_format: OutputFormat = OutputFormat.TABLE
    output_path: Path | None = None
    experiment: ExperimentSpec | None = None
    bundle: Path | None = None
    solution: Path | None = None
    sizes: list[int] | None = None
    repeats: int = 1
    certify: bool = False
    weight_override: float | None = None
    gamma_override: float | None = None
    save_bundle: Path | None = None
    save_solution: Path | None = None

    def __post_init__(self):
        if self.command is Command.EXPERIMENT and self.experiment is None:
            raise ConfigError("experiment command needs an experiment spec")


@dataclass(frozen=True)
class ScalingResult:
    """Timing sweep over instance sizes with the fitted cost exponent.

    ``fitted_exponent`` comes from a least-squares fit of log time against
    log size over the converged sizes only.
    """

    sizes: tuple
    cpu_seconds: tuple
    fitted_exponent: float
    solver: str
    iterations: tuple
    statuses: tuple

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.sizes, self.sizes[1:])):
            raise ValueError("sizes must be strictly increasing")


# ---------------------------------------------------------------------------
# rendering

def _fmt(x: float) -> str:
    return f"{x:.4e}"


def format_records_table(records: list[IterationRecord], include_support: bool = False) -> str:
    """Fixed-width iteration table, four mantissa digits per entry.

    With ``include_support`` the support-size and condition-number columns
    of the sensing experiment are appended.
    """
    lines = []
    if include_support:
        lines.append(f"{'n':>4}  {'objective':>12}  {'residual_norm':>13}  "
                     f"{'active_size':>11}  {'cond':>12}")
    else:
        lines.append(f"{'n':>4}  {'objective':>12}  {'residual_norm':>13}")
    for rec in records:
        row = f"{rec.n:>4}  {_fmt(rec.objective):>12}  {_fmt(rec.residual_norm):>13}"
        if include_support:
            cond = _fmt(rec.condition_m_aa) if rec.condition_m_aa is not None else "-"
            row += f"  {rec.active_size:>11}  {cond:>12}"
        lines.append(row)
    return "\n".join(lines)


def records_to_csv(records: list[IterationRecord]) -> str:
    """Records as CSV at full precision; reading back is bit-identical."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "objective", "residual_norm", "active_size", "condition_m_aa"])
    for rec in records:
        cond = "" if rec.condition_m_aa is None else f"{rec.condition_m_aa:.17g}"
        writer.writerow([rec.n, f"{rec.objective:.17g}", f"{rec.residual_norm:.17g}",
                         rec.active_size, cond])
    return buf.getvalue()


def records_from_csv(text: str) -> list[IterationRecord]:
    """Inverse of :func:`records_to_csv`."""
    rows = list(csv.reader(io.StringIO(text)))
    out = []
    for row in rows[1:]:
        if not row:
            continue
        out.append(IterationRecord(
            n=int(row[0]),
            objective=float(row[1]),
            residual_norm=float(row[2]),
            active_size=int(row[3]),
            condition_m_aa=float(row[4]) if row[4] else None,
        ))
    return out


def _report_dict(report: SolveReport, certificate=None, gamma=None) -> dict:
    d = {
        "solver": report.solver,
        "status": report.status.value,
        "stop_reason": report.stop_reason,
        "iterations": report.iterations,
        "cycling": report.cycling,
        "wall_time": report.wall_time,
        "final_residual": report.final_residual,
        "warnings": list(report.warnings),
        "records": [
            {
                "n": r.n,
                "objective": r.objective,
                "residual_norm": r.residual_norm,
                "active_size": r.active_size,
                "condition_m_aa": r.condition_m_aa,
            }
            for r in report.records
        ],
    }
    if gamma is not None and report.records:
        d["residual_over_gamma"] = report.final_residual / gamma
    if report.step_size is not None:
        d["step_size"] = report.step_size
    if certificate is not None:
        d["certificate"] = certificate.as_dict()
    return d


def _emit(text: str, out_path: Path | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out_path is None:
        sys.stdout.write(text)
    else:
        Path(out_path).write_text(text)


def _exit_code(report: SolveReport) -> int:
    return {
        SolveStatus.CONVERGED: 0,
        SolveStatus.MAX_ITERS: 2,
        SolveStatus.SINGULAR_SYSTEM: 3,
    }[report.status]


# ---------------------------------------------------------------------------
# subcommand drivers

def _run_solver(problem: Problem, solver: str, opts: SolveOptions) -> SolveReport:
    if solver == "ssn":
        return solve_ssn(problem, None, opts)
    if solver == "active-set":
        return solve_active_set(problem, None, opts)
    if solver == "ista":
        return solve_ista(problem, None, opts)
    raise ConfigError(f"unknown solver {solver!r}")


def _render_report(cfg: RunConfig, report: SolveReport, certificate,
                   gamma=None) -> None:
    include_support = any(r.condition_m_aa is not None for r in report.records)
    if cfg.output_format is OutputFormat.JSON:
        _emit(json.dumps(_report_dict(report, certificate, gamma), indent=2),
              cfg.output_path)
    elif cfg.output_format is OutputFormat.CSV:
        _emit(records_to_csv(report.records), cfg.output_path)
        if certificate is not None:
            cert_path = (Path(str(cfg.output_path) + ".cert.json")
                         if cfg.output_path else None)
            _emit(certificate.to_json(), cert_path)
    else:
        _emit(format_records_table(report.records, include_support), cfg.output_path)
        if certificate is not None:
            cert_path = (Path(str(cfg.output_path) + ".cert.json")
                         if cfg.output_path else None)
            _emit(certificate.to_json(), cert_path)
    summary = (f"{report.solver}: {report.status.value}"
               f" iterations={report.iterations}"
               f" residual={report.final_residual:.4e}"
               f" wall={report.wall_time:.3f}s")
    for warning in report.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    print(summary, file=sys.stderr)


def _solve_and_render(cfg: RunConfig, problem: Problem) -> int:
    report = _run_solver(problem, cfg.solver, cfg.options)
    certificate = certify(problem, report.solution) if cfg.certify else None
    if cfg.save_solution is not None:
        np.savetxt(cfg.save_solution, report.solution, fmt="%.17g")
    _render_report(cfg, report, certificate, gamma=problem.gamma)
    return _exit_code(report)


def run_solve(cfg: RunConfig) -> int:
    """Solve a stored instance bundle with optional weight/gamma overrides."""
    if cfg.bundle is None:
        raise ConfigError("solve needs an instance bundle directory")
    if not Path(cfg.bundle).is_dir():
        raise ConfigError(f"no bundle directory at {cfg.bundle}")
    problem, _ = load_bundle(cfg.bundle)
    if cfg.weight_override is not None or cfg.gamma_override is not None:
        w = (Weights.constant(cfg.weight_override, problem.n)
             if cfg.weight_override is not None else problem.w)
        gamma = cfg.gamma_override if cfg.gamma_override is not None else problem.gamma
        problem = Problem(K=problem.K, f=problem.f, w=w, gamma=gamma)
    return _solve_and_render(cfg, problem)


def run_experiment(cfg: RunConfig) -> int:
    """Generate the configured experiment instance, solve, report."""
    spec = cfg.experiment
    problem, truth = make_instance(spec)
    if cfg.save_bundle is not None:
        save_bundle(cfg.save_bundle, problem, truth)
    code = _solve_and_render(cfg, problem)
    return code


def run_scaling(cfg: RunConfig, sizes: list[int],
                repeats: int = 1) -> ScalingResult:
    """Time the configured solver over increasing sizes and fit the exponent.

    Per size the instance is regenerated from the same seed, so the
    underlying continuous signal and noise level stay fixed while the grid
    refines.  Sizes whose solve does not converge are excluded from the
    fit.  Timing covers the solve call only.  With ``repeats > 1`` each
    size is solved that many times and the fastest run is kept; scheduler
    interference only ever adds time, so the minimum is the cleanest
    estimate of the cost at that size.
    """
    if len(sizes) < 4:
        raise ConfigError(f"scaling needs at least 4 sizes, got {len(sizes)}")
    if repeats < 1:
        raise ConfigError(f"repeats must be at least 1, got {repeats}")
    base = cfg.experiment
    seconds = []
    iterations = []
    statuses = []
    for n in sizes:
        spec = ExperimentSpec(
            kind=ExperimentKind.INVERSE_INTEGRATION,
            n=n,
            w_value=base.w_value,
            gamma=base.gamma,
            seed=base.seed,
            noise_rel=base.noise_rel,
        )
        problem, _ = make_instance(spec)
        best = float("inf")
        for _ in range(repeats):
            t0 = time.perf_counter()
            report = _run_solver(problem, cfg.solver, cfg.options)
            best = min(best, time.perf_counter() - t0)
        seconds.append(best)
        iterations.append(report.iterations)
        statuses.append(report.status.value)
    ok = [i for i, s in enumerate(statuses) if s == SolveStatus.CONVERGED.value]
    if len(ok) >= 2:
        logs = np.log([sizes[i] for i in ok])
        logt = np.log([max(seconds[i], 1e-9) for i in ok])
        beta = float(np.polyfit(logs, logt, 1)[0])
    else:
        beta = float("nan")
    return ScalingResult(
        sizes=tuple(sizes),
        cpu_seconds=tuple(seconds),
        fitted_exponent=beta,
        solver=cfg.solver,
        iterations=tuple(iterations),
        statuses=tuple(statuses),
    )


def _render_scaling(cfg: RunConfig, result: ScalingResult) -> None:
    if cfg.output_format is OutputFormat.JSON:
        _emit(json.dumps({
            "solver": result.solver,
            "sizes": list(result.sizes),
            "cpu_seconds": list(result.cpu_seconds),
            "iterations": list(result.iterations),
            "statuses": list(result.statuses),
            "fitted_exponent": result.fitted_exponent,
        }, indent=2), cfg.output_path)
        return
    if cfg.output_format is OutputFormat.CSV:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "cpu_seconds", "iterations", "status"])
        for n, t, it, st in zip(result.sizes, result.cpu_seconds,
                                result.iterations, result.statuses):
            writer.writerow([n, f"{t:.17g}", it, st])
        buf.write(f"# fitted_exponent = {result.fitted_exponent:.17g}\n")
        _emit(buf.getvalue(), cfg.output_path)
        return
    lines = [f"{'n':>6}  {'seconds':>12}  {'iterations':>10}  status"]
    for n, t, it, st in zip(result.sizes, result.cpu_seconds,
                            result.iterations, result.statuses):
        lines.append(f"{n:>6}  {_fmt(t):>12}  {it:>10}  {st}")
    lines.append(f"fitted exponent: {result.fitted_exponent:.3f}")
    _emit("\n".join(lines), cfg.output_path)


def run_certify(cfg: RunConfig) -> int:
    """Check a stored solution vector against its instance bundle."""
    if cfg.bundle is None or cfg.solution is None:
        raise ConfigError("certify needs a bundle directory and a solution file")
    if not Path(cfg.bundle).is_dir():
        raise ConfigError(f"no bundle directory at {cfg.bundle}")
    if not Path(cfg.solution).is_file():
        raise ConfigError(f"no solution file at {cfg.solution}")
    problem, _ = load_bundle(cfg.bundle)
    u = load_csv_vector(cfg.solution)
    if u.shape != (problem.n,):
        raise ConfigError(
            f"solution length {u.shape[0]} does not match instance size {problem.n}"
        )
    cert = certify(problem, u)
    if cfg.output_format is OutputFormat.JSON:
        _emit(cert.to_json(), cfg.output_path)
    elif cfg.output_format is OutputFormat.CSV:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for key, value in cert.as_dict().items():
            if key == "p":
                continue
            writer.writerow([key, value])
        _emit(buf.getvalue(), cfg.output_path)
    else:
        d = cert.as_dict()
        width = max(len(k) for k in d if k != "p")
        lines = []
        for key, value in d.items():
            if key == "p":
                continue
            shown = _fmt(value) if isinstance(value, float) else str(value)
            lines.append(f"{key:<{width}}  {shown}")
        _emit("\n".join(lines), cfg.output_path)
    accepted = cert.gap <= gap_tolerance(cert.primal_objective)
    return 0 if accepted else 2


# ---------------------------------------------------------------------------
# argument parsing

class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; the exit-code contract
    # reserves 2 for non-convergence, so usage errors remap to 4
    def error(self, message):
        self.exit(4, f"{self.prog}: error: {message}\n")


def _add_common_flags(sp):
    sp.add_argument("--solver", choices=SOLVER_CHOICES, default=None)
    sp.add_argument("--tol", type=float, default=None,
                    help="residual tolerance (default 1e-10; scaling: 1e-6)")
    sp.add_argument("--max-iters", type=int, default=None)
    sp.add_argument("--format", choices=[f.value for f in OutputFormat], default=None)
    sp.add_argument("--out", type=Path, default=None)
    sp.add_argument("--config", type=Path, default=None,
                    help="TOML file with defaults for any flag")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="l1newton",
                     description="Sparse least-squares solvers with Newton-type "
                                 "active-set methods and duality certificates.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve a stored instance bundle")
    p_solve.add_argument("bundle", type=Path)
    p_solve.add_argument("--w", type=float, default=None,
                         help="override: constant weight value")
    p_solve.add_argument("--gamma", type=float, default=None)
    p_solve.add_argument("--certify", action="store_true", default=None)
    p_solve.add_argument("--save-solution", type=Path, default=None)
    _add_common_flags(p_solve)

    p_exp = sub.add_parser("experiment", help="run a reference experiment")
    p_exp.add_argument("kind", choices=[k.value for k in ExperimentKind])
    p_exp.add_argument("--n", type=int, default=None)
    p_exp.add_argument("--m", type=int, default=None)
    p_exp.add_argument("--w", type=float, default=None)
    p_exp.add_argument("--gamma", type=float, default=None)
    p_exp.add_argument("--noise-rel", type=float, default=None)
    p_exp.add_argument("--noise-abs", type=float, default=None)
    p_exp.add_argument("--seed", type=int, default=None)
    p_exp.add_argument("--blur-width", type=float, default=None)
    p_exp.add_argument("--full-scale", action="store_true", default=None,
                       help="full-size sensing run (n=8192, m=512)")
    p_exp.add_argument("--certify", action="store_true", default=None)
    p_exp.add_argument("--save-bundle", type=Path, default=None)
    p_exp.add_argument("--save-solution", type=Path, default=None)
    _add_common_flags(p_exp)

    p_scale = sub.add_parser("scaling", help="time solves over a size sweep")
    p_scale.add_argument("--sizes", type=str, default=None,
                         help="comma-separated sizes, at least 4")
    p_scale.add_argument("--repeats", type=int, default=None,
                         help="time each size this many times, keep the "
                              "fastest run (default 1)")
    p_scale.add_argument("--w", type=float, default=None)
    p_scale.add_argument("--gamma", type=float, default=None)
    p_scale.add_argument("--noise-rel", type=float, default=None)
    p_scale.add_argument("--seed", type=int, default=None)
    _add_common_flags(p_scale)

    p_cert = sub.add_parser("certify", help="certify a stored solution")
    p_cert.add_argument("bundle", type=Path)
    p_cert.add_argument("solution", type=Path)
    _add_common_flags(p_cert)
    return parser


def _load_config(path: Path) -> dict:
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"bad config file {path}: {exc}") from None
    unknown = set(data) - CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    return data


def _merge_config(args: argparse.Namespace) -> argparse.Namespace:
    if args.config is None:
        return args
    data = _load_config(args.config)
    for key, value in data.items():
        if getattr(args, key, None) is None:
            setattr(args, key, value)
    return args


def _parse_sizes(raw) -> list[int]:
    if raw is None:
        return list(DEFAULT_SCALING_SIZES)
    if isinstance(raw, (list, tuple)):
        return [int(v) for v in raw]
    try:
        return [int(tok) for tok in str(raw).split(",") if tok.strip()]
    except ValueError:
        raise ConfigError(f"bad sizes value {raw!r}") from None


def _solve_options(args, default_tol: float = 1e-10) -> SolveOptions:
    solver = getattr(args, "solver", None) or "ssn"
    if args.max_iters is not None:
        max_iters = args.max_iters
    else:
        max_iters = 200_000 if solver == "ista" else 100
    kind = getattr(args, "kind", None)
    record = kind == ExperimentKind.COMPRESSED_SENSING.value
    try:
        return SolveOptions(
            max_iters=max_iters,
            residual_tol=args.tol if args.tol is not None else default_tol,
            stop_rule=StopRule.BOTH if solver == "ista" else StopRule.RESIDUAL_NORM,
            record_condition=record,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _experiment_spec(args) -> ExperimentSpec:
    kind = ExperimentKind(args.kind)
    defaults = dict(EXPERIMENT_DEFAULTS[kind])
    if kind is ExperimentKind.COMPRESSED_SENSING and getattr(args, "full_scale", None):
        defaults.update(FULL_SCALE_CS)

    def pick(flag, key, fallback=None):
        v = getattr(args, flag, None)
        if v is not None:
            return v
        return defaults.get(key, fallback)

    try:
        return ExperimentSpec(
            kind=kind,
            n=int(pick("n", "n")),
            m=(int(pick("m", "m")) if pick("m", "m") is not None else None),
            w_value=float(pick("w", "w")),
            gamma=float(pick("gamma", "gamma")),
            noise_rel=float(pick("noise_rel", "noise_rel", 0.0)),
            noise_abs=(float(args.noise_abs) if args.noise_abs is not None else None),
            seed=int(pick("seed", "seed", DEFAULT_SEEDS[kind])),
            blur_width=float(pick("blur_width", "blur_width", 0.01)),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    command = Command(args.command)
    fmt = OutputFormat(args.format) if args.format else OutputFormat.TABLE
    solver = getattr(args, "solver", None) or "ssn"
    experiment = None
    sizes = None
    repeats = 1
    if command is Command.EXPERIMENT:
        experiment = _experiment_spec(args)
        options = _solve_options(args)
    elif command is Command.SCALING:
        base = EXPERIMENT_DEFAULTS[ExperimentKind.INVERSE_INTEGRATION]
        experiment = ExperimentSpec(
            kind=ExperimentKind.INVERSE_INTEGRATION,
            n=100,
            w_value=float(args.w if args.w is not None else base["w"]),
            gamma=float(args.gamma if args.gamma is not None else base["gamma"]),
            noise_rel=float(args.noise_rel if args.noise_rel is not None
                            else base["noise_rel"]),
            seed=int(args.seed if args.seed is not None
                     else DEFAULT_SEEDS[ExperimentKind.INVERSE_INTEGRATION]),
        )
        sizes = _parse_sizes(getattr(args, "sizes", None))
        if getattr(args, "repeats", None) is not None:
            try:
                repeats = int(args.repeats)
            except (TypeError, ValueError):
                raise ConfigError(
                    f"bad repeats value {args.repeats!r}") from None
        options = _solve_options(args, default_tol=1e-6)
    else:
        options = _solve_options(args)
    return RunConfig(
        command=command,
        solver=solver,
        options=options,
        output_format=fmt,
        output_path=getattr(args, "out", None),
        experiment=experiment,
        bundle=getattr(args, "bundle", None),
        solution=getattr(args, "solution", None),
        sizes=sizes,
        repeats=repeats,
        certify=bool(getattr(args, "certify", None)),
        weight_override=getattr(args, "w", None) if command is Command.SOLVE else None,
        gamma_override=getattr(args, "gamma", None) if command is Command.SOLVE else None,
        save_bundle=getattr(args, "save_bundle", None),
        save_solution=getattr(args, "save_solution", None),
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args = _merge_config(args)
        cfg = _config_from_args(args)
        if cfg.command is Command.SOLVE:
            return run_solve(cfg)
        if cfg.command is Command.EXPERIMENT:
            return run_experiment(cfg)
        if cfg.command is Command.SCALING:
            result = run_scaling(cfg, cfg.sizes, repeats=cfg.repeats)
            _render_scaling(cfg, result)
            return 0
        return run_certify(cfg)
    except ConfigError as exc:
        print(f"l1newton: error: {exc}", file=sys.stderr)
        return 4
    except OSError as exc:
        print(f"l1newton: error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
