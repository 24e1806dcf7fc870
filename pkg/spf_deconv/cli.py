"""Command-line front end.

Subcommands:

- ``solve``: one synthetic instance (first cell of ``--config``, or built
  from ``--n/--s``), prints RSDR and iteration count.
- ``phase-transition``: runs a config grid, writes CSV and optionally an SVG
  heatmap.
- ``project-cone``: projects a vector file onto C_μ.
- ``flatness-stats``: Monte-Carlo flatness summaries of Φu.
- ``rip-probe``: empirical restricted isometry/angle/orthogonality distortion.

Library errors and I/O failures exit with status 2 and a one-line message.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, Optional, Sequence

import numpy.typing as npt
import orjson
from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from spf_deconv.errors import ConfigError, SPFDeconvError
from spf_deconv.harness.config import (
    ExperimentConfig,
    default_log_level,
    default_threads,
    load_config,
    load_environment,
)
from spf_deconv.harness.export import export_csv, to_csv
from spf_deconv.harness.grid import phase_transition
from spf_deconv.harness.heatmap import render_heatmap
from spf_deconv.harness.rip import estimate_rip_distortion, gaussian_operator_factory
from spf_deconv.harness.trials import run_trial
from spf_deconv.model.flatness import flatness_stats
from spf_deconv.model.signals import FlatnessLevel, ModelParams, spectral_flatness
from spf_deconv.projection.cone import project_flatness_cone
from spf_deconv.solver.spf import default_flatness_level
from spf_deconv.storage.vectors import VectorFile

logger = logging.getLogger(__name__)

console = Console()
error_console = Console(stderr=True)

EXIT_LIBRARY_ERROR = 2


def nonnegative_int(raw: str) -> int:
    """argparse type for seeds."""
    try:
        value = int(raw)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected an integer, got {raw!r}") from exc
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    """Parser with one subcommand per harness entry point."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=nonnegative_int, help="Base seed (default: config base_seed, else 0)")
    common.add_argument("--config", type=Path, help="Experiment config JSON")
    common.add_argument("--out", type=Path, help="Output file")
    common.add_argument("--threads", type=int, help="Worker threads (default $SPF_DECONV_THREADS or 1)")
    common.add_argument("--format", choices=["csv"], default="csv", help="Grid output format")
    common.add_argument("--log-level", help="Log level (default $SPF_DECONV_LOG_LEVEL or WARNING)")

    parser = argparse.ArgumentParser(
        prog="spf-deconv",
        description="Sparse power factorization for subsampled blind deconvolution",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", parents=[common], help="Solve one synthetic instance")
    solve.add_argument("--n", type=int, default=128, help="Signal length when no config is given")
    solve.add_argument("--s", type=int, default=2, help="Sparsity when no config is given")
    solve.add_argument("--snr", type=float, help="Measurement SNR in dB (default noiseless)")

    grid = sub.add_parser("phase-transition", parents=[common], help="Run a phase-transition grid")
    grid.add_argument("--heatmap", type=Path, help="Also write an SVG heatmap here")
    grid.add_argument("--progress", action="store_true", help="Show a progress bar")

    cone = sub.add_parser("project-cone", parents=[common], help="Project a vector file onto C_mu")
    cone.add_argument("input", type=Path, help="Vector file to project")
    cone.add_argument("--mu", type=float, required=True, help="Flatness level")

    flat = sub.add_parser("flatness-stats", parents=[common], help="Flatness statistics of Phi u")
    flat.add_argument("--n", type=int, required=True)
    flat.add_argument("--s", type=int, required=True)
    flat.add_argument("--trials", type=int, default=100)
    flat.add_argument("--mode", choices=["fixed_signal", "adversarial_search"], default="fixed_signal")

    rip = sub.add_parser("rip-probe", parents=[common], help="Empirical RIP/RAP/ROP distortion")
    rip.add_argument("--n", type=int, required=True)
    rip.add_argument("--m", type=int, required=True)
    rip.add_argument("--s", type=int, required=True)
    rip.add_argument("--kind", choices=["rip_diff", "rap", "rop"], default="rip_diff")
    rip.add_argument("--trials", type=int, default=100)
    rip.add_argument("--mu", help="Flatness level: 'log' (default), 'none' or a number")
    rip.add_argument("--subsample", choices=["random", "uniform", "full"], default="random")
    return parser


def cmd_solve(args: argparse.Namespace) -> int:
    if args.config is not None:
        cfg = _with_seed(load_config(args.config), args.seed)
    else:
        try:
            cfg = ExperimentConfig(
                m_values=[args.n],
                s_values=[args.s],
                noise_snr_db="inf" if args.snr is None else args.snr,
                trials_per_cell=1,
                base_seed=args.seed or 0,
            )
        except ValidationError as exc:
            raise ConfigError(f"invalid solve parameters: {exc}") from exc
    cell = cfg.cells()[0]
    result = run_trial(cfg, cell, 0)
    summary = {
        "m": result.m,
        "s": result.s,
        "rsdr_db": result.rsdr_db,
        "snr_db": result.snr_db,
        "success": result.success,
        "outer_iters": result.outer_iters,
        "init_angle_sin": result.init_angle_sin,
        "error": result.error,
    }
    _emit(summary, args.out, "Solve")
    return 0


def cmd_phase_transition(args: argparse.Namespace) -> int:
    if args.config is None:
        raise ConfigError("phase-transition needs --config")
    cfg = _with_seed(load_config(args.config), args.seed)
    threads = args.threads if args.threads is not None else default_threads()
    grid = phase_transition(cfg, threads=threads, progress=args.progress)
    if args.out is not None:
        export_csv(grid, args.out)
        console.print(f"[green]Wrote {len(grid)} cells to {args.out}[/green]")
    else:
        sys.stdout.write(to_csv(grid))
    if args.heatmap is not None:
        render_heatmap(grid, args.heatmap)
        logger.info("heatmap written to %s", args.heatmap)
    return 0


def cmd_project_cone(args: argparse.Namespace) -> int:
    x = VectorFile(args.input).read()
    result = project_flatness_cone(x, args.mu)
    if args.out is not None:
        VectorFile(args.out).write(result.projected)
    summary = {
        "n": int(x.size),
        "mu": args.mu,
        "k_star": result.k_star,
        "was_member": result.was_member,
        "flatness_before": _flatness_or_none(x),
        "flatness_after": _flatness_or_none(result.projected),
    }
    _emit(summary, None, "Cone projection")
    return 0


def cmd_flatness_stats(args: argparse.Namespace) -> int:
    summary = flatness_stats(args.n, args.s, args.trials, args.mode, seed=args.seed or 0)
    _emit(summary.to_dict(), args.out, "Flatness statistics")
    return 0


def cmd_rip_probe(args: argparse.Namespace) -> int:
    mu = _parse_mu(args.mu, args.n)
    try:
        params = ModelParams(n=args.n, m=args.m, s1=args.s, s2=args.s, mu1=mu.mu, mu2=mu.mu)
    except ValidationError as exc:
        raise ConfigError(f"invalid probe parameters: {exc}") from exc
    factory = gaussian_operator_factory(args.n, args.m, subsample=args.subsample)
    estimate = estimate_rip_distortion(factory, params, args.kind, args.trials, seed=args.seed or 0)
    _emit(estimate.to_dict(), args.out, "Distortion probe")
    return 0


COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "solve": cmd_solve,
    "phase-transition": cmd_phase_transition,
    "project-cone": cmd_project_cone,
    "flatness-stats": cmd_flatness_stats,
    "rip-probe": cmd_rip_probe,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point of the ``spf-deconv`` console script."""
    load_environment()
    args = build_parser().parse_args(argv)
    _configure_logging(args.log_level or default_log_level())
    try:
        return COMMANDS[args.command](args)
    except (SPFDeconvError, OSError) as exc:
        error_console.print(f"[bold red]error:[/bold red] {exc}", highlight=False)
        return EXIT_LIBRARY_ERROR


def _with_seed(cfg: ExperimentConfig, seed: Optional[int]) -> ExperimentConfig:
    if seed is None:
        return cfg
    return cfg.model_copy(update={"base_seed": seed})


def _configure_logging(level: str) -> None:
    logging.basicConfig(
        level=level.upper(),
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=error_console, rich_tracebacks=True)],
        force=True,
    )


def _parse_mu(raw: Optional[str], n: int) -> FlatnessLevel:
    if raw is None or raw == "log":
        return FlatnessLevel(default_flatness_level(n))
    if raw == "none":
        return FlatnessLevel.inactive()
    try:
        return FlatnessLevel(min(float(raw), float(n)))
    except ValueError as exc:
        raise ConfigError(f"--mu must be 'log', 'none' or a number, got {raw!r}") from exc


def _flatness_or_none(x: npt.ArrayLike) -> Optional[float]:
    try:
        return spectral_flatness(x)
    except SPFDeconvError:
        return None


def _emit(summary: Dict[str, object], out: Optional[Path], title: str) -> None:
    """Write ``summary`` as JSON to ``out``, or print it as a table."""
    if out is not None:
        out.write_bytes(orjson.dumps(summary, option=orjson.OPT_INDENT_2 | orjson.OPT_SERIALIZE_NUMPY))
        console.print(f"[green]Wrote {title.lower()} to {out}[/green]")
        return
    table = Table(title=title)
    table.add_column("Field", style="cyan")
    table.add_column("Value", style="magenta")
    for key, value in _flatten(summary).items():
        table.add_row(key, _format(value))
    console.print(table)


def _flatten(summary: Dict[str, object], prefix: str = "") -> Dict[str, object]:
    rows: Dict[str, object] = {}
    for key, value in summary.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            rows.update(_flatten(value, f"{name}."))
        else:
            rows[name] = value
    return rows


def _format(value: object) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    if isinstance(value, list):
        return ", ".join(_format(v) for v in value)
    return str(value)


if __name__ == "__main__":
    sys.exit(main())
