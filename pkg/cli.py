"""
Command-line entry point for the Lambda-atom simulator

    python cli.py sweep --preset a-down --tau-end 50 --tau-steps 500 --out output/a-down.csv
    python cli.py sweep --config run.conf --verify
    python cli.py presets
    python cli.py verify --preset b-down
"""
import argparse
import json
import logging
import sys

from cli_utils import (
    build_sweep_spec, handle_errors, load_config_file, log_run, set_log_level,
)
from config import Config
from lambda_atom.errors import ConfigError
from lambda_atom.presets import PRESET_NAMES, presets, reduced_config, resolve_preset
from lambda_atom.sweep import VERIFY_TAUS, run_sweep
from lambda_atom.oracle import verify_against_oracle

logger = logging.getLogger('lambda_atom.cli')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lambda-atom",
        description="Exact Lambda-atom / two-mode cavity dynamics and nonclassicality indicators",
    )
    parser.add_argument("--log-level", default=None, help="Logging level (default from LAMBDA_ATOM_LOG_LEVEL)")
    parser.add_argument("--env-file", default=None, help="Read settings from this .env file")
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="Write indicator time series as CSV")
    source = sweep.add_mutually_exclusive_group()
    source.add_argument("--preset", help=f"One of {', '.join(PRESET_NAMES)} (fig1a-down style accepted)")
    source.add_argument("--config", help="Flat key=value config file")
    sweep.add_argument("--tau-start", type=float, default=None, help="First scaled time (default 0)")
    sweep.add_argument("--tau-end", type=float, default=None, help="Last scaled time (default 50)")
    sweep.add_argument("--tau-steps", type=int, default=None, help="Number of samples (default 500)")
    sweep.add_argument("--out", default=None, help="Output CSV path")
    sweep.add_argument("--observables", default=None, help="Comma-separated column subset")
    sweep.add_argument("--verify", action="store_true", default=None,
                       help="Cross-check against the RK4 oracle at reduced scale first")
    sweep.add_argument("--detuning", type=float, default=None, help="Detuning of the (c) presets")
    sweep.add_argument("--no-free-phases", dest="include_free_phases", action="store_false", default=None,
                       help="Drop the free-evolution phases from the joint state")
    sweep.add_argument("--phase-snapshot", type=float, default=None,
                       help="Also write the phase distribution at this scaled time")
    sweep.add_argument("--m-pts", type=int, default=None, help="Phase mesh points per axis")
    sweep.add_argument("--theta0", type=float, default=None, help="Phase window start")
    sweep.add_argument("--n-max", type=int, default=None, help="Fock truncation per mode")
    sweep.add_argument("--mode", type=int, default=None, help="Mode reported in the Mandel Q summary")
    sweep.add_argument("--workers", type=int, default=None, help="Thread pool size")

    sub.add_parser("presets", help="List the scenario presets")

    verify = sub.add_parser("verify", help="Compare the closed form with the RK4 oracle")
    verify.add_argument("--preset", required=True)
    verify.add_argument("--dt", type=float, default=None, help="RK4 step (default LAMBDA_ATOM_ORACLE_DT)")
    return parser


@handle_errors
@log_run
def sweep_command(args) -> int:
    file_values = load_config_file(args.config) if args.config else {}
    overrides = {
        "preset": args.preset,
        "tau_start": args.tau_start,
        "tau_end": args.tau_end,
        "tau_steps": args.tau_steps,
        "out": args.out,
        "observables": args.observables,
        "verify": args.verify,
        "detuning": args.detuning,
        "include_free_phases": args.include_free_phases,
        "phase_snapshot": args.phase_snapshot,
        "m_pts": args.m_pts,
        "theta0": args.theta0,
        "n_max": args.n_max,
        "mode": args.mode,
        "workers": args.workers,
    }
    spec = build_sweep_spec(file_values, overrides)
    series = run_sweep(spec, oracle_dt=Config.ORACLE_DT)

    summary = series.summary()
    mandel = f"Q{spec.mode}"
    for name, stats in summary.items():
        logger.info(f"{name}: min={stats['min']:.6g} max={stats['max']:.6g}")
    if mandel in summary:
        logger.info(f"Mandel {mandel} range: [{summary[mandel]['min']:.6g}, {summary[mandel]['max']:.6g}]")
    print(f"Wrote {len(series)} rows to {series.path}")
    return 0


@handle_errors
def presets_command(args) -> int:
    for name, cfg in presets(detuning=Config.DETUNING, n_max=Config.N_MAX).items():
        print(f"{name:7s} f={cfg.f1.name:10s} g={cfg.g1.name:10s} chi={cfg.chi:<4g} "
              f"delta2={cfg.delta2:<4g} delta3={cfg.delta3:<4g} |alpha|^2={abs(cfg.alpha1) ** 2:.4g} "
              f"n_max={cfg.n_max}")
    return 0


@handle_errors
@log_run
def verify_command(args) -> int:
    dt = args.dt if args.dt is not None else Config.ORACLE_DT
    cfg = reduced_config(resolve_preset(args.preset, detuning=Config.DETUNING))
    report = verify_against_oracle(cfg, VERIFY_TAUS, dt=dt, strict=True)
    print(json.dumps(report.to_dict(), indent=2))
    return 0


COMMANDS = {
    "sweep": sweep_command,
    "presets": presets_command,
    "verify": verify_command,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    problems = Config.initialize(args.env_file)
    set_log_level(args.log_level or Config.LOG_LEVEL)
    if problems:
        return handle_errors(_raise_settings)(problems)
    return COMMANDS[args.command](args)


def _raise_settings(problems):
    raise ConfigError("Invalid settings", {"problems": problems})


if __name__ == "__main__":
    sys.exit(main())
