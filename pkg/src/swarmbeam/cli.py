"""Command-line front end.

Subcommands::

    swarmbeam run --config FILE [--seed S] [--out DIR] [--workers W]
    swarmbeam preset {fig3..fig8} [--seed S] [--out DIR] [--workers W]
    swarmbeam verify [--quick]
    swarmbeam plot CSV [--db] [--out FILE]

Exit codes: 0 on success, 1 on any validation or usage error, 2 when
``verify`` finds a failing check.  Worker count falls back to the
``SWARMBEAM_WORKERS`` environment variable when ``--workers`` is absent.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:
    import tomli as tomllib

from .experiment import ExperimentConfig, default_theta_grid, run_sweep
from .geometry import SwarmConfig
from .presets import DEFAULT_SEED, PRESET_PARAMS, preset_config
from .pulse import PulseSpec
from .reporting import plot_svg, write_csv
from .verify import run_verification


class CliError(Exception):
    """Any user-facing validation problem; rendered as message + exit 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="swarmbeam", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run a sweep described by a TOML config file")
    run_p.add_argument("--config", required=True, help="path to the TOML config")
    run_p.add_argument("--seed", type=int, default=None, help="override the master seed")
    run_p.add_argument("--out", default=".", help="output directory for the CSV")
    run_p.add_argument("--workers", type=int, default=None, help="parallel workers")

    preset_p = sub.add_parser("preset", help="run one of the built-in sweeps")
    preset_p.add_argument("name", choices=sorted(PRESET_PARAMS), help="preset name")
    preset_p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    preset_p.add_argument("--out", default=".")
    preset_p.add_argument("--workers", type=int, default=None)

    verify_p = sub.add_parser("verify", help="run the built-in correctness checks")
    verify_p.add_argument("--quick", action="store_true", help="reduced sample counts")

    plot_p = sub.add_parser("plot", help="render a sweep CSV as an SVG")
    plot_p.add_argument("csv", help="path to a sweep CSV")
    plot_p.add_argument("--db", action="store_true", help="dB y-axis")
    plot_p.add_argument("--out", default=None, help="output SVG path")

    return parser


def _resolve_workers(value) -> int:
    if value is None:
        value = os.environ.get("SWARMBEAM_WORKERS", "1")
    try:
        workers = int(value)
    except (TypeError, ValueError):
        raise CliError(f"workers must be an integer, got {value!r}")
    if workers < 1:
        raise CliError("workers must be >= 1")
    return workers


def _require(table: dict, section: str, key: str, kind, default=None):
    if key not in table:
        if default is not None:
            return default
        raise CliError(f"config is missing required field {section}.{key}")
    value = table[key]
    try:
        return kind(value)
    except (TypeError, ValueError):
        raise CliError(f"config field {section}.{key} has invalid value {value!r}")


def load_config(path) -> ExperimentConfig:
    """Parse and validate a TOML experiment description.

    Schema (see the repository's config.example.toml): tables ``swarm``,
    ``pulse`` and ``sweep``; every validation error names the offending
    field.
    """
    path = Path(path)
    if not path.exists():
        raise CliError(f"config file not found: {path}")
    try:
        raw = tomllib.loads(path.read_text())
    except tomllib.TOMLDecodeError as exc:
        raise CliError(f"config file is not valid TOML: {exc}")

    for section in ("swarm", "pulse", "sweep"):
        if section not in raw or not isinstance(raw[section], dict):
            raise CliError(f"config is missing the [{section}] table")

    swarm_t, pulse_t, sweep_t = raw["swarm"], raw["pulse"], raw["sweep"]
    try:
        swarm = SwarmConfig(
            node_count=_require(swarm_t, "swarm", "nodes", int),
            position_stddev=_require(swarm_t, "swarm", "position_stddev_m", float),
            distribution=_require(swarm_t, "swarm", "distribution", str, "gaussian"),
            bound_radius=(
                float(swarm_t["bound_radius_m"]) if "bound_radius_m" in swarm_t else None
            ),
        )
    except ValueError as exc:
        raise CliError(f"invalid [swarm] config: {exc}")
    try:
        pulse = PulseSpec(
            baud_rate=_require(pulse_t, "pulse", "baud_rate_hz", float),
            rolloff=_require(pulse_t, "pulse", "rolloff", float),
            oversampling=_require(pulse_t, "pulse", "oversampling", int),
            tap_count=_require(pulse_t, "pulse", "taps", int),
            carrier_frequency=_require(pulse_t, "pulse", "carrier_hz", float),
        )
    except ValueError as exc:
        raise CliError(f"invalid [pulse] config: {exc}")
    try:
        grid = default_theta_grid(
            max_deg=_require(sweep_t, "sweep", "theta_max_deg", float, 2.0),
            min_deg=_require(sweep_t, "sweep", "theta_min_deg", float, 1e-5),
            points=_require(sweep_t, "sweep", "theta_points", int, 201),
        )
        config = ExperimentConfig(
            swarm=swarm,
            pulse=pulse,
            theta_grid=grid,
            phi=float(np.deg2rad(_require(sweep_t, "sweep", "phi_deg", float, 0.0))),
            realizations=_require(sweep_t, "sweep", "realizations", int, 200),
            master_seed=_require(sweep_t, "sweep", "seed", int, DEFAULT_SEED),
        )
    except ValueError as exc:
        raise CliError(f"invalid [sweep] config: {exc}")
    return config


def _write_result(result, out_dir, stem: str) -> Path:
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        csv_path = out / f"{stem}.csv"
        write_csv(result, csv_path)
    except OSError as exc:
        raise CliError(f"cannot write to output directory {out}: {exc}")
    return csv_path


def _cmd_run(args) -> int:
    config = load_config(args.config)
    if args.seed is not None:
        config = ExperimentConfig(
            swarm=config.swarm,
            pulse=config.pulse,
            theta_grid=config.theta_grid,
            phi=config.phi,
            realizations=config.realizations,
            master_seed=args.seed,
        )
    workers = _resolve_workers(args.workers)
    result = run_sweep(config, workers=workers)
    csv_path = _write_result(result, args.out, Path(args.config).stem)
    print(f"wrote {csv_path} (content hash {result.content_hash()})")
    return 0


def _cmd_preset(args) -> int:
    config = preset_config(args.name, master_seed=args.seed)
    workers = _resolve_workers(args.workers)
    result = run_sweep(config, workers=workers)
    csv_path = _write_result(result, args.out, args.name)
    boresight = float(result.prr_mean[0])
    print(
        f"wrote {csv_path} (boresight raw power {boresight:.6g}, "
        f"content hash {result.content_hash()})"
    )
    return 0


def _cmd_verify(args) -> int:
    checks = run_verification(quick=args.quick)
    name_width = max(len(check.name) for check in checks)
    failures = 0
    for check in checks:
        status = "PASS" if check.passed else "FAIL"
        print(f"{check.name:<{name_width}}  {status}  {check.detail}")
        failures += 0 if check.passed else 1
    if failures:
        print(f"{failures} of {len(checks)} checks failed")
        return 2
    print(f"all {len(checks)} checks passed")
    return 0


def _cmd_plot(args) -> int:
    csv_path = Path(args.csv)
    if not csv_path.exists():
        raise CliError(f"CSV file not found: {csv_path}")
    try:
        out = plot_svg(csv_path, out_path=args.out, db=args.db)
    except ValueError as exc:
        raise CliError(f"cannot plot {csv_path}: {exc}")
    except OSError as exc:
        raise CliError(f"cannot write SVG: {exc}")
    print(f"wrote {out}")
    return 0


_COMMANDS = {
    "run": _cmd_run,
    "preset": _cmd_preset,
    "verify": _cmd_verify,
    "plot": _cmd_plot,
}


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_cli())
