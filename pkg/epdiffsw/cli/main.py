"""
EPDiff-SW - Command Line Interface

    epdiffsw run <config-path>
    epdiffsw verify {operators,greens,identities,conservation}
    epdiffsw greens-table --alpha A --nu V --dim N --rmax R --samples S

Exit codes: 0 success, 1 run aborted or verification failed,
2 usage or configuration error.
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

import pandas as pd
import structlog
from pydantic import ValidationError

from epdiffsw.cli.config_file import load_config, serialize_config
from epdiffsw.cli.output import DIAGNOSTICS_FILENAME, write_diagnostics, write_snapshot
from epdiffsw.cli.verify import format_check, run_suite, suite_names
from epdiffsw.core.config import get_settings
from epdiffsw.core.exceptions import ConfigError, EPDiffSWError, UnknownSuiteError
from epdiffsw.core.log_config import configure_logging
from epdiffsw.greens import green_table
from epdiffsw.integrate import RunResult, run
from epdiffsw.schemas import GreenParams, OperatorParams, RunConfig
from epdiffsw.spectral import make_grid

logger = structlog.get_logger()

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

CONFIG_COPY_FILENAME = "config.txt"


def _resolve_output_dir(config: RunConfig) -> RunConfig:
    override = get_settings().output_dir_override
    if override:
        return config.model_copy(update={"output_dir": override})
    return config


def _print_summary(result: RunResult) -> None:
    last = result.records[-1]
    print(f"steps completed: {last.step}  t = {last.t:.6g}")
    print(f"hamiltonian: {last.hamiltonian:.12g}  relative drift: {result.drift('hamiltonian'):.3e}")
    mass_drift = result.drift("mass")
    if mass_drift is not None:
        print(f"mass: {last.mass:.12g}  relative drift: {mass_drift:.3e}")
    print(f"momentum_x drift: {result.drift('momentum_x'):.3e}")
    momentum_y_drift = result.drift("momentum_y")
    if momentum_y_drift is not None:
        print(f"momentum_y drift: {momentum_y_drift:.3e}")


def cmd_run(config_path: str) -> int:
    """Execute a run and write diagnostics.csv plus snapshots to output_dir"""
    try:
        config = _resolve_output_dir(load_config(config_path))
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConfigError as exc:
        print(f"error: invalid config {config_path}: {exc}", file=sys.stderr)
        return EXIT_USAGE

    output_dir = Path(config.output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    (output_dir / CONFIG_COPY_FILENAME).write_text(serialize_config(config), encoding="utf-8")

    try:
        grid = make_grid(config.dim, config.sizes, config.lengths)
        result = run(
            config,
            on_output=lambda record, snapshot: write_snapshot(snapshot, grid, output_dir),
        )
    except EPDiffSWError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    write_diagnostics(result.records, output_dir / DIAGNOSTICS_FILENAME)

    if result.aborted:
        print(f"run aborted: {result.abort_reason}", file=sys.stderr)
        return EXIT_FAILURE

    _print_summary(result)
    return EXIT_OK


def cmd_verify(suite: str) -> int:
    try:
        checks = run_suite(suite)
    except UnknownSuiteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    for check in checks:
        print(format_check(check))
    failed = sum(not c.passed for c in checks)
    print(f"{suite}: {len(checks) - failed}/{len(checks)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_FAILURE


def cmd_greens_table(alpha: float, nu: float, dim: int, rmax: float, samples: int) -> int:
    """Print r,G(r) as CSV on stdout"""
    try:
        gp = GreenParams(op=OperatorParams(alpha=alpha, nu=nu, dim=dim))
        r, values = green_table(gp, rmax, samples)
    except (ValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    pd.DataFrame({"r": r, "G": values}).to_csv(
        sys.stdout,
        index=False,
        float_format=get_settings().SNAPSHOT_FLOAT_FORMAT,
        lineterminator="\n",
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="epdiffsw",
        description="Pseudospectral shallow-water and EPDiff simulations on periodic domains",
    )
    parser.add_argument("--log-level", default=None, help="override LOG_LEVEL")
    parser.add_argument("--log-format", choices=["console", "json"], default=None)
    commands = parser.add_subparsers(dest="command", required=True)

    run_parser = commands.add_parser("run", help="integrate a configured run")
    run_parser.add_argument("config", help="path to a key=value run configuration")

    verify_parser = commands.add_parser("verify", help="run an invariant suite")
    verify_parser.add_argument("suite", choices=suite_names())

    table = commands.add_parser("greens-table", help="tabulate the closed-form Green's function")
    table.add_argument("--alpha", type=float, required=True)
    table.add_argument("--nu", type=float, required=True)
    table.add_argument("--dim", type=int, choices=[1, 2], required=True)
    table.add_argument("--rmax", type=float, required=True)
    table.add_argument("--samples", type=int, required=True)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE

    configure_logging(level=args.log_level, fmt=args.log_format)

    if args.command == "run":
        return cmd_run(args.config)
    if args.command == "verify":
        return cmd_verify(args.suite)
    return cmd_greens_table(args.alpha, args.nu, args.dim, args.rmax, args.samples)


if __name__ == "__main__":
    sys.exit(main())
