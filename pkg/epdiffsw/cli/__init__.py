"""
EPDiff-SW - Command line surface

Configuration files, output formats, verification suites and the
`epdiffsw` entry point.
"""

from .config_file import load_config, parse_config, serialize_config
from .output import (
    BinarySnapshot,
    read_binary_snapshot,
    write_diagnostics,
    write_snapshot,
)
from .verify import format_check, run_suite, suite_names
from .main import build_parser, cmd_greens_table, cmd_run, cmd_verify, main

__all__ = [
    "load_config",
    "parse_config",
    "serialize_config",
    "BinarySnapshot",
    "read_binary_snapshot",
    "write_diagnostics",
    "write_snapshot",
    "format_check",
    "run_suite",
    "suite_names",
    "build_parser",
    "cmd_greens_table",
    "cmd_run",
    "cmd_verify",
    "main",
]
