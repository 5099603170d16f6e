"""
EPDiff-SW - Command Line Tests
Config parsing, run/verify/greens-table commands and output file formats
"""

import io
import math
import os
import subprocess
import sys
from pathlib import Path

import numpy as np
import pandas as pd
import pytest
import structlog

from epdiffsw.cli import (
    cmd_run,
    cmd_verify,
    format_check,
    main,
    parse_config,
    read_binary_snapshot,
    run_suite,
    serialize_config,
    suite_names,
)
from epdiffsw.cli.main import CONFIG_COPY_FILENAME, EXIT_FAILURE, EXIT_OK, EXIT_USAGE
from epdiffsw.cli.output import DIAGNOSTICS_COLUMNS, SNAPSHOT_MAGIC
from epdiffsw.core.exceptions import ConfigError, SnapshotFormatError, UnknownSuiteError
from epdiffsw.core.log_config import configure_logging
from epdiffsw.schemas import InitialCondition, ModelKind

MINIMAL_EPDIFF = """\
# minimal 1-D EPDiff run
model = epdiff_advective
dim = 1
nx = 64
lx = 6.283185307179586
alpha = 0.5
nu = 1
dt = 0.001
t_end = 0.01
ic = peakon
"""

HEADER = ",".join(DIAGNOSTICS_COLUMNS)


def _write_config(directory: Path, text: str, output: Path) -> Path:
    path = directory / "run.cfg"
    path.write_text(text + f"output_dir = {output}\n", encoding="utf-8")
    return path


def _sw_config(**overrides) -> str:
    values = {
        "model": "sw_momentum",
        "dim": "1",
        "nx": "32",
        "lx": "6.283185307179586",
        "g": "1.0",
        "dt": "0.002",
        "t_end": "0.02",
        "output_every": "5",
        "ic": "random_smooth",
        "ic_amplitude": "0.05",
        "seed": "11",
    }
    values.update(overrides)
    return "".join(f"{key} = {value}\n" for key, value in values.items())


class TestParseConfig:
    """Test key=value configuration parsing"""

    def test_minimal_epdiff(self):
        config = parse_config(MINIMAL_EPDIFF)
        assert config.model is ModelKind.EPDIFF_ADVECTIVE
        assert config.ic is InitialCondition.PEAKON
        assert config.g == 9.81
        assert config.dealias is True
        assert config.seed == 0
        assert config.output_every == 1
        assert config.alpha == 0.5

    def test_unknown_key(self):
        """Test a 'gravity' key is rejected by name and line"""
        with pytest.raises(ConfigError) as info:
            parse_config(MINIMAL_EPDIFF + "gravity = 9.81\n")
        assert info.value.key == "gravity"
        assert info.value.line == 11
        assert "gravity" in str(info.value)

    def test_negative_dt(self):
        with pytest.raises(ConfigError) as info:
            parse_config(MINIMAL_EPDIFF.replace("dt = 0.001", "dt = -0.1"))
        assert info.value.key == "dt"
        assert info.value.line == 8

    def test_t_end_not_multiple_of_dt(self):
        with pytest.raises(ConfigError) as info:
            parse_config(MINIMAL_EPDIFF.replace("dt = 0.001", "dt = 0.003"))
        assert info.value.key == "dt"
        assert info.value.line == 8
        assert "whole number of steps" in str(info.value)

    def test_missing_required_key(self):
        with pytest.raises(ConfigError) as info:
            parse_config(MINIMAL_EPDIFF.replace("t_end = 0.01\n", ""))
        assert info.value.key == "t_end"

    def test_missing_epdiff_parameter(self):
        with pytest.raises(ConfigError) as info:
            parse_config(MINIMAL_EPDIFF.replace("nu = 1\n", ""))
        assert info.value.key == "nu"

    def test_two_d_needs_second_axis(self):
        text = _sw_config(dim="2", ly="6.0")
        with pytest.raises(ConfigError) as info:
            parse_config(text)
        assert info.value.key == "ny"

    def test_duplicate_key(self):
        with pytest.raises(ConfigError) as info:
            parse_config("nx = 32\nnx = 64\n")
        assert info.value.key == "nx"
        assert info.value.line == 2

    def test_unparseable_value(self):
        with pytest.raises(ConfigError) as info:
            parse_config(MINIMAL_EPDIFF.replace("nx = 64", "nx = sixty-four"))
        assert info.value.key == "nx"
        assert "cannot parse" in str(info.value)

    def test_line_without_equals(self):
        with pytest.raises(ConfigError) as info:
            parse_config("model epdiff_curl\n")
        assert info.value.line == 1

    def test_comments_and_blank_lines(self):
        text = "\n# header\n" + MINIMAL_EPDIFF.replace("nx = 64", "nx = 64   # points") + "\n"
        assert parse_config(text).nx == 64

    def test_dealias_flag(self):
        assert parse_config(MINIMAL_EPDIFF + "dealias = false\n").dealias is False
        with pytest.raises(ConfigError):
            parse_config(MINIMAL_EPDIFF + "dealias = maybe\n")

    def test_invalid_model_value(self):
        with pytest.raises(ConfigError) as info:
            parse_config(MINIMAL_EPDIFF.replace("epdiff_advective", "boussinesq"))
        assert info.value.key == "model"

    @pytest.mark.parametrize(
        "text",
        [
            MINIMAL_EPDIFF,
            _sw_config(dim="2", ny="16", ly="3.5", dealias="false", ic_center_x="1.25", depth="2.0"),
        ],
    )
    def test_serialize_round_trip(self, text):
        config = parse_config(text)
        assert parse_config(serialize_config(config)) == config


class TestRunCommand:
    """Test `epdiffsw run`"""

    def test_successful_run(self, tmp_path, capsys):
        out = tmp_path / "out"
        code = cmd_run(str(_write_config(tmp_path, MINIMAL_EPDIFF, out)))
        assert code == EXIT_OK
        lines = (out / "diagnostics.csv").read_text().splitlines()
        assert lines[0] == HEADER
        assert len(lines) == 1 + 11
        assert (out / CONFIG_COPY_FILENAME).exists()
        snapshot = pd.read_csv(out / "snapshot_000000.csv")
        assert list(snapshot.columns) == ["x", "m_x", "u_x"]
        assert len(snapshot) == 64
        assert "hamiltonian" in capsys.readouterr().out

    def test_diagnostics_rows(self, tmp_path):
        out = tmp_path / "out"
        assert cmd_run(str(_write_config(tmp_path, _sw_config(), out))) == EXIT_OK
        frame = pd.read_csv(out / "diagnostics.csv")
        assert list(frame["step"]) == [0, 5, 10]
        assert frame["t"].is_monotonic_increasing
        assert frame["momentum_y"].isna().all()
        assert frame["mass"].notna().all()
        assert sorted(p.name for p in out.glob("snapshot_*.csv")) == [
            "snapshot_000000.csv",
            "snapshot_000005.csv",
            "snapshot_000010.csv",
        ]

    def test_zero_duration(self, tmp_path):
        out = tmp_path / "out"
        assert cmd_run(str(_write_config(tmp_path, _sw_config(t_end="0"), out))) == EXIT_OK
        lines = (out / "diagnostics.csv").read_text().splitlines()
        assert len(lines) == 2

    def test_unstable_time_step(self, tmp_path, capsys):
        """Test a dt far beyond the CFL guideline aborts with the step number"""
        text = _sw_config(model="sw_primitive", g="9.81", dt="1.0", t_end="100")
        code = cmd_run(str(_write_config(tmp_path, text, tmp_path / "out")))
        assert code == EXIT_FAILURE
        err = capsys.readouterr().err
        assert "run aborted" in err
        assert "step" in err

    def test_output_dir_from_environment(self, tmp_path, monkeypatch):
        override = tmp_path / "elsewhere"
        monkeypatch.setenv("EPDIFF_OUTPUT_DIR", str(override))
        code = cmd_run(str(_write_config(tmp_path, _sw_config(), tmp_path / "ignored")))
        assert code == EXIT_OK
        assert (override / "diagnostics.csv").exists()
        assert not (tmp_path / "ignored").exists()

    def test_reruns_are_byte_identical(self, tmp_path):
        digests = []
        for name in ("first", "second"):
            out = tmp_path / name
            assert cmd_run(str(_write_config(tmp_path, _sw_config(), out))) == EXIT_OK
            digests.append((out / "diagnostics.csv").read_bytes())
        assert digests[0] == digests[1]

    def test_two_d_binary_snapshots(self, tmp_path):
        out = tmp_path / "out"
        text = _sw_config(dim="2", nx="16", ny="8", ly="3.0", t_end="0.004", output_every="1")
        assert cmd_run(str(_write_config(tmp_path, text, out))) == EXIT_OK
        snapshot = read_binary_snapshot(out / "snapshot_000000.epdf")
        assert (snapshot.dim, snapshot.nx, snapshot.ny) == (2, 16, 8)
        assert snapshot.fields.shape == (3, 16, 8)
        assert np.mean(snapshot.fields[2]) == pytest.approx(1.0, abs=1e-12)
        frame = pd.read_csv(out / "diagnostics.csv")
        assert frame["momentum_y"].notna().all()

    def test_missing_config_file(self, tmp_path):
        assert cmd_run(str(tmp_path / "absent.cfg")) == EXIT_USAGE

    def test_invalid_config(self, tmp_path, capsys):
        path = _write_config(tmp_path, MINIMAL_EPDIFF + "gravity = 1\n", tmp_path / "out")
        assert cmd_run(str(path)) == EXIT_USAGE
        assert "gravity" in capsys.readouterr().err


class TestBinarySnapshot:
    """Test the EPDF reader's format checks"""

    def test_bad_magic(self, tmp_path):
        path = tmp_path / "bad.epdf"
        path.write_bytes(b"NOPE" + bytes(32))
        with pytest.raises(SnapshotFormatError):
            read_binary_snapshot(path)

    def test_truncated_payload(self, tmp_path):
        path = tmp_path / "short.epdf"
        header = np.array([2, 4, 4, 1], dtype="<i8").tobytes()
        path.write_bytes(SNAPSHOT_MAGIC + header + np.zeros(10, dtype="<f8").tobytes())
        with pytest.raises(SnapshotFormatError):
            read_binary_snapshot(path)

    def test_well_formed(self, tmp_path):
        path = tmp_path / "ok.epdf"
        data = np.arange(32, dtype="<f8")
        header = np.array([2, 4, 4, 2], dtype="<i8").tobytes()
        path.write_bytes(SNAPSHOT_MAGIC + header + data.tobytes())
        snapshot = read_binary_snapshot(path)
        assert snapshot.shape == (4, 4)
        assert snapshot.fields[1, 0, 0] == 16.0
        assert snapshot.fields[0, 1, 2] == 6.0


class TestGreensTableCommand:
    """Test `epdiffsw greens-table`"""

    def test_prints_csv(self, capsys):
        code = main(["greens-table", "--alpha", "1", "--nu", "1", "--dim", "1", "--rmax", "2", "--samples", "4"])
        assert code == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "r,G"
        assert len(lines) == 5
        r, value = (float(v) for v in lines[-1].split(","))
        assert r == 2.0
        assert value == pytest.approx(math.exp(-2.0) / 2**1.5, rel=1e-12)

    def test_invalid_alpha(self):
        args = ["greens-table", "--alpha", "-1", "--nu", "1", "--dim", "1", "--rmax", "2", "--samples", "4"]
        assert main(args) == EXIT_USAGE

    def test_stdout_is_only_csv_in_fresh_process(self):
        """Test import-time debug events stay on stderr"""
        env = {**os.environ, "LOG_LEVEL": "DEBUG"}
        completed = subprocess.run(
            [sys.executable, "-m", "epdiffsw", "greens-table", "--alpha", "1", "--nu", "1",
             "--dim", "1", "--rmax", "2", "--samples", "2"],
            capture_output=True,
            text=True,
            env=env,
            cwd=Path(__file__).resolve().parents[1],
            check=False,
        )
        assert completed.returncode == EXIT_OK
        assert completed.stdout.splitlines()[0] == "r,G"
        assert len(completed.stdout.splitlines()) == 3
        assert "formulation_registered" in completed.stderr


class TestLogging:
    """Test log output routing"""

    def test_stderr_resolved_per_logger(self, monkeypatch):
        """Test a stream closed after use does not break later logging"""
        configure_logging(level="INFO")
        try:
            first = io.StringIO()
            monkeypatch.setattr(sys, "stderr", first)
            structlog.get_logger().info("first_event")
            assert "first_event" in first.getvalue()
            first.close()

            second = io.StringIO()
            monkeypatch.setattr(sys, "stderr", second)
            structlog.get_logger().info("second_event")
            assert "second_event" in second.getvalue()
        finally:
            configure_logging(level="WARNING")

    def test_events_never_reach_stdout(self, capsys):
        configure_logging(level="DEBUG")
        try:
            structlog.get_logger().debug("routed_event")
        finally:
            configure_logging(level="WARNING")
        captured = capsys.readouterr()
        assert "routed_event" not in captured.out
        assert "routed_event" in captured.err


class TestVerifyCommand:
    """Test `epdiffsw verify`"""

    def test_suite_names(self):
        assert suite_names() == ["operators", "greens", "identities", "conservation"]

    def test_operators_suite_passes(self, capsys):
        assert cmd_verify("operators") == EXIT_OK
        out = capsys.readouterr().out
        assert "[PASS] operators.poisson_skew_adjoint_2d" in out
        assert "[FAIL]" not in out

    def test_identities_suite_reports_curl_check(self, capsys):
        assert main(["verify", "identities"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "identities.epdiff_curl_equals_advective: measured=" in out
        assert "(50 random states)" in out
        assert "[FAIL]" not in out

    @pytest.mark.slow
    def test_greens_suite_reports_constant_ratio(self, capsys):
        assert cmd_verify("greens") == EXIT_OK
        out = capsys.readouterr().out
        assert "greens.exponential_kernel_1d" in out
        assert "constant_ratio" in out

    @pytest.mark.slow
    def test_conservation_suite_passes(self):
        checks = run_suite("conservation")
        assert checks
        assert all(c.passed for c in checks), [format_check(c) for c in checks if not c.passed]

    def test_unknown_suite(self, capsys):
        assert main(["verify", "everything"]) == EXIT_USAGE
        assert cmd_verify("everything") == EXIT_USAGE
        with pytest.raises(UnknownSuiteError):
            run_suite("everything")

    def test_no_command_is_usage_error(self):
        assert main([]) == EXIT_USAGE
