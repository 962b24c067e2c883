from pathlib import Path

import numpy as np
import pytest

from denguevax.cli import main

from test_config import TEMPLATE

REPO_CONFIG = Path(__file__).resolve().parent.parent / "configs" / "baseline.toml"


@pytest.fixture
def month_config_path(tmp_path):
    out = tmp_path / "out"
    text = TEMPLATE.replace('output_dir = "out"', f'output_dir = "{out}"')
    path = tmp_path / "scenario.toml"
    path.write_text(text)
    return path, out


class TestValidate:
    def test_shipped_config_passes(self, capsys):
        assert main(["validate", str(REPO_CONFIG)]) == 0
        assert "config OK" in capsys.readouterr().out

    def test_missing_file_fails(self, tmp_path, capsys):
        assert main(["validate", str(tmp_path / "nope.toml")]) == 1
        assert "config error" in capsys.readouterr().err

    def test_invalid_field_fails(self, tmp_path, capsys):
        bad = tmp_path / "bad.toml"
        bad.write_text(TEMPLATE.replace("sigma = 0.15", "sigma = 2.0"))
        assert main(["validate", str(bad)]) == 1
        assert "sigma" in capsys.readouterr().err


class TestSolve:
    def test_full_run_writes_outputs(self, month_config_path, capsys):
        path, out = month_config_path
        assert main(["solve", str(path)]) == 0
        stdout = capsys.readouterr().out
        assert "indirect" in stdout and "direct" in stdout
        assert (out / "summary.csv").exists()
        assert (out / "control_indirect.csv").exists()

    def test_out_flag_overrides_directory(self, month_config_path, tmp_path):
        path, out = month_config_path
        elsewhere = tmp_path / "elsewhere"
        assert main(["solve", str(path), "--out", str(elsewhere)]) == 0
        assert (elsewhere / "summary.csv").exists()
        assert not out.exists()

    def test_validation_failure_exits_one(self, tmp_path):
        bad = tmp_path / "bad.toml"
        bad.write_text(TEMPLATE.replace("mu_a = 0.25\n", ""))
        assert main(["solve", str(bad)]) == 1

    def test_solver_failure_exits_two(self, tmp_path, capsys):
        unstable = tmp_path / "unstable.toml"
        text = TEMPLATE.replace("h = 0.1", "h = 0.5").replace(
            'controls = ["optimal", "none", "full"]', 'controls = ["none"]'
        ).replace('method = "both"', 'method = "indirect"').replace(
            "n_intervals = 30", "n_intervals = 6"
        ).replace('output_dir = "out"', f'output_dir = "{tmp_path / "out"}"')
        unstable.write_text(text)
        with np.errstate(all="ignore"):
            assert main(["solve", str(unstable)]) == 2
        assert "ERROR" in capsys.readouterr().out


class TestGradcheck:
    def test_reports_small_error(self, month_config_path, capsys):
        path, _ = month_config_path
        assert main(["gradcheck", str(path)]) == 0
        stdout = capsys.readouterr().out
        assert "max relative error" in stdout

    def test_validation_failure_exits_one(self, tmp_path):
        assert main(["gradcheck", str(tmp_path / "nope.toml")]) == 1
