"""
End-to-end tests for the command-line tool
"""
import csv
import json

import pytest

import cli
from config import Config
from lambda_atom.presets import PRESET_NAMES
from tests.utils.test_helpers import write_config


@pytest.fixture(autouse=True)
def isolated_settings(clean_env, tmp_path):
    """Run every command against an empty environment and a scratch output directory"""
    saved = {name: getattr(Config, name) for name in ("OUTPUT_DIR", "LOG_LEVEL", "N_MAX", "M_PTS")}
    clean_env.setenv("LAMBDA_ATOM_OUTPUT_DIR", str(tmp_path / "output"))
    yield
    for name, value in saved.items():
        setattr(Config, name, value)


def run(*argv):
    return cli.main(["--env-file", "/dev/null", *argv])


@pytest.mark.e2e
class TestCommands:
    """Test the sweep, presets and verify commands"""

    def test_presets(self, capsys):
        assert run("presets") == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert [line.split()[0] for line in lines] == list(PRESET_NAMES)

    def test_sweep_preset(self, tmp_path, capsys):
        out = tmp_path / "a-up.csv"
        code = run("sweep", "--preset", "a-up", "--tau-end", "2", "--tau-steps", "3", "--out", str(out))
        assert code == 0
        assert f"Wrote 3 rows to {out}" in capsys.readouterr().out
        with open(out, newline="", encoding="utf-8") as f:
            assert len(list(csv.reader(f))) == 4

    def test_default_output_path(self, tmp_path):
        """Test the output lands in LAMBDA_ATOM_OUTPUT_DIR"""
        assert run("sweep", "--preset", "c-down", "--tau-end", "1", "--tau-steps", "2") == 0
        assert (tmp_path / "output" / "c-down.csv").is_file()

    def test_sweep_config_file(self, tmp_path):
        config_path = write_config(tmp_path / "run.cfg", {
            "chi": "0.2", "g1": "harmonious", "g2": "harmonious",
            "alpha1_re": "1.0", "alpha2_re": "0.5", "n_max": "15",
            "tau_end": "2", "tau_steps": "3", "m_pts": "64",
            "out": str(tmp_path / "custom.csv"),
        })
        assert run("sweep", "--config", str(config_path), "--observables", "Q1,I0") == 0
        with open(tmp_path / "custom.csv", newline="", encoding="utf-8") as f:
            rows = list(csv.reader(f))
        assert rows[0] == ["tau", "Q1", "I0"]
        assert len(rows) == 4

    def test_verify(self, capsys):
        assert run("verify", "--preset", "a-down") == 0
        report = json.loads(capsys.readouterr().out)
        assert report["passed"] is True
        assert report["max_deviation"] < 1e-6
        assert len(report["taus"]) == 10


@pytest.mark.e2e
class TestExitCodes:
    """Test failures map to the documented exit codes"""

    def test_unknown_preset(self, tmp_path):
        assert run("sweep", "--preset", "z-up", "--out", str(tmp_path / "x.csv")) == 2

    def test_missing_config_file(self, tmp_path):
        assert run("sweep", "--config", str(tmp_path / "absent.cfg")) == 2

    def test_bad_tau_window(self, tmp_path):
        assert run("sweep", "--preset", "a-up", "--tau-start", "3", "--tau-end", "1") == 2

    def test_coarse_mesh(self, tmp_path):
        code = run("sweep", "--preset", "a-up", "--tau-end", "1", "--tau-steps", "2",
                   "--m-pts", "16", "--out", str(tmp_path / "x.csv"))
        assert code == 3

    def test_truncation_too_small(self, tmp_path):
        code = run("sweep", "--preset", "a-up", "--tau-end", "1", "--tau-steps", "2",
                   "--n-max", "10", "--m-pts", "32", "--out", str(tmp_path / "x.csv"))
        assert code == 3

    def test_unwritable_output(self, tmp_path):
        code = run("sweep", "--preset", "a-up", "--tau-end", "1", "--tau-steps", "2",
                   "--out", str(tmp_path))
        assert code == 4

    def test_invalid_setting(self, clean_env):
        clean_env.setenv("LAMBDA_ATOM_M_PTS", "1")
        assert run("presets") == 2
