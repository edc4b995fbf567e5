"""
Unit tests for CLI utilities: config files, sweep validation and error mapping
"""
import logging
import math
from pathlib import Path

import pytest
from marshmallow import ValidationError

from cli_utils import build_sweep_spec, handle_errors, load_config_file, log_run
from config import Config
from lambda_atom.errors import (
    ConfigError, NumericalError, OutputError, ResolutionError,
)
from lambda_atom.models import COLUMNS, NonlinearityKind
from tests.utils.test_helpers import write_config


class TestLoadConfigFile:
    """Test the key=value config file reader"""

    def test_comments_and_blank_lines(self, tmp_path):
        """Test comments are skipped and values are stripped"""
        path = tmp_path / "run.cfg"
        path.write_text("# custom run\n\nchi = 0.4\nf1=harmonious  # inline\ntau_end=20\n",
                        encoding="utf-8")
        values = load_config_file(path)
        assert values == {"chi": "0.4", "f1": "harmonious", "tau_end": "20"}

    def test_missing_file(self, tmp_path):
        """Test ConfigError for a missing file"""
        with pytest.raises(ConfigError) as exc_info:
            load_config_file(tmp_path / "absent.cfg")
        assert exc_info.value.exit_code == 2

    def test_line_without_value(self, tmp_path):
        """Test ConfigError for a bare key"""
        path = tmp_path / "run.cfg"
        path.write_text("chi\n", encoding="utf-8")
        with pytest.raises(ConfigError):
            load_config_file(path)


class TestBuildSweepSpec:
    """Test merging and validating file values with CLI overrides"""

    def test_preset(self):
        """Test a preset gives its config and the default output path"""
        spec = build_sweep_spec({}, {"preset": "b-down"})
        assert spec.preset == "b-down"
        assert spec.config.chi == 0.4
        assert spec.config.f1.kind is NonlinearityKind.HARMONIOUS
        assert spec.config.n_max == Config.N_MAX
        assert spec.out == Config.OUTPUT_DIR / "b-down.csv"
        assert spec.observables == COLUMNS
        assert spec.trunc_tol == Config.TRUNC_TOL

    def test_prefixed_alias(self):
        """Test a 'fig'-prefixed alias resolves to the preset"""
        assert build_sweep_spec({"preset": "fig1a-down"}, {}).preset == "a-down"

    def test_unknown_preset(self):
        with pytest.raises(ConfigError):
            build_sweep_spec({}, {"preset": "d-up"})

    def test_detuning_applies_to_family_c(self):
        """Test --detuning moves the upper levels of family c only"""
        spec = build_sweep_spec({}, {"preset": "c-up", "detuning": 2.0})
        assert spec.config.delta2 == pytest.approx(2.0)
        assert spec.config.delta3 == pytest.approx(2.0)
        resonant = build_sweep_spec({}, {"preset": "a-up", "detuning": 2.0})
        assert resonant.config.delta2 == 0.0

    def test_cli_overrides_file(self, tmp_path):
        """Test CLI flags win and None flags are ignored"""
        values = load_config_file(write_config(tmp_path / "run.cfg", {
            "preset": "a-down", "tau_end": "20", "tau_steps": "41", "m_pts": "64",
        }))
        spec = build_sweep_spec(values, {"tau_end": 10.0, "tau_steps": None, "out": "x.csv"})
        assert spec.tau_end == 10.0
        assert spec.tau_steps == 41
        assert spec.m_pts == 64
        assert spec.out == Path("x.csv")

    def test_custom_model(self):
        """Test explicit parameters build a custom config"""
        spec = build_sweep_spec({
            "lambda2": "0.5", "chi": "0.2", "f2": "harmonious",
            "alpha1_re": "1.5", "alpha2_im": "-0.5", "Omega1": "0.3",
            "delta2": "1.0", "n_max": "12",
        }, {})
        cfg = spec.config
        assert spec.preset is None
        assert spec.out == Config.OUTPUT_DIR / "custom.csv"
        assert cfg.lambda2 == 0.5
        assert cfg.f2.kind is NonlinearityKind.HARMONIOUS
        assert cfg.alpha1 == complex(1.5, 0.0)
        assert cfg.alpha2 == complex(0.0, -0.5)
        assert cfg.n_max == 12
        assert cfg.delta2 == pytest.approx(1.0)
        assert cfg.delta3 == pytest.approx(0.0)

    def test_custom_level_frequencies(self):
        """Test omega2 and omega3 are used as given"""
        cfg = build_sweep_spec({"omega1": "0.1", "omega2": "0.7", "omega3": "0.4"}, {}).config
        assert (cfg.omega1, cfg.omega2, cfg.omega3) == (0.1, 0.7, 0.4)

    def test_delta_and_omega_conflict(self):
        with pytest.raises(ConfigError):
            build_sweep_spec({"omega2": "0.7", "delta2": "1.0"}, {})

    def test_no_free_phases(self):
        """Test include_free_phases reaches the model config"""
        spec = build_sweep_spec({"chi": "0.1"}, {"include_free_phases": False})
        assert spec.config.include_free_phases is False

    def test_unknown_key(self):
        with pytest.raises(ConfigError) as exc_info:
            build_sweep_spec({"preset": "a-up", "colour": "blue"}, {})
        assert exc_info.value.details == {"keys": ["colour"]}

    def test_preset_with_model_keys(self):
        """Test a preset cannot be mixed with physical parameters"""
        with pytest.raises(ConfigError):
            build_sweep_spec({"preset": "a-up", "chi": "0.3"}, {})

    def test_nothing_to_run(self):
        with pytest.raises(ConfigError):
            build_sweep_spec({}, {"tau_end": 5.0})

    @pytest.mark.parametrize("overrides", [
        {"tau_steps": 1},
        {"tau_start": 5.0, "tau_end": 5.0},
        {"tau_start": -1.0},
        {"mode": 3},
        {"m_pts": 1},
        {"workers": 0},
        {"theta0": math.nan},
    ])
    def test_bad_values(self, overrides):
        """Test out-of-range sweep settings are refused"""
        with pytest.raises(ConfigError):
            build_sweep_spec({"preset": "a-up"}, overrides)

    def test_bad_lambda(self):
        """Test coupling constants must be positive"""
        with pytest.raises(ConfigError) as exc_info:
            build_sweep_spec({"lambda1": "0"}, {})
        assert "lambda1" in exc_info.value.details

    def test_observables(self):
        """Test the column list keeps schema order with tau first"""
        spec = build_sweep_spec({"preset": "a-up"}, {"observables": "Q1, S_theta"})
        assert spec.observables == ("Q1", "S_theta")
        assert spec.columns == ("tau", "S_theta", "Q1")

    def test_unknown_observable(self):
        with pytest.raises(ConfigError):
            build_sweep_spec({"preset": "a-up"}, {"observables": "Q1,Q3"})


class TestHandleErrors:
    """Test the exception to exit code mapping"""

    @pytest.mark.parametrize("error, code", [
        (ConfigError("bad"), 2),
        (ValidationError({"tau_end": ["bad"]}), 2),
        (ResolutionError("coarse"), 3),
        (NumericalError("diverged"), 3),
        (OutputError("disk"), 4),
        (RuntimeError("boom"), 1),
    ])
    def test_exit_codes(self, error, code):
        @handle_errors
        def command():
            raise error

        assert command() == code

    def test_success(self):
        """Test None becomes 0 and other results pass through"""
        assert handle_errors(lambda: None)() == 0
        assert handle_errors(lambda: 5)() == 5

    def test_unexpected_error_is_logged(self, caplog):
        @handle_errors
        def command():
            raise RuntimeError("boom")

        with caplog.at_level(logging.ERROR, logger="lambda_atom.cli"):
            command()
        assert "Unexpected error: boom" in caplog.text

    def test_error_details_are_logged(self, caplog):
        """Test the structured error record reaches the log"""
        @handle_errors
        def command():
            raise ResolutionError("coarse", {"m_pts": 16, "required": 42})

        with caplog.at_level(logging.ERROR, logger="lambda_atom.cli"):
            assert command() == 3
        assert "'type': 'ResolutionError'" in caplog.text
        assert "'required': 42" in caplog.text

    def test_config_error_is_logged_as_warning(self, caplog):
        @handle_errors
        def command():
            raise ConfigError("Unknown preset 'z-up'")

        with caplog.at_level(logging.WARNING, logger="lambda_atom.cli"):
            assert command() == 2
        assert "'error': \"Unknown preset 'z-up'\"" in caplog.text


class TestLogRun:
    """Test command logging"""

    def test_logs_start_and_finish(self, caplog):
        @log_run
        def sweep_command():
            return 0

        with caplog.at_level(logging.INFO, logger="lambda_atom.cli"):
            assert sweep_command() == 0
        assert "Command: sweep_command" in caplog.text
        assert "Finished sweep_command in" in caplog.text
