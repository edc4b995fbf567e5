"""
CLI utilities for error handling, validation, and logging
"""
import functools
import logging
import math
import time
from pathlib import Path

from dotenv import dotenv_values
from marshmallow import Schema, ValidationError, fields, post_load, validate, validates_schema

from config import Config
from lambda_atom.errors import ConfigError, LambdaAtomError
from lambda_atom.models import COLUMNS, ModelConfig, Nonlinearity, SweepSpec
from lambda_atom.presets import canonical_name, resolve_preset

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger('lambda_atom.cli')

NONLINEARITIES = ["unit", "harmonious"]
# Keys a preset may be combined with
PRESET_COMPATIBLE = {"n_max", "include_free_phases"}


def set_log_level(level: str) -> None:
    logging.getLogger().setLevel(getattr(logging, level.upper(), logging.INFO))


class ModelConfigSchema(Schema):
    """Schema for the physical parameters of a custom configuration"""
    lambda1 = fields.Float(load_default=1.0, validate=validate.Range(min=0, min_inclusive=False))
    lambda2 = fields.Float(load_default=1.0, validate=validate.Range(min=0, min_inclusive=False))
    chi = fields.Float(load_default=0.0)
    omega1 = fields.Float(load_default=0.0)
    omega2 = fields.Float(load_default=None)
    omega3 = fields.Float(load_default=None)
    Omega1 = fields.Float(load_default=0.0)
    Omega2 = fields.Float(load_default=0.0)
    delta2 = fields.Float(load_default=None)
    delta3 = fields.Float(load_default=None)
    f1 = fields.Str(load_default="unit", validate=validate.OneOf(NONLINEARITIES))
    f2 = fields.Str(load_default="unit", validate=validate.OneOf(NONLINEARITIES))
    g1 = fields.Str(load_default="unit", validate=validate.OneOf(NONLINEARITIES))
    g2 = fields.Str(load_default="unit", validate=validate.OneOf(NONLINEARITIES))
    n_max = fields.Int(load_default=lambda: Config.N_MAX, validate=validate.Range(min=1))
    alpha1_re = fields.Float(load_default=0.0)
    alpha1_im = fields.Float(load_default=0.0)
    alpha2_re = fields.Float(load_default=0.0)
    alpha2_im = fields.Float(load_default=0.0)
    include_free_phases = fields.Bool(load_default=True)

    @validates_schema
    def check_level_frequencies(self, data, **kwargs):
        for level in ("2", "3"):
            if data.get(f"delta{level}") is not None and data.get(f"omega{level}") is not None:
                raise ValidationError(f"Give either omega{level} or delta{level}, not both",
                                      f"delta{level}")

    @post_load
    def make_config(self, data, **kwargs):
        omega1 = data["omega1"]
        omega2 = data["omega2"]
        omega3 = data["omega3"]
        # Detunings fix the upper level frequencies relative to omega1
        if data["delta2"] is not None or omega2 is None:
            omega2 = (data["delta2"] or 0.0) + omega1 - data["Omega1"]
        if data["delta3"] is not None or omega3 is None:
            omega3 = (data["delta3"] or 0.0) + omega1 - data["Omega2"]
        return ModelConfig(
            lambda1=data["lambda1"], lambda2=data["lambda2"], chi=data["chi"],
            omega1=omega1, omega2=omega2, omega3=omega3,
            Omega1=data["Omega1"], Omega2=data["Omega2"],
            f1=Nonlinearity.from_name(data["f1"]), f2=Nonlinearity.from_name(data["f2"]),
            g1=Nonlinearity.from_name(data["g1"]), g2=Nonlinearity.from_name(data["g2"]),
            n_max=data["n_max"],
            alpha1=complex(data["alpha1_re"], data["alpha1_im"]),
            alpha2=complex(data["alpha2_re"], data["alpha2_im"]),
            include_free_phases=data["include_free_phases"],
        )


class SweepSpecSchema(Schema):
    """Schema for sweep settings shared by the CLI and config files"""
    preset = fields.Str(load_default=None)
    tau_start = fields.Float(load_default=0.0, validate=validate.Range(min=0))
    tau_end = fields.Float(load_default=50.0)
    tau_steps = fields.Int(load_default=500, validate=validate.Range(min=2))
    observables = fields.Str(load_default=None)
    out = fields.Str(load_default=None)
    verify = fields.Bool(load_default=False)
    include_free_phases = fields.Bool(load_default=None)
    m_pts = fields.Int(load_default=lambda: Config.M_PTS, validate=validate.Range(min=2))
    theta0 = fields.Float(load_default=lambda: Config.THETA0)
    detuning = fields.Float(load_default=lambda: Config.DETUNING)
    mode = fields.Int(load_default=1, validate=validate.OneOf([1, 2]))
    phase_snapshot = fields.Float(load_default=None, validate=validate.Range(min=0))
    workers = fields.Int(load_default=lambda: Config.WORKERS, validate=validate.Range(min=1))
    n_max = fields.Int(load_default=None, validate=validate.Range(min=1))

    @validates_schema
    def check_window(self, data, **kwargs):
        if not data["tau_end"] > data["tau_start"]:
            raise ValidationError("tau_end must be greater than tau_start", "tau_end")
        for name in ("theta0", "detuning"):
            if not math.isfinite(data[name]):
                raise ValidationError("must be finite", name)


def load_config_file(path) -> dict:
    """Parse a flat key=value file (one key per line, # comments, UTF-8)"""
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"Config file not found: {path}", {"path": str(path)})
    try:
        values = dotenv_values(path, encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise ConfigError(f"Could not read config file {path}: {e}", {"path": str(path)})
    missing = [key for key, value in values.items() if value is None]
    if missing:
        raise ConfigError("Config lines without a value", {"keys": missing})
    return {key.strip(): value.strip() for key, value in values.items()}


def _load(schema: Schema, data: dict):
    try:
        return schema.load(data)
    except ValidationError as e:
        raise ConfigError("Invalid configuration values", e.messages)


def build_sweep_spec(file_values: dict, cli_overrides: dict) -> SweepSpec:
    """CLI flags (non-None) override file values; the merge is validated as a whole"""
    merged = dict(file_values or {})
    merged.update({k: v for k, v in (cli_overrides or {}).items() if v is not None})

    model_keys = set(ModelConfigSchema().fields) - {"n_max", "include_free_phases"}
    sweep_keys = set(SweepSpecSchema().fields)
    unknown = sorted(set(merged) - model_keys - sweep_keys)
    if unknown:
        raise ConfigError("Unknown configuration keys", {"keys": unknown})

    sweep = _load(SweepSpecSchema(), {k: v for k, v in merged.items() if k in sweep_keys})
    model_part = {k: v for k, v in merged.items() if k in model_keys}

    if sweep["preset"] is not None:
        if model_part:
            raise ConfigError("A preset cannot be combined with explicit model parameters",
                              {"keys": sorted(model_part)})
        preset = canonical_name(sweep["preset"])
        cfg = resolve_preset(preset, detuning=sweep["detuning"],
                             n_max=sweep["n_max"] or Config.N_MAX)
    elif model_part:
        preset = None
        if sweep["n_max"] is not None:
            model_part["n_max"] = sweep["n_max"]
        cfg = _load(ModelConfigSchema(), model_part)
    else:
        raise ConfigError("Either a preset or explicit model parameters are required")

    if sweep["include_free_phases"] is not None:
        cfg = cfg.with_overrides(include_free_phases=sweep["include_free_phases"])

    if sweep["observables"]:
        observables = tuple(name.strip() for name in sweep["observables"].split(",") if name.strip())
    else:
        observables = COLUMNS

    out = Path(sweep["out"]) if sweep["out"] else Config.OUTPUT_DIR / f"{preset or 'custom'}.csv"

    return SweepSpec(
        config=cfg, preset=preset,
        tau_start=sweep["tau_start"], tau_end=sweep["tau_end"], tau_steps=sweep["tau_steps"],
        observables=observables, out=out, verify=sweep["verify"],
        m_pts=sweep["m_pts"], theta0=sweep["theta0"], mode=sweep["mode"],
        phase_snapshot=sweep["phase_snapshot"], workers=sweep["workers"],
        trunc_tol=Config.TRUNC_TOL,
    )


def handle_errors(f):
    """Decorator mapping exceptions to process exit codes"""
    @functools.wraps(f)
    def decorated_function(*args, **kwargs):
        try:
            result = f(*args, **kwargs)
            return 0 if result is None else result
        except ConfigError as e:
            logger.warning(f"Configuration error: {e.to_dict()}")
            return e.exit_code
        except ValidationError as e:
            logger.warning(f"Validation error: {e.messages}")
            return ConfigError.exit_code
        except LambdaAtomError as e:
            logger.error(f"Run failed: {e.to_dict()}")
            return e.exit_code
        except Exception as e:
            logger.error(f"Unexpected error: {str(e)}", exc_info=True)
            return 1
    return decorated_function


def log_run(f):
    """Decorator to log command invocations and their duration"""
    @functools.wraps(f)
    def decorated_function(*args, **kwargs):
        start_time = time.time()
        logger.info(f"Command: {f.__name__}")

        result = f(*args, **kwargs)

        duration = time.time() - start_time
        logger.info(f"Finished {f.__name__} in {duration:.2f}s")
        return result
    return decorated_function
