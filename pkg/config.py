"""
Configuration management for the Lambda-atom simulator
Handles environment variables, output paths and numerical defaults
"""
import logging
import math
import os
from pathlib import Path

from dotenv import load_dotenv

logger = logging.getLogger('lambda_atom.config')

ENV_PREFIX = "LAMBDA_ATOM_"


def _env(name, default, cast, problems):
    raw = os.getenv(ENV_PREFIX + name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return cast(raw.strip())
    except ValueError:
        problems.append(f"{ENV_PREFIX}{name}={raw!r} is not a valid {cast.__name__}")
        return default


class Config:
    """Process settings with environment variable support"""

    # Base paths
    BASE_DIR = Path(__file__).resolve().parent

    PARSE_PROBLEMS = []

    # Numerical defaults
    N_MAX = _env("N_MAX", 40, int, PARSE_PROBLEMS)
    M_PTS = _env("M_PTS", 128, int, PARSE_PROBLEMS)
    THETA0 = _env("THETA0", -math.pi, float, PARSE_PROBLEMS)
    DETUNING = _env("DETUNING", 5.0, float, PARSE_PROBLEMS)
    TRUNC_TOL = _env("TRUNC_TOL", 1e-10, float, PARSE_PROBLEMS)
    ORACLE_DT = _env("ORACLE_DT", 1e-3, float, PARSE_PROBLEMS)

    # Runtime settings
    WORKERS = _env("WORKERS", 4, int, PARSE_PROBLEMS)
    OUTPUT_DIR = Path(_env("OUTPUT_DIR", "output", str, PARSE_PROBLEMS))
    LOG_LEVEL = _env("LOG_LEVEL", "INFO", str, PARSE_PROBLEMS).upper()

    @classmethod
    def reload(cls):
        """Re-read every setting from the current environment"""
        problems = []
        cls.N_MAX = _env("N_MAX", 40, int, problems)
        cls.M_PTS = _env("M_PTS", 128, int, problems)
        cls.THETA0 = _env("THETA0", -math.pi, float, problems)
        cls.DETUNING = _env("DETUNING", 5.0, float, problems)
        cls.TRUNC_TOL = _env("TRUNC_TOL", 1e-10, float, problems)
        cls.ORACLE_DT = _env("ORACLE_DT", 1e-3, float, problems)
        cls.WORKERS = _env("WORKERS", 4, int, problems)
        cls.OUTPUT_DIR = Path(_env("OUTPUT_DIR", "output", str, problems))
        cls.LOG_LEVEL = _env("LOG_LEVEL", "INFO", str, problems).upper()
        cls.PARSE_PROBLEMS = problems

    @classmethod
    def validate_settings(cls):
        """Return a list of problems; empty when every setting is usable"""
        problems = list(cls.PARSE_PROBLEMS)
        if cls.N_MAX < 1:
            problems.append(f"N_MAX must be >= 1 (got {cls.N_MAX})")
        if cls.M_PTS < 2:
            problems.append(f"M_PTS must be >= 2 (got {cls.M_PTS})")
        if cls.WORKERS < 1:
            problems.append(f"WORKERS must be >= 1 (got {cls.WORKERS})")
        if not 0 < cls.TRUNC_TOL <= 1e-3:
            problems.append(f"TRUNC_TOL must lie in (0, 1e-3] (got {cls.TRUNC_TOL})")
        if not cls.ORACLE_DT > 0:
            problems.append(f"ORACLE_DT must be > 0 (got {cls.ORACLE_DT})")
        if not math.isfinite(cls.THETA0) or not math.isfinite(cls.DETUNING):
            problems.append("THETA0 and DETUNING must be finite")
        if cls.LOG_LEVEL not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            problems.append(f"LOG_LEVEL '{cls.LOG_LEVEL}' is not a logging level")
        return problems

    @classmethod
    def validate_paths(cls):
        """Create the output directory if it doesn't exist"""
        cls.OUTPUT_DIR.mkdir(parents=True, exist_ok=True)

    @classmethod
    def initialize(cls, env_file=None):
        """Load .env, re-read the environment and validate"""
        load_dotenv(env_file, override=False)
        cls.reload()
        problems = cls.validate_settings()
        for problem in problems:
            logger.warning(f"Invalid setting: {problem}")
        if not problems:
            logger.debug(f"Settings: n_max={cls.N_MAX}, m_pts={cls.M_PTS}, theta0={cls.THETA0}, "
                         f"detuning={cls.DETUNING}, workers={cls.WORKERS}, "
                         f"output_dir={cls.OUTPUT_DIR}, trunc_tol={cls.TRUNC_TOL}, "
                         f"oracle_dt={cls.ORACLE_DT}")
        return problems

    @classmethod
    def get_env_example(cls):
        """Generate example .env content"""
        return """# Lambda-atom simulator settings

# Numerics
LAMBDA_ATOM_N_MAX=40
LAMBDA_ATOM_M_PTS=128
LAMBDA_ATOM_THETA0=-3.141592653589793
LAMBDA_ATOM_DETUNING=5.0
LAMBDA_ATOM_TRUNC_TOL=1e-10
LAMBDA_ATOM_ORACLE_DT=1e-3

# Runtime
LAMBDA_ATOM_WORKERS=4
LAMBDA_ATOM_OUTPUT_DIR=output
LAMBDA_ATOM_LOG_LEVEL=INFO
"""
