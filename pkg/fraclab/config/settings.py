"""
Global settings for FracLab.

Knobs are UPPER_CASE class attributes read once from the environment (and a
``.env`` file in the working directory); malformed values fall back to the
defaults. FRACLAB_HOME relocates the ``data`` tree.
"""

import os
from typing import Callable, TypeVar
from dotenv import load_dotenv

__XAPP_NAME__ = "FracLab"
__XAPP_PATH__ = os.getenv(
    "FRACLAB_HOME",
    os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
)

load_dotenv()

T = TypeVar("T")


def get_version() -> str:
    """VERSION file of a source checkout, else the installed distribution version."""
    try:
        with open(os.path.join(__XAPP_PATH__, "VERSION")) as f:
            return f.read().strip()
    except OSError:
        from importlib.metadata import version, PackageNotFoundError
        try:
            return version("fraclab")
        except PackageNotFoundError:
            return "0.0.0"


def _from_env(key: str, default: T, cast: Callable[[str], T]) -> T:
    value = os.getenv(key)
    if value is None:
        return default
    try:
        return cast(value)
    except (ValueError, TypeError):
        return default


def get_env_float(key: str, default: float) -> float:
    return _from_env(key, default, float)


def get_env_int(key: str, default: int) -> int:
    return _from_env(key, default, int)


def get_env_bool(key: str, default: bool) -> bool:
    return _from_env(key, default, lambda v: v.strip().lower() in ("true", "1", "yes", "on", "t"))


class Settings:
    """
    Global settings class containing all configuration parameters.
    Handles paths, quadrature tolerances, and runner defaults.
    """
    # Base path configuration
    XAPP_PATH = __XAPP_PATH__
    XAPP_NAME = __XAPP_NAME__
    XAPP_VERSION = get_version()

    # Data related paths
    DATA_PATH = os.path.join(XAPP_PATH, "data")
    LOGS_PATH = os.path.join(DATA_PATH, "logs")        # Application logs
    OUTPUT_PATH = os.path.join(DATA_PATH, "output")    # Default experiment output
    CONFIGS_PATH = os.path.join(DATA_PATH, "configs")  # Preset experiment configurations
    GOLDEN_PATH = os.path.join(DATA_PATH, "golden")    # Regression fixtures

    # Ensure all required directories exist
    for path in [DATA_PATH, LOGS_PATH, OUTPUT_PATH, GOLDEN_PATH]:
        os.makedirs(path, exist_ok=True)

    # Project level configuration
    PROJ_ENV = os.getenv("PROJ_ENV", "dev")  # Project environment

    # Quadrature configuration (QUADPACK through scipy.integrate.quad)
    QUAD_EPSABS = get_env_float("FRACLAB_QUAD_EPSABS", 1e-13)
    QUAD_EPSREL = get_env_float("FRACLAB_QUAD_EPSREL", 1e-11)
    QUAD_LIMIT = get_env_int("FRACLAB_QUAD_LIMIT", 400)    # Subintervals per call
    QUAD_LIMLST = get_env_int("FRACLAB_QUAD_LIMLST", 200)  # Cycles for Fourier integrals
    ORACLE_MAX_ERROR = get_env_float("FRACLAB_ORACLE_MAX_ERROR", 1e-6)  # Relative cap on reported abserr

    # Mellin configuration
    LAMBDA_MAX = get_env_float("FRACLAB_LAMBDA_MAX", 200.0)   # Truncation of lambda integrals
    EPS_LADDER = (1e-2, 5e-3, 2.5e-3)                          # Richardson ladder for A0

    # Hypothesis and monitor defaults
    HYPOTHESIS_TOL = get_env_float("FRACLAB_HYPOTHESIS_TOL", 1e-10)
    TAIL_THRESHOLD = get_env_float("FRACLAB_TAIL_THRESHOLD", 1e-6)   # Resolution-loss rule
    GROWTH_FACTOR = get_env_float("FRACLAB_GROWTH_FACTOR", 10.0)     # Blow-up detection
    FIT_R2_MIN = get_env_float("FRACLAB_FIT_R2_MIN", 0.99)

    # Runner configuration
    THREADS = get_env_int("FRACLAB_THREADS", min(4, os.cpu_count() or 1))

    # Logging configuration
    XLOGGER_LOG_VER = get_version()  # Log version
    XLOGGER_LOG_DIR = LOGS_PATH  # Log directory
    XLOGGER_LOG_FILENAME = "fraclab.log"  # Log file name
    XLOGGER_CONSOLE = get_env_bool("FRACLAB_LOG_CONSOLE", True)  # Console output enable
    XLOGGER_LEVEL = os.getenv("FRACLAB_LOG_LEVEL", "INFO").upper()  # Lowest level emitted

    def __str__(self):
        return f"Settings(XAPP_PATH={self.XAPP_PATH}, XAPP_NAME={self.XAPP_NAME}, XAPP_VERSION={self.XAPP_VERSION}, THREADS={self.THREADS})"

# Create global settings instance
settings = Settings()
