"""
Experiment configuration files.

A configuration is one JSON object validated by ExperimentConfig; unknown
keys are rejected at every level and every error is reported with the line
of the offending key.
"""

import json
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from fraclab.core.errors import ConfigError
from fraclab.core.params import Params
from fraclab.evolution.state import StepPolicy
from fraclab.tools.presets import PRESETS
from fraclab.utils.helpers import find_key_line
from fraclab.utils.xlogger import logger

CommandName = Literal["selftest", "mellin", "inequalities", "evolve", "blowup-scan", "report"]

EXPONENT_GRID = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9]


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class InitialData(_Strict):
    preset: Optional[str] = "one_minus_cos"
    amplitude: float = 1.0
    coefficients: Optional[List[float]] = None      # cosine series a_0 + sum a_n cos(n x)
    two_field: bool = False                         # evolve (u, G) with G0 = 0

    @model_validator(mode="after")
    def _known_preset(self) -> "InitialData":
        if self.coefficients is None and self.preset not in PRESETS:
            raise ValueError(f"unknown preset {self.preset!r}; choose one of {sorted(PRESETS)}")
        if self.coefficients is not None and len(self.coefficients) == 0:
            raise ValueError("coefficients must not be empty")
        return self

    @property
    def domain(self) -> str:
        return "torus" if self.coefficients is not None else PRESETS[self.preset].domain


class SweepConfig(_Strict):
    alphas: List[float] = Field(min_length=1)
    amplitudes: List[float] = Field(min_length=1)


class MellinConfig(_Strict):
    exponents: List[float] = EXPONENT_GRID
    lambda_half_width: float = Field(50.0, gt=0.0)
    n_lambda: int = Field(201, ge=3)
    decay_alphas: List[float] = [0.3, 0.5, 0.7]
    n_decay: int = Field(60, ge=40)
    epsilon: float = Field(0.01, gt=0.0)
    golden: bool = True


class InequalityConfig(_Strict):
    betas: List[float] = [0.25, 0.5, 0.75]
    family_size: int = Field(20, ge=1)
    c1_alphas: List[float] = EXPONENT_GRID
    bound_alphas: List[float] = [0.5]
    epsilon_holder: float = Field(0.25, gt=0.0)


class ReportConfig(_Strict):
    input_dir: Optional[str] = None
    log_scale: bool = True


class ExperimentConfig(_Strict):
    command: CommandName
    params: Params = Params()
    initial_data: InitialData = InitialData()
    policy: StepPolicy = StepPolicy()
    sweep: Optional[SweepConfig] = None
    output_dir: Optional[str] = None
    seed: int = 0
    ode_check: bool = True                          # differential-inequality residuals after evolve
    mellin: MellinConfig = MellinConfig()
    inequalities: InequalityConfig = InequalityConfig()
    report: ReportConfig = ReportConfig()

    @model_validator(mode="after")
    def _domain_matches(self) -> "ExperimentConfig":
        if self.command in ("evolve", "blowup-scan") and self.initial_data.domain != self.params.domain:
            raise ValueError(f"initial data lives on the {self.initial_data.domain}, "
                             f"params.domain is {self.params.domain}")
        if self.command == "blowup-scan" and self.sweep is None:
            raise ValueError("blowup-scan needs a sweep")
        return self


def _error_key(loc) -> Optional[str]:
    keys = [str(part) for part in loc if isinstance(part, str)]
    return keys[-1] if keys else None


def parse_config(text: str, source: str = "<config>") -> ExperimentConfig:
    """
    Raises:
        ConfigError: malformed JSON or a schema violation, with key and line
    """
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"{source}: invalid JSON: {e.msg}", line=e.lineno) from e
    try:
        return ExperimentConfig.model_validate(payload)
    except ValidationError as e:
        first = e.errors()[0]
        key = _error_key(first["loc"])
        if first["type"] == "extra_forbidden":
            message = f"unknown key '{key}'"
        else:
            where = ".".join(str(p) for p in first["loc"]) or "config"
            message = f"{where}: {first['msg']}"
        line = find_key_line(text, key) if key is not None else None
        logger.warning(f"Config rejected: {message}", data={"source": source, "line": line}, category="cli")
        raise ConfigError(f"{source}: {message}", key=key, line=line) from e


def load_config(path: str) -> ExperimentConfig:
    try:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise ConfigError(f"cannot read {path}: {e}") from e
    return parse_config(text, source=path)
