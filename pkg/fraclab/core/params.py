"""Problem configuration shared by every module."""

import math
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class Params(BaseModel):
    """
    Exponent, domain and resolution of an experiment.

    alpha = 1 selects the dedicated alpha = 1 code paths (Riccati closure,
    Hilbert-only velocity); beta = alpha - 1 may be negative.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    alpha: float = Field(0.5, gt=0.0, lt=2.0)
    domain: Literal["torus", "line"] = "torus"
    half_width: float = Field(8.0, gt=0.0)          # L of the line window [-L, L]
    n_points: int = 256
    epsilon: float = Field(0.01, gt=0.0)            # Mellin regularization
    holder_bump: float = Field(0.05, gt=0.0)        # the "+" in C^{beta+}
    dt_safety: float = Field(0.2, gt=0.0, lt=1.0)
    tol: float = Field(1e-10, gt=0.0)

    @field_validator("n_points")
    @classmethod
    def _power_of_two(cls, value: int) -> int:
        if value < 16 or value & (value - 1):
            raise ValueError(f"n_points must be a power of two >= 16, got {value}")
        return value

    @model_validator(mode="after")
    def _epsilon_below_bump(self) -> "Params":
        if self.epsilon >= self.holder_bump:
            raise ValueError(
                f"epsilon ({self.epsilon}) must lie in (0, holder_bump={self.holder_bump})"
            )
        return self

    @property
    def beta(self) -> float:
        return self.alpha - 1.0

    @property
    def period(self) -> float:
        return 2.0 * math.pi if self.domain == "torus" else 2.0 * self.half_width

    @property
    def is_alpha_one(self) -> bool:
        return self.alpha == 1.0
