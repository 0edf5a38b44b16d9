"""Uniform periodic grids; the line is realized as a large torus."""

import math
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from fraclab.core.params import Params


class Grid(BaseModel):
    """
    Uniform nodes x_j = j h, j = 0..N-1, on a circle of length ``period``.

    ``signed_nodes`` maps the upper half to negative coordinates with integer
    arithmetic, so x_{N-j} = -x_j holds exactly.
    """

    model_config = ConfigDict(frozen=True)

    domain: Literal["torus", "line"] = "torus"
    period: float = Field(2.0 * math.pi, gt=0.0)
    n_points: int = 256

    @field_validator("n_points")
    @classmethod
    def _enough_points(cls, value: int) -> int:
        if value < 16 or value & (value - 1):
            raise ValueError(f"n_points must be a power of two >= 16, got {value}")
        return value

    @classmethod
    def from_params(cls, params: Params) -> "Grid":
        return cls(domain=params.domain, period=params.period, n_points=params.n_points)

    @classmethod
    def torus(cls, n_points: int = 256) -> "Grid":
        return cls(domain="torus", period=2.0 * math.pi, n_points=n_points)

    @classmethod
    def line(cls, n_points: int = 1024, half_width: float = 8.0) -> "Grid":
        return cls(domain="line", period=2.0 * half_width, n_points=n_points)

    @property
    def spacing(self) -> float:
        return self.period / self.n_points

    @property
    def half_width(self) -> float:
        return self.period / 2.0

    @property
    def nodes(self) -> np.ndarray:
        return self.spacing * np.arange(self.n_points)

    @property
    def signed_index(self) -> np.ndarray:
        j = np.arange(self.n_points)
        return np.where(j < self.n_points // 2, j, j - self.n_points)

    @property
    def signed_nodes(self) -> np.ndarray:
        return self.spacing * self.signed_index

    @property
    def mirror_index(self) -> np.ndarray:
        """Index of -x_j for every node j."""
        return (-np.arange(self.n_points)) % self.n_points

    @property
    def wavenumbers(self) -> np.ndarray:
        """Angular wavenumbers of the rfft coefficients (integers on the 2 pi torus)."""
        return 2.0 * math.pi * np.fft.rfftfreq(self.n_points, d=self.spacing)

    @property
    def n_modes(self) -> int:
        return self.n_points // 2 + 1

    @property
    def dealias_cutoff(self) -> int:
        """Largest rfft index kept by the two-thirds rule."""
        return self.n_points // 3
