"""Real fields sampled on a grid together with their rfft coefficients."""

from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from fraclab.core.grid import Grid
from fraclab.core.profiles import Profile

Parity = Literal["even", "odd", "none"]

PARITY_TOL = 1e-10


def detect_parity(grid: Grid, values: np.ndarray, tol: float = PARITY_TOL) -> Parity:
    """Parity of node values under x -> -x, relative to max(1, |u|_inf)."""
    mirrored = values[grid.mirror_index]
    scale = max(1.0, float(np.max(np.abs(values)))) if values.size else 1.0
    if np.max(np.abs(values - mirrored)) <= tol * scale:
        return "even"
    if np.max(np.abs(values + mirrored)) <= tol * scale:
        return "odd"
    return "none"


class Field(BaseModel):
    """
    Immutable pair (values, coeffs) with coeffs = rfft(values) / N.

    Coefficient index n corresponds to angular wavenumber ``grid.wavenumbers[n]``.
    A Profile, when attached, is the exact function the samples came from.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    grid: Grid
    values: np.ndarray
    coeffs: np.ndarray
    parity: Parity = "none"
    profile: Optional[Profile] = None

    @model_validator(mode="after")
    def _check_shapes(self) -> "Field":
        if self.values.shape != (self.grid.n_points,):
            raise ValueError(f"values must have shape ({self.grid.n_points},), got {self.values.shape}")
        if self.coeffs.shape != (self.grid.n_modes,):
            raise ValueError(f"coeffs must have shape ({self.grid.n_modes},), got {self.coeffs.shape}")
        self.values.setflags(write=False)
        self.coeffs.setflags(write=False)
        return self

    @classmethod
    def from_values(cls, grid: Grid, values, profile: Optional[Profile] = None) -> "Field":
        values = np.array(values, dtype=float)
        coeffs = np.fft.rfft(values, norm="forward")
        return cls(grid=grid, values=values, coeffs=coeffs,
                   parity=detect_parity(grid, values), profile=profile)

    @classmethod
    def from_coeffs(cls, grid: Grid, coeffs) -> "Field":
        coeffs = np.array(coeffs, dtype=complex)
        values = np.fft.irfft(coeffs, n=grid.n_points, norm="forward")
        return cls(grid=grid, values=values, coeffs=coeffs, parity=detect_parity(grid, values))

    @classmethod
    def from_profile(cls, grid: Grid, profile: Profile) -> "Field":
        return cls.from_values(grid, profile(grid.signed_nodes), profile=profile)

    @classmethod
    def zeros(cls, grid: Grid) -> "Field":
        return cls.from_values(grid, np.zeros(grid.n_points))

    @property
    def mean(self) -> float:
        return float(self.coeffs[0].real)

    @property
    def mass(self) -> float:
        return self.mean * self.grid.period

    @property
    def linf(self) -> float:
        return float(np.max(np.abs(self.values)))

    @property
    def at_origin(self) -> float:
        return float(self.values[0])

    def evaluate(self, x) -> np.ndarray:
        """
        Point values at arbitrary x: the attached profile when present,
        the trigonometric interpolant otherwise.
        """
        x = np.asarray(x, dtype=float)
        if self.profile is not None:
            return self.profile(x)
        return self.interpolate(x)

    def interpolate(self, x) -> np.ndarray:
        """Real trigonometric interpolant of the samples."""
        x = np.asarray(x, dtype=float)
        weights = np.full(self.grid.n_modes, 2.0)
        weights[0] = 1.0
        weights[-1] = 1.0
        phase = np.exp(1j * np.multiply.outer(x, self.grid.wavenumbers))
        return np.real(phase @ (weights * self.coeffs))

    def with_values(self, values) -> "Field":
        return Field.from_values(self.grid, values)

    def roundtrip_error(self) -> float:
        """Relative deviation of irfft(coeffs) from values."""
        back = np.fft.irfft(self.coeffs, n=self.grid.n_points, norm="forward")
        scale = max(self.linf, np.finfo(float).tiny)
        return float(np.max(np.abs(back - self.values)) / scale)
