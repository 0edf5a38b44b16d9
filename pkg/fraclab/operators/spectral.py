"""
Nonlocal operators as Fourier multipliers on rfft coefficients.

Symbols are evaluated at the angular wavenumbers of the grid, so on the
2 pi torus they are the integer-mode symbols -i sign(n), |n|^s and
-i sign(n) |n|^s. Mode 0 is always set to zero. Odd symbols also zero the
Nyquist mode, whose conjugate partner is itself.
"""

from typing import Callable

import numpy as np
from pydantic import BaseModel, ConfigDict

from fraclab.core.errors import ParameterRangeError
from fraclab.core.field import Field
from fraclab.core.grid import Grid

Symbol = Callable[[np.ndarray], np.ndarray]


class MultiplierSpec(BaseModel):
    """A Fourier symbol acting on rfft coefficients."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str
    symbol: Symbol
    odd: bool = False
    zero_mode: complex = 0.0

    def on(self, grid: Grid) -> np.ndarray:
        k = grid.wavenumbers
        factors = np.zeros(k.size, dtype=complex)
        factors[1:] = self.symbol(k[1:])
        factors[0] = self.zero_mode
        if self.odd:
            factors[-1] = 0.0
        return factors

    def apply(self, u: Field) -> Field:
        return Field.from_coeffs(u.grid, u.coeffs * self.on(u.grid))


def _check_power(s: float) -> float:
    if not -1.0 < s < 1.0:
        raise ParameterRangeError(f"lambda_power needs s in (-1, 1), got {s}")
    return float(s)


HILBERT = MultiplierSpec(name="H", symbol=lambda k: -1j * np.ones_like(k), odd=True)
DERIVATIVE = MultiplierSpec(name="d/dx", symbol=lambda k: 1j * k, odd=True)


def power_spec(s: float) -> MultiplierSpec:
    s = _check_power(s)
    return MultiplierSpec(name=f"Lambda^{s:g}", symbol=lambda k: k ** s)


def hilbert(u: Field) -> Field:
    """Hu with symbol -i sign(n); cos(nx) -> sin(nx)."""
    return HILBERT.apply(u)


def lambda_power(u: Field, s: float) -> Field:
    """Lambda^s u with symbol |n|^s, s in (-1, 1); the mean is removed."""
    return power_spec(s).apply(u)


def velocity(u: Field, alpha: float) -> Field:
    """v = Lambda^{alpha-1} H u, computed as hilbert(lambda_power(u, alpha - 1))."""
    return hilbert(lambda_power(u, alpha - 1.0))


def derivative(u: Field) -> Field:
    return DERIVATIVE.apply(u)


def antiderivative(u: Field) -> Field:
    """Mean-free primitive of a mean-free field."""
    k = u.grid.wavenumbers
    factors = np.zeros(k.size, dtype=complex)
    factors[1:] = 1.0 / (1j * k[1:])
    factors[-1] = 0.0
    return Field.from_coeffs(u.grid, u.coeffs * factors)


def lambda_alpha(u: Field, alpha: float) -> Field:
    """Lambda^alpha u for alpha in (0, 2), as Lambda^{alpha-1} of Lambda u = H u_x."""
    return lambda_power(hilbert(derivative(u)), alpha - 1.0)


def lambda_at_origin(u: Field) -> float:
    """Lambda u(0) = sum |k| u_k = H u_x at x = 0."""
    k = u.grid.wavenumbers
    weights = np.full(k.size, 2.0)
    weights[0] = 1.0
    weights[-1] = 0.0
    return float(np.sum(weights * k * u.coeffs.real))


def dealias_coeffs(grid: Grid, coeffs: np.ndarray) -> np.ndarray:
    out = np.array(coeffs, dtype=complex)
    out[grid.dealias_cutoff + 1:] = 0.0
    return out


def dealias(u: Field) -> Field:
    """Two-thirds rule: zero every rfft index above N // 3."""
    return Field.from_coeffs(u.grid, dealias_coeffs(u.grid, u.coeffs))


def tail_fraction(u: Field) -> float:
    """
    Energy fraction of the top third of the retained band (2N/9, N/3],
    mean excluded. Zero for a field with no fluctuating energy.
    """
    cutoff = u.grid.dealias_cutoff
    energy = np.abs(u.coeffs[1:cutoff + 1]) ** 2
    total = float(np.sum(energy))
    if total == 0.0:
        return 0.0
    start = (2 * cutoff) // 3
    return float(np.sum(energy[start:]) / total)
