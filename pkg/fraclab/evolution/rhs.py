"""
Right-hand sides of the transport equations in flux form

    u_t = -(v u)_x,    G_t = -(v G)_x,

with v = Lambda^{alpha-1} H u for the single equation and v reconstructed
from v_x = G + Lambda^alpha u for the two-field system. Products are
dealiased with the two-thirds rule and differentiated spectrally, so the
mass mode of every right-hand side is exactly zero.
"""

from typing import Optional, Tuple

import numpy as np

from fraclab.core.errors import MeanDriftError
from fraclab.core.field import Field
from fraclab.core.grid import Grid
from fraclab.operators.spectral import antiderivative, dealias_coeffs, lambda_alpha, velocity
from fraclab.evolution.state import EvolutionState


def _flux_divergence(v: Field, w: Field) -> Field:
    """-(v w)_x with the product truncated to the retained band."""
    grid = w.grid
    product = np.fft.rfft(v.values * w.values, norm="forward")
    flux = dealias_coeffs(grid, product)
    return Field.from_coeffs(grid, -1j * grid.wavenumbers * flux)


def rhs_cht(u: Field, alpha: float) -> Field:
    """-(u Lambda^{alpha-1} H u)_x."""
    return _flux_divergence(velocity(u, alpha), u)


def reconstruct_velocity(u: Field, G: Optional[Field], alpha: float, v_mean: float = 0.0) -> Field:
    """v with v_x = G + Lambda^alpha u and mean v_mean."""
    vx = lambda_alpha(u, alpha)
    if G is not None:
        vx = Field.from_coeffs(u.grid, vx.coeffs + G.coeffs)
    v = antiderivative(vx)
    coeffs = np.array(v.coeffs)
    coeffs[0] = v_mean
    return Field.from_coeffs(u.grid, coeffs)


def check_mean_free(G: Field, tol: float = 1e-10) -> None:
    scale = max(1.0, G.linf)
    if abs(G.mean) > tol * scale:
        raise MeanDriftError(f"G carries mean {G.mean:.3e}; the velocity cannot be reconstructed")


def rhs_ea(state: EvolutionState, alpha: float, tol: float = 1e-10) -> Tuple[Field, Field]:
    """
    (-(v u)_x, -(v G)_x) for the two-field system.

    Raises:
        MeanDriftError: G has a nonzero mean
    """
    grid: Grid = state.u.grid
    G = state.G if state.G is not None else Field.zeros(grid)
    check_mean_free(G, tol)
    v = reconstruct_velocity(state.u, G, alpha, state.v_mean)
    return _flux_divergence(v, state.u), _flux_divergence(v, G)
