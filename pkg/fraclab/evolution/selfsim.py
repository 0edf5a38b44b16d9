"""Shape checks of the self-similar profile K (1 - x^2)_+^{alpha/2}."""

from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from fraclab.core.errors import ParameterRangeError
from fraclab.core.field import Field
from fraclab.core.grid import Grid
from fraclab.core.profiles import selfsim_profile
from fraclab.operators.oracle import kernel_oracle
from fraclab.utils.helpers import linear_fit
from fraclab.utils.xlogger import logger

FIT_WINDOW = 0.9
EDGE_OFFSETS = np.geomspace(1e-2, 1e-5, 10)


class SelfsimReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    alpha: float
    scale: float
    slope: float
    fit_residual: float                 # max |V - slope x| / max |V| on the window
    endpoint_exponent: float
    exponent_error: float               # |fitted - alpha/2|
    passed: bool


def profile_velocity(phi: Field, alpha: float, x) -> np.ndarray:
    """
    Lambda^{alpha-1} H phi at the points x: the odd Riesz kernel for
    alpha < 1, Lambda^{alpha-1} H acting through phi' for alpha >= 1.
    """
    if alpha < 1.0:
        return np.array([kernel_oracle(phi, alpha, xi, "lambda_hilbert") for xi in x])
    return np.array([kernel_oracle(phi, alpha - 1.0, xi, "hilbert_lambda") for xi in x])


def selfsim_profile_check(alpha: float, scale: float = 1.0, n_fit: int = 41,
                          residual_tol: float = 1e-3, exponent_tol: float = 0.05,
                          grid: Optional[Grid] = None) -> SelfsimReport:
    """
    Fit Lambda^{alpha-1} H phi by c x on (-0.9, 0.9) and the edge exponent
    of phi by log phi(1 - h) against log h.

    Raises:
        ParameterRangeError: alpha outside (0, 2)
        OracleDivergenceError: quadrature failure near the endpoints
    """
    if not 0.0 < alpha < 2.0:
        raise ParameterRangeError(f"alpha must lie in (0, 2), got {alpha}")
    grid = grid or Grid.line()
    profile = selfsim_profile(alpha, scale)
    phi = Field.from_profile(grid, profile)

    x = np.linspace(-FIT_WINDOW, FIT_WINDOW, n_fit)
    values = profile_velocity(phi, alpha, x)
    slope = float(np.dot(x, values) / np.dot(x, x))
    peak = float(np.max(np.abs(values)))
    residual = float(np.max(np.abs(values - slope * x)) / peak) if peak > 0.0 else 0.0

    exponent, _, _ = linear_fit(np.log(EDGE_OFFSETS), np.log(profile(1.0 - EDGE_OFFSETS)))
    exponent_error = abs(exponent - alpha / 2.0)
    passed = residual <= residual_tol and exponent_error <= exponent_tol
    logger.info(f"Self-similar profile alpha={alpha:g}",
                data={"slope": slope, "residual": residual, "exponent": exponent}, category="evolve")
    return SelfsimReport(alpha=alpha, scale=scale, slope=slope, fit_residual=residual,
                         endpoint_exponent=float(exponent), exponent_error=exponent_error, passed=passed)
