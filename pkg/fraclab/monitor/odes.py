"""
Discrete residuals of the blow-up differential inequalities

    line:  dI/dt >= (2+beta) blowup_const I^2
    torus: dJ/dt >= C1 J^2 - C2 |u0|_inf J - C3 |u0|_inf^2 / alpha

with the time derivative taken by second order differences (centered inside,
one-sided at the ends) on the monitor times.
"""

from typing import Tuple

import numpy as np

from fraclab.core.constants import Constants
from fraclab.core.errors import ParameterRangeError, TooFewSamplesError
from fraclab.monitor.series import MonitorSeries
from fraclab.utils.xlogger import logger

MIN_SAMPLES = 3


def functional_history(series: MonitorSeries) -> Tuple[np.ndarray, np.ndarray]:
    """
    (t, functional) over the leading run of samples where the functional exists.

    Raises:
        TooFewSamplesError: fewer than three usable samples
    """
    values = series.functional
    missing = np.flatnonzero(~np.isfinite(values))
    end = int(missing[0]) if missing.size else values.size
    if end < MIN_SAMPLES:
        raise TooFewSamplesError(f"need {MIN_SAMPLES} samples of the weighted functional, have {end}")
    return series.times[:end], values[:end]


def time_derivative(t: np.ndarray, y: np.ndarray) -> np.ndarray:
    return np.gradient(y, t, edge_order=2)


def ode_inequality_residual(series: MonitorSeries, beta: float, constants: Constants) -> np.ndarray:
    """
    Per-sample margins dI/dt - (2+beta) blowup_const I^2 of a line run.

    Raises:
        ParameterRangeError: beta outside (0, 1) or a torus series
        TooFewSamplesError: fewer than three samples
    """
    if not 0.0 < beta < 1.0:
        raise ParameterRangeError(f"beta must lie in (0, 1), got {beta}")
    if series.scenario.domain != "line":
        raise ParameterRangeError("ode_inequality_residual applies to line runs")
    t, functional = functional_history(series)
    rate = (2.0 + beta) * constants.blowup_const
    margins = time_derivative(t, functional) - rate * functional ** 2
    logger.debug("Line ODE residual", data={"samples": int(t.size), "min_margin": float(np.min(margins))},
                 category="monitor")
    return margins


def periodic_ode_check(series: MonitorSeries, alpha: float, c1: float, c2: float, c3: float,
                       norm_u0: float) -> np.ndarray:
    """
    Per-sample margins dJ/dt - (C1 J^2 - C2 |u0| J - C3 |u0|^2 / alpha) of a torus run.

    Raises:
        ParameterRangeError: alpha outside (0, 1) or a line series
        TooFewSamplesError: fewer than three samples
    """
    if not 0.0 < alpha < 1.0:
        raise ParameterRangeError(f"alpha must lie in (0, 1), got {alpha}")
    if series.scenario.domain != "torus":
        raise ParameterRangeError("periodic_ode_check applies to torus runs")
    t, functional = functional_history(series)
    bound = c1 * functional ** 2 - c2 * norm_u0 * functional - c3 * norm_u0 ** 2 / alpha
    margins = time_derivative(t, functional) - bound
    logger.debug("Periodic ODE residual", data={"samples": int(t.size), "min_margin": float(np.min(margins))},
                 category="monitor")
    return margins
