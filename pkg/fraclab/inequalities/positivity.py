"""Grid scan of the positivity facts behind B0 >= 0."""

from typing import List, Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict

from fraclab.inequalities.kernels import AnalyticKernel
from fraclab.utils.xlogger import logger

SMALL_X = (1e-2, 1e-3, 1e-4)


class PositivityReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    beta: float
    min_ds_f: float
    min_f_odd: float
    g0_over_x: List[float]
    g0_bounded: bool
    tol: float
    passed: bool


def g0_positivity_scan(beta: float, x_grid: Optional[Sequence[float]] = None,
                       s_grid: Optional[Sequence[float]] = None, tol: float = 1e-12) -> PositivityReport:
    """
    Evaluate d/ds f(sx) on x_grid x s_grid and f(x) - f(-x) on x_grid.

    Also samples G0(x)/x at x = 1e-2, 1e-3, 1e-4; G0 = O(x) means the
    samples stay within a factor 2 of each other.
    """
    kernel = AnalyticKernel(exponent=beta)
    x = np.linspace(0.02, 0.98, 50) if x_grid is None else np.asarray(x_grid, dtype=float)
    s = np.linspace(-0.98, 0.98, 50) if s_grid is None else np.asarray(s_grid, dtype=float)

    ss, xx = np.meshgrid(s, x, indexing="ij")
    min_ds_f = float(np.min(kernel.ds_f(ss, xx)))
    min_f_odd = float(np.min(kernel.f(x) - kernel.f(-x)))

    small = np.asarray(SMALL_X)
    ratios = kernel.G0(small) / small
    spread = float(np.max(np.abs(ratios)) / max(float(np.min(np.abs(ratios))), np.finfo(float).tiny))
    bounded = bool(np.all(np.isfinite(ratios)) and spread <= 2.0)

    report = PositivityReport(beta=beta, min_ds_f=min_ds_f, min_f_odd=min_f_odd,
                              g0_over_x=[float(r) for r in ratios], g0_bounded=bounded, tol=tol,
                              passed=min_ds_f >= -tol and min_f_odd >= -tol and bounded)
    logger.info(f"G0 positivity scan beta={beta:g}", data=report.model_dump(), category="inequalities")
    return report
