"""Blow-up detection and blow-up time estimate from a finished run."""

from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from fraclab.config.settings import settings
from fraclab.evolution.state import StopReason
from fraclab.monitor.series import MonitorSeries
from fraclab.utils.helpers import linear_fit
from fraclab.utils.xlogger import logger

MIN_WINDOW = 5
DETECTING_STOPS = ("resolution-loss", "threshold")


class BlowupReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    detected: bool
    t_estimate: Optional[float] = None
    growth_factor: float
    stop_reason: StopReason
    ode_margin_min: Optional[float] = None
    norm: Literal["lambda_u0", "max_ux"] = "max_ux"
    fit_r2: Optional[float] = None

    def to_record(self) -> dict:
        return self.model_dump(include={"detected", "t_estimate", "growth_factor", "stop_reason", "ode_margin_min"})


def _norm_proxy(series: MonitorSeries):
    if series.has("lambda_u0"):
        lam = series.lambda_u0
        if np.all(lam < 0.0):
            return "lambda_u0", np.abs(lam)
    return "max_ux", series.max_ux


def blowup_fit(series: MonitorSeries, ode_margin_min: Optional[float] = None,
               growth_threshold: Optional[float] = None, r2_min: Optional[float] = None) -> BlowupReport:
    """
    Fit 1/q(t) by a line over the last max(5, n/4) samples, q = |Lambda u(0,t)|
    on alpha = 1 runs and max|u_x| otherwise. The root of a decreasing fit with
    R^2 >= r2_min is the blow-up time estimate.
    """
    growth_threshold = settings.GROWTH_FACTOR if growth_threshold is None else growth_threshold
    r2_min = settings.FIT_R2_MIN if r2_min is None else r2_min

    max_ux = series.max_ux
    if max_ux.size == 0:
        return BlowupReport(detected=False, growth_factor=1.0, stop_reason=series.stop_reason,
                            ode_margin_min=ode_margin_min)
    if max_ux[0] > 0.0:
        growth = float(max_ux[-1] / max_ux[0])
    else:
        growth = 1.0 if max_ux[-1] == 0.0 else float("inf")

    norm, q = _norm_proxy(series)
    t_estimate, r2 = None, None
    n = q.size
    window = min(n, max(MIN_WINDOW, n // 4))
    if window >= 3 and np.all(q[-window:] > 0.0):
        t = series.times[-window:]
        slope, intercept, r2 = linear_fit(t, 1.0 / q[-window:])
        if slope < 0.0 and r2 >= r2_min:
            t_estimate = -intercept / slope

    detected = growth >= growth_threshold and series.stop_reason in DETECTING_STOPS
    report = BlowupReport(detected=detected, t_estimate=t_estimate, growth_factor=growth,
                          stop_reason=series.stop_reason, ode_margin_min=ode_margin_min,
                          norm=norm, fit_r2=r2)
    logger.info(f"Blow-up fit: detected={detected} T~{t_estimate}",
                data={"growth": growth, "norm": norm, "r2": r2}, category="monitor")
    return report
