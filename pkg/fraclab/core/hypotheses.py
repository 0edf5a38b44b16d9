"""Measured checks of the structural hypotheses on initial data."""

import math
from typing import List, Literal, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from fraclab.config.settings import settings
from fraclab.core.errors import HypothesisViolationError
from fraclab.core.field import Field

Setting = Literal["line", "torus"]


class HypothesisReport(BaseModel):
    """
    Flags for
      H1 compact support and nonnegativity (line),
      H2 double zero at the origin,
      H3 evenness,
      H4 nondecreasing on [0, pi] (torus).
    A flag is None when the hypothesis does not apply to the setting.
    """

    model_config = ConfigDict(frozen=True)

    h1: Optional[bool] = None
    h2: bool
    h3: bool
    h4: Optional[bool] = None
    tol: float
    diagnostics: List[Tuple[str, float]]

    def violation(self, name: str) -> float:
        return dict(self.diagnostics).get(name, 0.0)

    def holds(self, names: Sequence[str]) -> bool:
        return all(getattr(self, name.lower()) is not False for name in names)

    def require(self, names: Sequence[str], context: str = "") -> None:
        """Raise HypothesisViolationError unless every named flag holds."""
        failed = {n: self.violation(n.upper()) for n in names if getattr(self, n.lower()) is False}
        if failed:
            raise HypothesisViolationError(
                f"{context or 'data'} violates {', '.join(sorted(failed))}: {failed}", failed
            )


def _derivative_values(u: Field) -> np.ndarray:
    if u.profile is not None:
        return u.profile.deriv(u.grid.signed_nodes)
    k = u.grid.wavenumbers
    return np.fft.irfft(1j * k * u.coeffs, n=u.grid.n_points, norm="forward")


def validate_hypotheses(u0: Field, setting: Setting, tol: Optional[float] = None) -> HypothesisReport:
    """
    Measure H1-H4 on the grid nodes.

    Args:
        u0: Initial datum
        setting: "line" or "torus"
        tol: Absolute tolerance; defaults to settings.HYPOTHESIS_TOL

    Returns:
        HypothesisReport with one diagnostic per applicable hypothesis
    """
    tol = settings.HYPOTHESIS_TOL if tol is None else tol
    grid = u0.grid
    x = grid.signed_nodes
    values = u0.values
    ux = _derivative_values(u0)
    diagnostics: List[Tuple[str, float]] = []

    h1 = None
    if setting == "line":
        negativity = float(max(0.0, -np.min(values)))
        if u0.profile is not None and u0.profile.support is not None:
            outside = np.abs(x) > u0.profile.support
        else:
            outside = np.abs(x) >= 0.9 * grid.half_width
        leakage = float(np.max(np.abs(values[outside]))) if np.any(outside) else 0.0
        v1 = max(negativity, leakage)
        diagnostics.append(("H1", v1))
        h1 = v1 <= tol

    v2 = max(abs(float(values[0])), abs(float(ux[0])))
    diagnostics.append(("H2", v2))

    v3 = float(np.max(np.abs(values - values[grid.mirror_index])))
    diagnostics.append(("H3", v3))

    h4 = None
    if setting == "torus":
        window = (x >= 0.0) & (x <= math.pi)
        v4 = float(max(0.0, -np.min(ux[window])))
        diagnostics.append(("H4", v4))
        h4 = v4 <= tol

    return HypothesisReport(h1=h1, h2=v2 <= tol, h3=v3 <= tol, h4=h4, tol=tol, diagnostics=diagnostics)
