"""
The alpha = 1 laws: the Cotlar-type identity H(u Hu) = (Hu)^2/2 - u^2/2,
the weighted identity on the line, and the Riccati closure at the origin.
"""

import math

import numpy as np

from fraclab.core.errors import BlowupReachedError, ParameterRangeError
from fraclab.core.field import Field
from fraclab.inequalities.functionals import profile_integral
from fraclab.inequalities.reports import InequalityReport, line_support, require_line_data
from fraclab.operators.oracle import kernel_oracle
from fraclab.operators.spectral import derivative, hilbert, lambda_at_origin
from fraclab.utils.xlogger import logger


def cotlar_residual(u: Field) -> float:
    """
    ||H(u Hu) - (Hu)^2/2 + u^2/2 + avg((Hu)^2/2 - u^2/2)||_inf on the torus.

    The returned value also covers the mean correction itself, which
    vanishes for mean-free u.
    """
    if u.grid.domain != "torus":
        raise ParameterRangeError("cotlar_residual works on torus fields")
    hu = hilbert(u)
    lhs = hilbert(u.with_values(u.values * hu.values)).values
    rhs = 0.5 * hu.values ** 2 - 0.5 * u.values ** 2
    correction = float(np.mean(rhs))
    residual = float(np.max(np.abs(lhs - (rhs - correction)))) if u.grid.n_points else 0.0
    logger.debug("Cotlar residual", data={"residual": residual, "mean_correction": correction},
                 category="inequalities")
    return max(residual, abs(correction))


def alpha1_weighted_identity(u: Field, tol: float = 1e-6) -> InequalityReport:
    """
    Check -int_0^inf u Hu / x^3 dx = (1/pi) (int_0^inf u / x^2 dx)^2.

    Hu comes from the logarithmic kernel oracle; passes when
    |margin| <= tol * max(|lhs|, |rhs|, 1).

    Raises:
        HypothesisViolationError: u is not even, compactly supported and
            doubly vanishing at 0
    """
    require_line_data(u, ["h1", "h2", "h3"], "alpha1_weighted_identity")
    if u.linf == 0.0:
        return InequalityReport.build("alpha1_weighted_identity", 0.0, 0.0, tol, equality=True)
    radius = line_support(u)
    lhs = -profile_integral(lambda x: u.evaluate(x) * kernel_oracle(u, 0.0, x, "hilbert_lambda") / x ** 3,
                            radius)
    weighted = profile_integral(lambda x: u.evaluate(x) / x ** 2, radius)
    rhs = weighted ** 2 / math.pi
    return InequalityReport.build("alpha1_weighted_identity", lhs, rhs, tol, equality=True)


def riccati_solution(m0: float, t: float) -> float:
    """
    Solution m0 / (1 + m0 t) of dm/dt = -m^2.

    Raises:
        BlowupReachedError: m0 < 0 and t >= -1/m0
    """
    if t < 0.0:
        raise ParameterRangeError(f"t must be nonnegative, got {t}")
    if m0 < 0.0 and t >= -1.0 / m0:
        raise BlowupReachedError(f"t={t:g} is at or past the blow-up time {-1.0 / m0:g}")
    return m0 / (1.0 + m0 * t)


def riccati_closure_residual(u: Field) -> float:
    """
    |d/dt Lambda u(0) + (Lambda u(0))^2 - u(0) u''(0)| for the alpha = 1 flow
    du/dt = -(u Hu)_x on the torus; zero for even u by the Cotlar identity.
    """
    flux = u.with_values(u.values * hilbert(u).values)
    dudt = derivative(flux)
    rate = -lambda_at_origin(dudt)
    m = lambda_at_origin(u)
    uxx = derivative(derivative(u)).values[0]
    return abs(rate + m * m - u.values[0] * uxx)
