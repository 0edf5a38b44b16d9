"""
The line inequality

    -int_0^inf u Lambda^b H u / x^{3+b} dx >= (1+b) b c_b (int_0^inf u / x^{2+b} dx)^2

for even, compactly supported u with a double zero at 0, together with the
exact rate dI/dt = -(2+b) int u Lambda^b H u / x^{3+b} dx and the CCFi ratio.
"""

from typing import Optional

from pydantic import BaseModel, ConfigDict

from fraclab.core.constants import blowup_constant
from fraclab.core.errors import ParameterRangeError
from fraclab.core.field import Field
from fraclab.inequalities.functionals import profile_integral, weighted_functional
from fraclab.inequalities.reports import InequalityReport, line_support, require_line_data
from fraclab.operators.oracle import kernel_oracle
from fraclab.operators.spectral import derivative
from fraclab.utils.xlogger import logger


def _check_beta(beta: float) -> None:
    if not 0.0 < beta < 1.0:
        raise ParameterRangeError(f"beta must lie in (0, 1), got {beta}")


def corollary_lhs(u: Field, beta: float) -> float:
    """-int_0^R u(x) (Lambda^beta H u)(x) / x^{3+beta} dx with the oracle inside."""
    radius = line_support(u)
    return -profile_integral(
        lambda x: u.evaluate(x) * kernel_oracle(u, beta, x, "hilbert_lambda") / x ** (3.0 + beta), radius
    )


def maincoro_check(u: Field, beta: float, tol: float = 1e-8) -> InequalityReport:
    """
    Both sides of the line inequality for one datum.

    Raises:
        ParameterRangeError: beta outside (0, 1) or u not on the line
        HypothesisViolationError: u fails H1-H3
    """
    _check_beta(beta)
    require_line_data(u, ["h1", "h2", "h3"], "maincoro_check")
    if u.linf == 0.0:
        return InequalityReport.build("maincoro", 0.0, 0.0, tol)
    lhs = corollary_lhs(u, beta)
    functional = weighted_functional(u, 2.0 + beta, "line")
    rhs = blowup_constant(beta) * functional ** 2
    report = InequalityReport.build("maincoro", lhs, rhs, tol, functional=functional)
    logger.info(f"maincoro beta={beta:g}", data={"lhs": lhs, "rhs": rhs, "margin": report.margin},
                category="inequalities")
    return report


def ode_margin_direct(u: Field, beta: float) -> InequalityReport:
    """
    dI/dt - (2+beta) blowup_const I^2 at a datum, with dI/dt taken from the
    equation instead of a time difference.
    """
    _check_beta(beta)
    require_line_data(u, ["h1", "h2", "h3"], "ode_margin_direct")
    if u.linf == 0.0:
        return InequalityReport.build("ode_margin", 0.0, 0.0, 0.0)
    rate = (2.0 + beta) * corollary_lhs(u, beta)
    functional = weighted_functional(u, 2.0 + beta, "line")
    bound = (2.0 + beta) * blowup_constant(beta) * functional ** 2
    return InequalityReport.build("ode_margin", rate, bound, 0.0, functional=functional)


class CcfiReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    delta: float
    lhs: float
    rhs: float
    ratio: Optional[float]
    lhs_nonnegative: bool


def ccfi_ratio(u: Field, delta: float, tol: float = 1e-10) -> CcfiReport:
    """
    -int_0^inf Hu u_x / x^{1+delta} dx against (int_0^inf u / x^{2+delta} dx)^2.

    The ratio is an empirical lower-bound sample of the constant; it is None
    when the right side vanishes.
    """
    if not 0.0 < delta < 1.0:
        raise ParameterRangeError(f"delta must lie in (0, 1), got {delta}")
    require_line_data(u, ["h1", "h3"], "ccfi_ratio")
    if u.linf == 0.0:
        return CcfiReport(delta=delta, lhs=0.0, rhs=0.0, ratio=None, lhs_nonnegative=True)
    radius = line_support(u)
    if u.profile is not None:
        ux = lambda x: float(u.profile.deriv(x))
    else:
        dfield = derivative(u)
        ux = lambda x: float(dfield.interpolate(x))
    lhs = -profile_integral(
        lambda x: kernel_oracle(u, 0.0, x, "hilbert_lambda") * ux(x) / x ** (1.0 + delta), radius
    )
    rhs = weighted_functional(u, 2.0 + delta, "line") ** 2
    ratio = lhs / rhs if rhs > 0.0 else None
    return CcfiReport(delta=delta, lhs=lhs, rhs=rhs, ratio=ratio, lhs_nonnegative=lhs >= -tol)
