"""
Singular-kernel quadrature for the nonlocal operators.

An independent route to the spectral multipliers, used for cross-checks
and wherever exact profiles are needed (weighted integrals near x = 0).

Line data (compact support [-R, R], u = r(y) (R-y)^e (R+y)^e):
    lambda          Lambda^{a-1} u   = c_a     int u(y) |x-y|^{-a} dy
    lambda_hilbert  Lambda^{a-1} H u = c_bar_a int u(y) sign(x-y) |x-y|^{-a} dy
    hilbert_lambda  Lambda^s H u     = -c_s    int u'(y) |x-y|^{-s} dy,  s in (0, 1)
                    H u              = 1/pi    int u'(y) log|x-y| dy,    s = 0
The integral is split at y = x and both halves go to QAWS with the edge
and kernel exponents as algebraic weights.

Torus data: the kernels are periodized over all images; the two nearest
images are explicit weights and the rest is a smooth Hurwitz-zeta sum.
"""

import math
from typing import Callable, Literal, Optional, Tuple

import numpy as np

from fraclab.config.settings import settings
from fraclab.core.constants import odd_riesz_constant, riesz_constant
from fraclab.core.errors import OracleDivergenceError, ParameterRangeError
from fraclab.core.field import Field
from fraclab.core.quadrature import integrate, integrate_alg
from fraclab.core.zeta import periodic_pair
from fraclab.utils.xlogger import logger

Which = Literal["lambda", "lambda_hilbert", "hilbert_lambda"]

TWO_PI = 2.0 * math.pi


class _EdgeForm:
    """u or u' written as r(y) (R - y)^e (R + y)^e on [-R, R]."""

    def __init__(self, reduced: Callable, radius: float, exponent: float):
        self.reduced = reduced
        self.radius = radius
        self.exponent = exponent

    def left_factor(self, y):
        return self.reduced(y) * (self.radius - y) ** self.exponent

    def right_factor(self, y):
        return self.reduced(y) * (self.radius + y) ** self.exponent

    def full(self, y):
        r = self.radius
        return self.reduced(y) * (r - y) ** self.exponent * (r + y) ** self.exponent


def _edge_form(u: Field, use_derivative: bool) -> _EdgeForm:
    profile = u.profile
    if profile is not None and profile.support is not None and profile.reduced is not None:
        if use_derivative:
            return _EdgeForm(profile.reduced_derivative, profile.support, profile.derivative_edge_exponent)
        return _EdgeForm(profile.reduced, profile.support, profile.edge_exponent)
    # grid data: the window edge with exponent 0
    radius = u.grid.half_width
    if use_derivative:
        du = np.fft.irfft(1j * u.grid.wavenumbers * u.coeffs, n=u.grid.n_points, norm="forward")
        d_field = Field.from_values(u.grid, du)
        return _EdgeForm(d_field.interpolate, radius, 0.0)
    return _EdgeForm(u.interpolate, radius, 0.0)


def _line_split(form: _EdgeForm, x: float, power: float, log: bool, odd: bool,
                tol: Tuple[Optional[float], Optional[float]]) -> Tuple[float, float]:
    """
    int_{-R}^{R} u(y) K(x - y) dy with K = |.|^{-power} (sign(.)|.|^{-power} when odd)
    or log|.| when ``log``.
    """
    r, e = form.radius, form.exponent
    epsabs, epsrel = tol
    scalar = lambda g: (lambda y: float(g(y)))
    if abs(x) < r:
        kernel_power = 0.0 if log else -power
        left, err_l = integrate_alg(scalar(form.left_factor), -r, x, e, kernel_power,
                                    log="b" if log else None, epsabs=epsabs, epsrel=epsrel)
        right, err_r = integrate_alg(scalar(form.right_factor), x, r, kernel_power, e,
                                     log="a" if log else None, epsabs=epsabs, epsrel=epsrel)
        if odd:
            right = -right
        return left + right, err_l + err_r

    sgn = 1.0 if x > 0 else -1.0
    reduced = lambda y: float(form.reduced(y))
    if abs(x) - r > 1e-12 * max(1.0, r):
        if log:
            kernel = lambda y: math.log(abs(x - y))
        elif odd:
            kernel = lambda y: sgn * abs(x - y) ** (-power)
        else:
            kernel = lambda y: abs(x - y) ** (-power)
        return integrate_alg(lambda y: reduced(y) * kernel(y), -r, r, e, e, epsabs=epsabs, epsrel=epsrel)
    # x sits on the edge: the kernel singularity merges with the edge weight
    f = (lambda y: sgn * reduced(y)) if odd else reduced
    if log:
        return integrate_alg(f, -r, r, e, e, log="b" if x > 0 else "a", epsabs=epsabs, epsrel=epsrel)
    if x > 0:
        return integrate_alg(f, -r, r, e, e - power, epsabs=epsabs, epsrel=epsrel)
    return integrate_alg(f, -r, r, e - power, e, epsabs=epsabs, epsrel=epsrel)


def _periodic_sampler(u: Field, use_derivative: bool) -> Callable[[float], float]:
    if u.profile is not None and u.profile.is_periodic:
        g = u.profile.deriv if use_derivative else u.profile
        return lambda y: float(g(y))
    if use_derivative:
        du = np.fft.irfft(1j * u.grid.wavenumbers * u.coeffs, n=u.grid.n_points, norm="forward")
        d_field = Field.from_values(u.grid, du)
        return lambda y: float(d_field.interpolate(y))
    return lambda y: float(u.interpolate(y))


def _periodic_riesz(g: Callable[[float], float], x: float, power: float, odd: bool,
                    tol: Tuple[Optional[float], Optional[float]]) -> Tuple[float, float]:
    """int_0^{2pi} g(x - z) K_per(z) dz for the periodized |z|^{-power} (odd: sign(z)|z|^{-power})."""
    epsabs, epsrel = tol
    h = lambda z: g(x - z)
    sign = -1.0 if odd else 1.0
    near, err_near = integrate_alg(h, 0.0, TWO_PI, -power, 0.0, epsabs=epsabs, epsrel=epsrel)
    far, err_far = integrate_alg(h, 0.0, TWO_PI, 0.0, -power, epsabs=epsabs, epsrel=epsrel)
    smooth, err_smooth = integrate(lambda z: h(z) * float(periodic_pair(power, z, int(sign))),
                                   0.0, TWO_PI, epsabs=epsabs, epsrel=epsrel)
    return near + sign * far + smooth, err_near + err_far + err_smooth


def _log_remainder(z: float) -> float:
    """log(2 sin(z/2)) - log z - log(2 pi - z), smooth on [0, 2 pi]."""
    w = min(z, TWO_PI - z)
    if w == 0.0:
        return -math.log(TWO_PI)
    return math.log(2.0 * math.sin(0.5 * w) / w) - math.log(TWO_PI - w)


def _periodic_log(g: Callable[[float], float], x: float,
                  tol: Tuple[Optional[float], Optional[float]]) -> Tuple[float, float]:
    epsabs, epsrel = tol
    h = lambda z: g(x - z)
    at_zero, e0 = integrate_alg(h, 0.0, TWO_PI, 0.0, 0.0, log="a", epsabs=epsabs, epsrel=epsrel)
    at_end, e1 = integrate_alg(h, 0.0, TWO_PI, 0.0, 0.0, log="b", epsabs=epsabs, epsrel=epsrel)
    smooth, e2 = integrate(lambda z: h(z) * _log_remainder(z), 0.0, TWO_PI, epsabs=epsabs, epsrel=epsrel)
    return at_zero + at_end + smooth, e0 + e1 + e2


def kernel_oracle(u: Field, alpha: float, x: float, which: Which = "lambda_hilbert",
                  epsabs: Optional[float] = None, epsrel: Optional[float] = None) -> float:
    """
    Evaluate a nonlocal operator at one point by singular-kernel quadrature.

    Args:
        u: Field; line fields should carry a compactly supported Profile
        alpha: Exponent in (0, 1) for "lambda"/"lambda_hilbert"; the power
            s in [0, 1) of Lambda^s H for "hilbert_lambda"
        x: Evaluation point
        which: Operator to evaluate
        epsabs, epsrel: Optional QUADPACK tolerances (refinement studies)

    Returns:
        Value of the operator at x

    Raises:
        ParameterRangeError: exponent out of range
        OracleDivergenceError: reported quadrature error above the cap
    """
    if which == "hilbert_lambda":
        if not 0.0 <= alpha < 1.0:
            raise ParameterRangeError(f"hilbert_lambda needs s in [0, 1), got {alpha}")
    elif not 0.0 < alpha < 1.0:
        raise ParameterRangeError(f"{which} oracle needs alpha in (0, 1), got {alpha}")
    tol = (epsabs, epsrel)
    x = float(x)

    if u.grid.domain == "line":
        if which == "lambda":
            value, err = _line_split(_edge_form(u, False), x, alpha, log=False, odd=False, tol=tol)
            value, err = riesz_constant(alpha) * value, riesz_constant(alpha) * err
        elif which == "lambda_hilbert":
            c = odd_riesz_constant(alpha)
            value, err = _line_split(_edge_form(u, False), x, alpha, log=False, odd=True, tol=tol)
            value, err = c * value, c * err
        elif alpha == 0.0:
            value, err = _line_split(_edge_form(u, True), x, 0.0, log=True, odd=False, tol=tol)
            value, err = value / math.pi, err / math.pi
        else:
            c = riesz_constant(alpha)
            value, err = _line_split(_edge_form(u, True), x, alpha, log=False, odd=False, tol=tol)
            value, err = -c * value, c * err
    else:
        if which == "lambda":
            g = _periodic_sampler(u, False)
            mean = u.mean
            value, err = _periodic_riesz(lambda y: g(y) - mean, x, alpha, odd=False, tol=tol)
            value, err = riesz_constant(alpha) * value, riesz_constant(alpha) * err
        elif which == "lambda_hilbert":
            c = odd_riesz_constant(alpha)
            value, err = _periodic_riesz(_periodic_sampler(u, False), x, alpha, odd=True, tol=tol)
            value, err = c * value, c * err
        elif alpha == 0.0:
            value, err = _periodic_log(_periodic_sampler(u, True), x, tol=tol)
            value, err = value / math.pi, err / math.pi
        else:
            c = riesz_constant(alpha)
            value, err = _periodic_riesz(_periodic_sampler(u, True), x, alpha, odd=False, tol=tol)
            value, err = -c * value, c * err

    cap = settings.ORACLE_MAX_ERROR * max(1.0, u.linf)
    if not math.isfinite(value) or err > cap:
        logger.warning(f"Oracle {which} at x={x} did not converge",
                       data={"value": value, "abserr": err, "cap": cap}, category="oracle")
        raise OracleDivergenceError(f"{which} oracle at x={x}: abserr {err:.3e} above cap {cap:.3e}")
    return float(value)
