"""
Constants of the periodic blow-up inequality

    dJ/dt >= C1 J^2 - C2 |u0|_inf J - C3 |u0|_inf^2 / alpha.

The bracket of C1 has a closed form in two integrals over (0, 1) and a
second route through A0:

    -alpha pi c_bar (I1 + I2) = 2 pi alpha c_bar + int A0(lam) alpha^2/(lam^2 + alpha^2) dlam
"""

import math
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict

from fraclab.config.settings import settings
from fraclab.core.constants import odd_riesz_constant
from fraclab.core.errors import ConsistencyError, MissingCertificateError, ParameterRangeError
from fraclab.core.quadrature import integrate, integrate_alg
from fraclab.mellin.certificates import DecayCertificate
from fraclab.mellin.hurwitz import HurwitzCertificate, hurwitz_growth_fit
from fraclab.mellin.multipliers import a0_value, kernel_odd_reduced
from fraclab.utils.xlogger import logger

C1_RTOL = 1e-3
LAMBDA_POINTS = (0.5, 1.0, 5.0, 20.0, 50.0)


def _check_alpha(alpha: float) -> float:
    if not 0.0 < alpha < 1.0:
        raise ParameterRangeError(f"alpha must lie in (0, 1), got {alpha}")
    return float(alpha)


def first_integral(alpha: float) -> float:
    """int_0^1 x^{alpha-2} (-(1-x)^{-alpha} + (1+x)^{-alpha}) dx, equal to 2^{1-alpha}/(alpha-1)."""
    a = _check_alpha(alpha)
    near, _ = integrate_alg(lambda x: -(kernel_odd_reduced(x, a) + 2.0 * a), 0.0, 0.5, a - 1.0, 0.0)
    sing, _ = integrate_alg(lambda x: -x ** (a - 2.0), 0.5, 1.0, 0.0, -a)
    reg, _ = integrate(lambda x: x ** (a - 2.0) * (1.0 + x) ** (-a), 0.5, 1.0)
    return near + sing + reg


def second_integral(alpha: float) -> float:
    """int_0^1 x^{2 alpha} ((1-x)^{-alpha} + (1+x)^{-alpha}) dx."""
    a = _check_alpha(alpha)
    sing, _ = integrate_alg(lambda x: x ** (2.0 * a), 0.0, 1.0, 0.0, -a)
    reg, _ = integrate(lambda x: x ** (2.0 * a) * (1.0 + x) ** (-a), 0.0, 1.0)
    return sing + reg


def _a0_integral(weight, alpha: float, lambda_max: float, tail_power: float,
                 absolute: bool = False) -> float:
    """
    2 int_0^inf A0(lam) weight(lam) dlam, truncated at lambda_max with the tail
    closed by A0(lam) ~ A0(lambda_max) (lam / lambda_max)^{alpha-2} and
    weight(lam) ~ weight(lambda_max) (lam / lambda_max)^{tail_power}.
    """
    a0 = (lambda lam: abs(a0_value(lam, alpha))) if absolute else (lambda lam: a0_value(lam, alpha))
    body, _ = integrate(lambda lam: a0(lam) * weight(lam), 0.0, lambda_max,
                        points=LAMBDA_POINTS + (alpha,))
    exponent = alpha - 2.0 + tail_power
    edge = a0(lambda_max) * weight(lambda_max)
    tail = edge * lambda_max / (-exponent - 1.0)
    return 2.0 * (body + tail)


class C1Report(BaseModel):
    model_config = ConfigDict(frozen=True)

    alpha: float
    first_integral: float
    second_integral: float
    bracket_closed: float
    bracket_a0: float
    c1: float
    agree: bool


def c1_report(alpha: float, lambda_max: Optional[float] = None) -> C1Report:
    a = _check_alpha(alpha)
    lambda_max = settings.LAMBDA_MAX if lambda_max is None else lambda_max
    c_bar = odd_riesz_constant(a)
    i1, i2 = first_integral(a), second_integral(a)
    closed = -a * math.pi * c_bar * (i1 + i2)
    weight = lambda lam: a * a / (lam * lam + a * a)
    via_a0 = 2.0 * math.pi * a * c_bar + _a0_integral(weight, a, lambda_max, -2.0)
    agree = abs(closed - via_a0) <= C1_RTOL * max(abs(closed), abs(via_a0))
    report = C1Report(alpha=a, first_integral=i1, second_integral=i2, bracket_closed=closed,
                      bracket_a0=via_a0, c1=(1.0 + a) / (2.0 * math.pi) * closed, agree=agree)
    logger.info(f"C1 alpha={a:g}", data=report.model_dump(), category="inequalities")
    return report


def c1_of_alpha(alpha: float) -> float:
    """
    C1(alpha) = (1+alpha)/(2 pi) * bracket, bracket from the closed form.

    Raises:
        ConsistencyError: closed-form and A0 routes differ by more than 1e-3 relative
    """
    report = c1_report(alpha)
    if not report.agree:
        raise ConsistencyError("C1 bracket routes disagree", report.bracket_closed, report.bracket_a0)
    return report.c1


def c2_c3_bounds(alpha: float, epsilon_holder: float = 0.25,
                 hurwitz: Optional[HurwitzCertificate] = None,
                 decay: Optional[DecayCertificate] = None,
                 require_certificates: bool = False,
                 lambda_max: Optional[float] = None) -> Tuple[float, float]:
    """
    Upper bounds

        C2 = int |A0| alpha (C + C_eps |lam|^p) / (lam^2 + alpha^2) dlam
        C3 = int |A0| (C + C_eps |lam|^p)^2 / (lam^2 + alpha^2) dlam,   p = 1 - alpha + eps

    with C, C_eps from a Hurwitz growth certificate.

    Args:
        alpha: Exponent in (0, 1)
        epsilon_holder: eps in the growth exponent
        hurwitz: Growth certificate; fitted on the fly unless
            require_certificates is set
        decay: Optional A0 decay certificate; a failing one is rejected

    Raises:
        MissingCertificateError: a required certificate is absent or failed
    """
    a = _check_alpha(alpha)
    lambda_max = settings.LAMBDA_MAX if lambda_max is None else lambda_max
    if hurwitz is None:
        if require_certificates:
            raise MissingCertificateError("c2_c3_bounds needs a Hurwitz growth certificate")
        hurwitz = hurwitz_growth_fit(a, epsilon_holder)
    if decay is None and require_certificates:
        raise MissingCertificateError("c2_c3_bounds needs an A0 decay certificate")
    if decay is not None and not decay.passed:
        raise MissingCertificateError(f"A0 decay certificate failed (exponent {decay.exponent_fit:.3f})")

    p = 1.0 - a + epsilon_holder
    growth = lambda lam: hurwitz.C + hurwitz.C_eps * lam ** p
    w2 = lambda lam: a * growth(lam) / (lam * lam + a * a)
    w3 = lambda lam: growth(lam) ** 2 / (lam * lam + a * a)
    c2 = _a0_integral(w2, a, lambda_max, p - 2.0, absolute=True)
    c3 = _a0_integral(w3, a, lambda_max, 2.0 * p - 2.0, absolute=True)
    logger.info(f"C2/C3 alpha={a:g}", data={"c2": c2, "c3": c3, "C": hurwitz.C, "C_eps": hurwitz.C_eps},
                category="inequalities")
    return c2, c3
