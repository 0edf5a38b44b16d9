"""
The Hurwitz-type function of the periodic problem

    Z(i lam + alpha, x) = x^{-s} + sum_{n>=1} (x + 2 pi n)^{-s} - (2 pi n - x)^{-s},   s = alpha + i lam,

which is the odd periodization of x^{-s}. In terms of Hurwitz zeta,
Z = x^{-s} + (2 pi)^{-s} [zeta(s, 1 + q) - zeta(s, 1 - q)] with q = x / 2 pi.
"""

import math
from typing import Literal, Optional, Sequence

import mpmath
import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy.special import zeta as scipy_zeta

from fraclab.core.errors import ParameterRangeError
from fraclab.core.zeta import hurwitz_zeta
from fraclab.utils.helpers import power_law_fit
from fraclab.utils.xlogger import logger

TWO_PI = 2.0 * math.pi


def _check(alpha: float, x) -> np.ndarray:
    if not 0.0 < alpha < 1.0:
        raise ParameterRangeError(f"alpha must lie in (0, 1), got {alpha}")
    x_arr = np.asarray(x, dtype=float)
    if np.any(x_arr < 0.0) or np.any(x_arr > math.pi):
        raise ParameterRangeError("x must lie in [0, pi]")
    return x_arr


def hurwitz_Z_regular(lam: float, alpha: float, x, method: Literal["series", "mpmath"] = "series"):
    """Z - x^{-s}: the part of Z that stays bounded as x -> 0."""
    x_arr = _check(alpha, x)
    s = complex(alpha, lam) if lam != 0.0 else float(alpha)
    q = x_arr / TWO_PI
    if method == "mpmath":
        flat = [complex((TWO_PI ** (-s)) * (mpmath.zeta(s, 1.0 + qi) - mpmath.zeta(s, 1.0 - qi)))
                for qi in q.reshape(-1)]
        out = np.asarray(flat, dtype=complex).reshape(q.shape)
    else:
        out = np.asarray(TWO_PI ** (-s) * (hurwitz_zeta(s, 1.0 + q) - hurwitz_zeta(s, 1.0 - q)),
                         dtype=complex)
    return out.item() if out.ndim == 0 else out


def hurwitz_Z(lam: float, alpha: float, x, method: Literal["series", "mpmath"] = "series"):
    """
    Z(i lam + alpha, x) for x in (0, pi].

    Args:
        lam: Imaginary part of the exponent
        alpha: Real part of the exponent, in (0, 1)
        x: Scalar or array in (0, pi]
        method: "series" (Euler-Maclaurin Hurwitz zeta) or "mpmath" (reference)

    Returns:
        Complex scalar or array
    """
    x_arr = _check(alpha, x)
    if np.any(x_arr == 0.0):
        raise ParameterRangeError("Z is singular at x = 0")
    s = complex(alpha, lam)
    out = np.asarray(hurwitz_Z_regular(lam, alpha, x_arr, method), dtype=complex) + x_arr ** (-s)
    return out.item() if out.ndim == 0 else out


def periodic_weight(x, power: float):
    """
    W(x) = sum_{n>=0} (x + 2 pi n)^{-power} for x > 0 and power > 1.

    W folds the line weight x^{-power} onto one period:
    int_0^inf u(x) x^{-power} dx = int_0^{2 pi} u(x) W(x) dx for 2 pi periodic u.
    """
    if power <= 1.0:
        raise ParameterRangeError(f"periodic_weight needs power > 1, got {power}")
    x_arr = np.asarray(x, dtype=float)
    out = TWO_PI ** (-power) * scipy_zeta(power, x_arr / TWO_PI)
    return float(out) if np.ndim(out) == 0 else out


class HurwitzCertificate(BaseModel):
    """Fitted growth envelope sup_x |Z*(i lam + alpha, x)| <= C + C_eps lam^{1 - alpha + eps}."""

    model_config = ConfigDict(frozen=True)

    alpha: float
    epsilon: float
    exponent: float
    exponent_fit: float
    C: float
    C_eps: float
    zero_offset: float
    zero_positive: bool
    lambda_range: tuple
    passed: bool


def hurwitz_growth_fit(alpha: float, epsilon: float = 0.25,
                       lambdas: Optional[Sequence[float]] = None,
                       n_x: int = 65) -> HurwitzCertificate:
    """
    Fit the growth of sup_{x in [0, pi]} |Z*| in lam and the lam = 0 offset.

    C_eps comes from a least-squares fit in the basis (1, lam^p) with
    p = 1 - alpha + eps; C is then raised until C + C_eps lam^p covers every
    sample. ``zero_offset`` is max_x (x^{-alpha} - Z(alpha, x)) on the grid.
    """
    lambdas = np.geomspace(2.0, 200.0, 40) if lambdas is None else np.asarray(lambdas, dtype=float)
    x = np.linspace(0.0, math.pi, n_x)
    sup = np.array([np.max(np.abs(hurwitz_Z_regular(lam, alpha, x))) for lam in lambdas])

    p = 1.0 - alpha + epsilon
    exponent_fit = power_law_fit(lambdas, sup)[0]
    basis = np.vstack([np.ones_like(lambdas), lambdas ** p]).T
    _, c_eps = np.linalg.lstsq(basis, sup, rcond=None)[0]
    c_eps = max(float(c_eps), 0.0)
    c_zero = max(float(np.max(sup - c_eps * lambdas ** p)), 0.0)

    x_pos = x[1:]
    z0 = np.real(hurwitz_Z(0.0, alpha, x_pos))
    interior = x_pos < math.pi
    zero_positive = bool(np.all(z0[interior] > 0.0))
    zero_offset = float(np.max(x_pos ** (-alpha) - z0))

    cert = HurwitzCertificate(
        alpha=alpha, epsilon=epsilon, exponent=p, exponent_fit=exponent_fit,
        C=c_zero, C_eps=c_eps, zero_offset=zero_offset, zero_positive=zero_positive,
        lambda_range=(float(lambdas.min()), float(lambdas.max())),
        passed=exponent_fit <= 1.0 - alpha + 0.1 and zero_positive,
    )
    logger.info(f"Hurwitz growth fit alpha={alpha:g}",
                data={"exponent_fit": exponent_fit, "C": cert.C, "C_eps": cert.C_eps},
                category="certificates")
    return cert
