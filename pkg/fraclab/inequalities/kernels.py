"""
Real kernels behind the multiplier sign lemmas, vectorized over x.

Line case, exponent b = beta, on 0 < x < 1:
    P(x)     = c_b ((1-x)^{-b} - (1+x)^{-b})
    F(x,e)   = b x^{e-2} K + (x^{e-1} - x^{1+b-e}) K'        (K = P / c_b)
    G0(x)    = d/dx (x F(x, 0))
    f(x)     = (1-x)^{-3-b} (2 + (3+b) x (-2 + (2+b) x) - (1+b)(2+b) x |x|^{2+b})
    d/ds f(sx) = (1+b)(2+b)(3+b) s^2 x^3 (1-sx)^{-4-b} (1 - |s|^b x^b)
Periodic case, exponent a = alpha:
    F_p(x,e) = -x^{e-2} K + x^{a-e} R                          (R = (1-x)^{-a} + (1+x)^{-a})
    G_p(x)   = d/dx (x F_p(x, 0))
"""

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from fraclab.core.constants import riesz_constant


def _rising(e: float, j: int) -> float:
    out = 1.0
    for i in range(j):
        out *= e + i
    return out


def _diff(x: np.ndarray, q: float) -> np.ndarray:
    """(1-x)^{-q} - (1+x)^{-q} without cancellation at small x."""
    return np.expm1(-q * np.log1p(-x)) - np.expm1(-q * np.log1p(x))


def _sum(x: np.ndarray, q: float) -> np.ndarray:
    return (1.0 - x) ** (-q) + (1.0 + x) ** (-q)


def k_derivative(x, e: float, j: int) -> np.ndarray:
    """j-th derivative of K(x) = (1-x)^{-e} - (1+x)^{-e}."""
    x = np.asarray(x, dtype=float)
    p = _rising(e, j)
    return p * (_sum(x, e + j) if j % 2 else _diff(x, e + j))


class AnalyticKernel(BaseModel):
    """The kernels for one exponent in (0, 1)."""

    model_config = ConfigDict(frozen=True)

    exponent: float

    @field_validator("exponent")
    @classmethod
    def _in_range(cls, value: float) -> float:
        if not 0.0 < value < 1.0:
            raise ValueError(f"exponent must lie in (0, 1), got {value}")
        return value

    def P(self, x) -> np.ndarray:
        return riesz_constant(self.exponent) * k_derivative(x, self.exponent, 0)

    def F(self, x, eps: float = 0.0) -> np.ndarray:
        b = self.exponent
        x = np.asarray(x, dtype=float)
        k0, k1 = k_derivative(x, b, 0), k_derivative(x, b, 1)
        return b * x ** (eps - 2.0) * k0 + (x ** (eps - 1.0) - x ** (1.0 + b - eps)) * k1

    def G0(self, x) -> np.ndarray:
        b = self.exponent
        x = np.asarray(x, dtype=float)
        k0, k1, k2 = (k_derivative(x, b, j) for j in range(3))
        return b * (k1 / x - k0 / x ** 2) - (2.0 + b) * x ** (1.0 + b) * k1 + (1.0 - x ** (2.0 + b)) * k2

    def G0_prime(self, x) -> np.ndarray:
        b = self.exponent
        x = np.asarray(x, dtype=float)
        k0, k1, k2, k3 = (k_derivative(x, b, j) for j in range(4))
        return (b * (k2 / x - 2.0 * k1 / x ** 2 + 2.0 * k0 / x ** 3)
                - (2.0 + b) * (1.0 + b) * x ** b * k1
                - 2.0 * (2.0 + b) * x ** (1.0 + b) * k2
                + (1.0 - x ** (2.0 + b)) * k3)

    def f(self, x) -> np.ndarray:
        b = self.exponent
        x = np.asarray(x, dtype=float)
        poly = 2.0 + (3.0 + b) * x * (-2.0 + (2.0 + b) * x) - (1.0 + b) * (2.0 + b) * x * np.abs(x) ** (2.0 + b)
        return (1.0 - x) ** (-3.0 - b) * poly

    def ds_f(self, s, x) -> np.ndarray:
        """d/ds f(s x) for -1 < s < 1 and 0 < x < 1."""
        b = self.exponent
        s = np.asarray(s, dtype=float)
        x = np.asarray(x, dtype=float)
        return ((1.0 + b) * (2.0 + b) * (3.0 + b) * s ** 2 * x ** 3
                * (1.0 - s * x) ** (-4.0 - b) * (1.0 - np.abs(s) ** b * x ** b))

    def F_periodic(self, x, eps: float = 0.0) -> np.ndarray:
        a = self.exponent
        x = np.asarray(x, dtype=float)
        return -x ** (eps - 2.0) * _diff(x, a) + x ** (a - eps) * _sum(x, a)

    def G_periodic(self, x) -> np.ndarray:
        a = self.exponent
        x = np.asarray(x, dtype=float)
        y = 1.0 - x
        return (_diff(x, a) / x ** 2
                + (1.0 + a) * x ** a * _sum(x, a)
                + a * y ** (-a - 1.0) * (x ** (1.0 + a) - 1.0 / x)
                - a * (1.0 + x) ** (-a - 1.0) * (1.0 / x + x ** (1.0 + a)))
