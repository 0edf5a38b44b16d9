"""
Analytically continued Hurwitz zeta by Euler-Maclaurin summation.

zeta(s, a) = sum_{n<N} (n+a)^{-s} + (N+a)^{1-s}/(s-1) + (N+a)^{-s}/2
             + sum_k B_2k/(2k)! (s)_{2k-1} (N+a)^{-s-2k+1}

Vectorized over a, valid for complex s != 1 and a > 0. scipy.special.zeta
only covers real s > 1; mpmath.zeta is the reference used in tests.
"""

import math
from typing import Optional

import numpy as np
from scipy.special import bernoulli

from fraclab.core.errors import ParameterRangeError

_CORRECTIONS = 6
_B2K = bernoulli(2 * _CORRECTIONS)[2::2]
_EM_COEFFS = [float(_B2K[k - 1]) / math.factorial(2 * k) for k in range(1, _CORRECTIONS + 1)]


def default_terms(s: complex) -> int:
    return max(32, int(2.0 * abs(s)) + 16)


def hurwitz_zeta(s: complex, a, n_terms: Optional[int] = None):
    """
    zeta(s, a) for every entry of a (a > 0).

    Args:
        s: Real or complex exponent, s != 1
        a: Scalar or array of positive shifts
        n_terms: Terms summed explicitly; defaults to max(32, 2|s| + 16)

    Returns:
        Array (or scalar) of the same shape as a; real when s is real
    """
    if s == 1:
        raise ParameterRangeError("hurwitz_zeta has a pole at s = 1")
    a_arr = np.asarray(a, dtype=float)
    if np.any(a_arr <= 0.0):
        raise ParameterRangeError("hurwitz_zeta needs a > 0")
    n_terms = default_terms(s) if n_terms is None else n_terms
    is_real = not isinstance(s, complex) or s.imag == 0.0
    s_val = float(s.real) if is_real else complex(s)

    flat = a_arr.reshape(-1)
    bases = flat[:, None] + np.arange(n_terms)[None, :]
    partial = np.sum(bases ** (-s_val), axis=1)

    t = flat + n_terms
    total = partial + t ** (1.0 - s_val) / (s_val - 1.0) + 0.5 * t ** (-s_val)
    poch = s_val
    for k, coeff in enumerate(_EM_COEFFS, start=1):
        total = total + coeff * poch * t ** (-s_val - 2 * k + 1)
        poch = poch * (s_val + 2 * k - 1) * (s_val + 2 * k)

    result = total.reshape(a_arr.shape)
    return result.item() if result.ndim == 0 else result


def periodic_pair(s: complex, z, sign: int):
    """
    (2 pi)^{-s} [zeta(s, 1 + z/2pi) + sign * zeta(s, 2 - z/2pi)] for z in [0, 2 pi].

    This is the smooth part of the periodized kernels |z|^{-s} (sign=+1) and
    sign(z)|z|^{-s} (sign=-1) once the two nearest images z^{-s} and
    (2 pi - z)^{-s} are taken out.
    """
    q = np.asarray(z, dtype=float) / (2.0 * math.pi)
    scale = (2.0 * math.pi) ** (-s)
    return scale * (hurwitz_zeta(s, 1.0 + q) + sign * hurwitz_zeta(s, 2.0 - q))
