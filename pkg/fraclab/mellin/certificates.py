"""
Sign and decay certificates for multiplier tables, plus the golden-value
regression fixtures.
"""

import math
import os
from typing import Dict, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from fraclab.core.errors import InsufficientGridError
from fraclab.mellin.hurwitz import hurwitz_Z
from fraclab.mellin.multipliers import MultiplierTable, eval_A0, eval_B0, eval_m, eval_mp
from fraclab.utils.helpers import power_law_fit, read_json, write_json
from fraclab.utils.xlogger import logger

DECAY_RANGE = (5.0, 200.0)
MIN_DECAY_POINTS = 40
DECAY_SLACK = 0.1


class DecayCertificate(BaseModel):
    """Power-law fit |value| ~ constant_fit |lam|^{exponent_fit} over lambda_range."""

    model_config = ConfigDict(frozen=True)

    kind: str
    part: str
    exponent_fit: float
    constant_fit: float
    residual: float
    lambda_range: tuple
    expected_exponent: float
    passed: bool

    def to_record(self) -> Dict:
        return {
            "kind": self.kind,
            "grid": list(self.lambda_range),
            "exponent_fit": self.exponent_fit,
            "constant_fit": self.constant_fit,
            "residual": self.residual,
            "pass": self.passed,
        }


def decay_certificate(table: MultiplierTable, expected_exponent: float,
                      part: Literal["abs", "re", "im"] = "abs") -> DecayCertificate:
    """
    Fit log|value| against log|lam| over |lam| in [5, 200].

    Args:
        table: Multiplier table
        expected_exponent: Decay exponent the certificate is checked against
        part: Which component of the values to fit

    Returns:
        DecayCertificate, passing when exponent_fit <= expected + 0.1

    Raises:
        InsufficientGridError: fewer than 40 grid points with |lam| in [5, 200]
    """
    lo, hi = DECAY_RANGE
    lam = np.abs(table.lambda_grid)
    mask = (lam >= lo) & (lam <= hi)
    if int(np.count_nonzero(mask)) < MIN_DECAY_POINTS:
        raise InsufficientGridError(
            f"decay fit needs >= {MIN_DECAY_POINTS} points with |lam| in [{lo:g}, {hi:g}], "
            f"got {int(np.count_nonzero(mask))}"
        )
    values = table.component(part)[mask]
    exponent, constant, residual = power_law_fit(lam[mask], values)
    cert = DecayCertificate(
        kind=table.kind, part=part, exponent_fit=exponent, constant_fit=constant,
        residual=residual, lambda_range=(float(lam[mask].min()), float(lam[mask].max())),
        expected_exponent=expected_exponent,
        passed=exponent <= expected_exponent + DECAY_SLACK,
    )
    logger.info(f"Decay certificate for {table.kind}/{part}",
                data={"exponent_fit": exponent, "expected": expected_exponent, "pass": cert.passed},
                category="certificates")
    return cert


class SignCertificate(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: str
    exponent: float
    sign: int
    worst: float
    worst_lambda: float
    tol: float
    passed: bool


def sign_certificate(table: MultiplierTable, sign: int = 1, tol: float = 1e-8) -> SignCertificate:
    """
    Check sign * Re(value) >= -tol over the whole table.

    sign = +1 certifies B0 >= 0, sign = -1 certifies A0 <= 0.
    """
    signed = sign * np.real(table.values)
    i = int(np.argmin(signed))
    worst = float(signed[i])
    cert = SignCertificate(kind=table.kind, exponent=table.exponent, sign=sign, worst=worst,
                           worst_lambda=float(table.lambda_grid[i]), tol=tol, passed=worst >= -tol)
    if not cert.passed:
        logger.warning(f"Sign certificate failed for {table.kind}",
                       data=cert.model_dump(), category="certificates")
    return cert


# --------------------------------------------------------------------------
# Golden values
# --------------------------------------------------------------------------

def golden_values() -> Dict[str, float]:
    """Multiplier values at canonical points, flattened to real numbers."""
    m = eval_m(0.0, 0.01, 0.5)
    m3 = eval_m(3.0, 0.01, 0.5)
    mp = eval_mp(2.0, 0.01, 0.5)
    z = hurwitz_Z(1.0, 0.5, math.pi / 2.0)
    return {
        "m(0,0.01,0.5).re": m.real,
        "m(3,0.01,0.5).re": m3.real,
        "m(3,0.01,0.5).im": m3.imag,
        "m_p(2,0.01,0.5).re": mp.real,
        "m_p(2,0.01,0.5).im": mp.imag,
        "B0(2,0.5)": eval_B0(2.0, 0.5),
        "A0(2,0.5)": eval_A0(2.0, 0.5, method="regularized"),
        "Z(1,0.5,pi/2).re": float(np.real(z)),
        "Z(1,0.5,pi/2).im": float(np.imag(z)),
    }


class GoldenComparison(BaseModel):
    path: str
    created: bool
    mismatches: Dict[str, tuple]

    @property
    def passed(self) -> bool:
        return not self.mismatches


def compare_golden(path: str, rtol: float = 1e-8, values: Optional[Dict[str, float]] = None) -> GoldenComparison:
    """
    Compare current golden values with the frozen file at ``path``.

    The file is written on first use; later runs report every entry whose
    relative deviation exceeds ``rtol``.
    """
    values = golden_values() if values is None else values
    if not os.path.exists(path):
        write_json(path, {"provenance": "first certified run", "values": values})
        logger.info(f"Froze golden values at {path}", category="certificates")
        return GoldenComparison(path=path, created=True, mismatches={})
    frozen = read_json(path)["values"]
    mismatches = {}
    for key, expected in frozen.items():
        current = values.get(key)
        if current is None or abs(current - expected) > rtol * max(abs(expected), 1e-300):
            mismatches[key] = (expected, current)
    if mismatches:
        logger.warning("Golden values drifted", data={"mismatches": mismatches}, category="certificates")
    return GoldenComparison(path=path, created=False, mismatches=mismatches)
