"""Selftest command: fast operator and identity checks with pass/fail thresholds."""

import math
import time
from typing import Callable, List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from fraclab.core.field import Field
from fraclab.core.grid import Grid
from fraclab.core.profiles import line_bump, one_minus_cos
from fraclab.evolution.rhs import rhs_cht
from fraclab.evolution.selfsim import selfsim_profile_check
from fraclab.inequalities.alpha_one import alpha1_weighted_identity, cotlar_residual, riccati_closure_residual
from fraclab.inequalities.bounds import c1_report, first_integral
from fraclab.mellin.hurwitz import hurwitz_Z
from fraclab.operators.oracle import kernel_oracle
from fraclab.operators.spectral import velocity
from fraclab.tools.base import BaseCommand, CommandResult
from fraclab.utils.xlogger import logger

EXPONENT_GRID = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)


class Check(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    value: float
    threshold: float
    passed: bool
    seconds: float


def random_trig_polynomials(n: int, seed: int, grid: Grid, modes: int = 8) -> List[Field]:
    """Seeded mean-zero real trigonometric polynomials of degree <= modes."""
    rng = np.random.default_rng(seed)
    fields = []
    for _ in range(n):
        coeffs = np.zeros(grid.n_modes, dtype=complex)
        coeffs[1:modes + 1] = rng.normal(size=modes) + 1j * rng.normal(size=modes)
        fields.append(Field.from_coeffs(grid, coeffs))
    return fields


def operator_agreement(alpha: float, n_points: int = 32) -> float:
    """Relative max difference of the spectral velocity and the oracle on 1 - cos x."""
    u = Field.from_profile(Grid.torus(256), one_minus_cos())
    x = 2.0 * math.pi * (np.arange(n_points) + 0.5) / n_points
    spectral = velocity(u, alpha).interpolate(x)
    oracle = np.array([kernel_oracle(u, alpha, xi, "lambda_hilbert") for xi in x])
    return float(np.max(np.abs(spectral - oracle)) / np.max(np.abs(spectral)))


def cotlar_worst(seed: int, n: int = 20) -> float:
    return max(cotlar_residual(u) for u in random_trig_polynomials(n, seed, Grid.torus(128)))


def weighted_identity_error() -> float:
    u = Field.from_profile(Grid.line(), line_bump(1, 2))
    report = alpha1_weighted_identity(u)
    return abs(report.margin) / max(abs(report.lhs), abs(report.rhs))


def closed_form_error() -> float:
    return max(abs(first_integral(a) - 2.0 ** (1.0 - a) / (a - 1.0)) for a in EXPONENT_GRID)


def c1_worst() -> float:
    """Smallest C1 when both routes agree, -inf as soon as one alpha fails."""
    worst = math.inf
    for a in EXPONENT_GRID:
        report = c1_report(a)
        if not report.agree:
            return -math.inf
        worst = min(worst, report.c1)
    return worst


def rhs_example_error() -> float:
    grid = Grid.torus(64)
    u = Field.from_profile(grid, one_minus_cos())
    x = grid.signed_nodes
    return float(np.max(np.abs(rhs_cht(u, 0.5).values - (np.cos(x) - np.cos(2.0 * x)))))


def riccati_closure_error() -> float:
    return riccati_closure_residual(Field.from_profile(Grid.torus(256), one_minus_cos()))


def hurwitz_zero() -> float:
    return float(abs(hurwitz_Z(0.0, 0.5, math.pi)))


def selfsim_worst() -> float:
    reports = [selfsim_profile_check(a) for a in (1.0, 1.2, 1.5)]
    return 0.0 if all(r.passed for r in reports) else max(r.fit_residual for r in reports)


class SelftestCommand(BaseCommand):
    """Operator cross-validation and the exact identities; nonzero exit on any failure."""

    category = "cli"

    def __init__(self):
        super().__init__()
        self.name = "selftest"

    def suite(self, seed: int) -> List[Tuple[str, Callable[[], float], float, bool]]:
        """(name, measure, threshold, lower_is_better) for every check."""
        checks = [(f"operators_alpha_{a:g}", (lambda a=a: operator_agreement(a)), 1e-4, True)
                  for a in (0.3, 0.5, 0.7)]
        checks += [
            ("cotlar_identity", lambda: cotlar_worst(seed), 1e-10, True),
            ("alpha1_weighted_identity", weighted_identity_error, 1e-6, True),
            ("closed_form_integral", closed_form_error, 1e-8, True),
            ("c1_positive", c1_worst, 0.0, False),
            ("rhs_cht_example", rhs_example_error, 1e-12, True),
            ("riccati_closure", riccati_closure_error, 1e-10, True),
            ("hurwitz_zero_at_pi", hurwitz_zero, 1e-10, True),
            ("selfsim_profile", selfsim_worst, 1e-3, True),
        ]
        return checks

    def execute(self, config, out_dir: str) -> CommandResult:
        try:
            results: List[Check] = []
            failures: List[str] = []
            for name, measure, threshold, lower in self.suite(config.seed):
                start = time.perf_counter()
                try:
                    value = float(measure())
                    passed = value <= threshold if lower else value > threshold
                except Exception as e:
                    logger.error(f"Check {name} raised {type(e).__name__}: {e}", category=self.category)
                    value, passed = math.nan, False
                check = Check(name=name, value=value, threshold=threshold, passed=passed,
                              seconds=time.perf_counter() - start)
                results.append(check)
                if not passed:
                    failures.append(f"{name}: {value:.3e} (threshold {threshold:.1e})")
                logger.info(f"selftest {name}: {'ok' if passed else 'FAILED'}",
                            data=check.model_dump(), category=self.category)
            artifacts: List[str] = []
            self.emit(out_dir, "selftest.json", results, artifacts)
            return self.format_result({"checks": len(results), "failed": len(failures)},
                                      failures=failures, artifacts=artifacts)
        except Exception as e:
            return self.handle_error(e)
