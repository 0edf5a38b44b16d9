import math

import mpmath
import numpy as np
import pytest
from scipy.special import gamma

from fraclab.core.constants import riesz_constant
from fraclab.core.errors import DivergentWeightError, InsufficientGridError, ParameterRangeError
from fraclab.core.profiles import line_bump
from fraclab.core.quadrature import fourier_segment
from fraclab.mellin.certificates import compare_golden, decay_certificate, golden_values, sign_certificate
from fraclab.mellin.hurwitz import hurwitz_growth_fit, hurwitz_Z, periodic_weight
from fraclab.mellin.lemma import mellin_lemma_check
from fraclab.mellin.multipliers import MultiplierTable, build_table, eval_A0, eval_B, eval_B0, eval_m
from fraclab.mellin.transform import end_behaviour, mellin, parseval_residual, weighted
from fraclab.operators.oracle import kernel_oracle


def table(values, grid=None, kind="B0"):
    values = np.asarray(values, dtype=complex)
    grid = np.arange(values.size, dtype=float) if grid is None else np.asarray(grid, dtype=float)
    return MultiplierTable(kind=kind, lambda_grid=grid, values=values, epsilon=0.0, exponent=0.5)


class TestTransform:
    def test_gamma_at_zero(self):
        assert mellin(lambda x: x * math.exp(-x), 0.0).real == pytest.approx(1.0, rel=1e-8)

    @pytest.mark.parametrize("lam", [0.7, 2.0, -1.5])
    def test_gamma_line(self, lam):
        value = mellin(lambda x: x * math.exp(-x), lam)
        expected = complex(gamma(complex(1.0, lam)))
        assert abs(value - expected) <= 1e-7 * abs(expected)

    def test_limits_subtracted(self):
        value = mellin(lambda x: math.exp(-x), 2.0)
        expected = complex(mpmath.gamma(2j))
        assert abs(value - expected) <= 1e-6 * abs(expected)

    def test_divergent_at_zero(self):
        with pytest.raises(DivergentWeightError):
            mellin(lambda x: math.exp(-x), 0.0)

    def test_indicator_of_unit_interval(self):
        value = mellin(lambda x: 1.0 if x < 1.0 else 0.0, 2.0)
        assert abs(value - (-0.5j)) <= 1e-8

    def test_exponential_at_one(self):
        value = mellin(lambda x: math.exp(-x), 1.0)
        expected = complex(mpmath.gamma(1j))
        assert abs(value - expected) <= 1e-7 * abs(expected)

    def test_dilation(self):
        scaled = mellin(lambda x: math.exp(-2.0 * x), 1.0)
        assert abs(scaled - 2.0 ** -1j * mellin(lambda x: math.exp(-x), 1.0)) <= 1e-7

    @pytest.mark.parametrize("lam", [0.0, 1.0, 5.0])
    def test_slowly_vanishing_at_zero(self, lam):
        # x^0.1 is still 0.06 at x = 1e-12, so there is no limit to subtract
        value = mellin(lambda x: x ** 0.1 * math.exp(-x), lam)
        expected = complex(gamma(complex(0.1, lam)))
        assert abs(value - expected) <= 1e-6 * abs(expected)

    def test_slowly_vanishing_at_infinity(self):
        value = mellin(lambda x: x / (1.0 + x) ** 1.1, 0.0)
        # Beta(1, 0.1)
        assert value.real == pytest.approx(10.0, rel=1e-6)

    def test_end_behaviour(self):
        kind, value, _ = end_behaviour(lambda x: math.exp(-x), 1e-12, 1e-9)
        assert kind == "limit" and value == pytest.approx(1.0)
        kind, _, power = end_behaviour(lambda x: x ** 0.3, 1e-12, 1e-9)
        assert kind == "power" and power == pytest.approx(0.3)
        with pytest.raises(DivergentWeightError):
            end_behaviour(lambda x: x ** -0.2, 1e-12, 1e-9)
        with pytest.raises(DivergentWeightError):
            end_behaviour(lambda x: x - 5e-10, 1e-12, 1e-9)


class TestParseval:
    def test_zero_function(self):
        report = parseval_residual(lambda x: 0.0, lambda x: x * math.exp(-x))
        assert report.lhs == 0.0 and report.residual == 0.0
        assert not report.inconclusive

    @pytest.mark.slow
    def test_same_function(self):
        u = lambda x: x * math.exp(-x)
        report = parseval_residual(u, u)
        assert report.lhs == pytest.approx(0.25, rel=1e-9)
        assert report.residual <= 1e-6
        assert not report.inconclusive

    @pytest.mark.slow
    def test_mixed_powers(self):
        report = parseval_residual(lambda x: x * x * math.exp(-x), lambda x: x * math.exp(-x))
        assert report.lhs == pytest.approx(0.25, rel=1e-9)
        assert report.residual <= 1e-6


class TestMultipliers:
    def test_parameter_range(self):
        with pytest.raises(ParameterRangeError):
            eval_m(1.0, 0.6, 0.5)
        with pytest.raises(ParameterRangeError):
            eval_B0(0.0, 0.5)
        with pytest.raises(ParameterRangeError):
            eval_A0(1.0, 1.2)

    def test_b_is_conj_m_times_factor(self):
        m = eval_m(2.0, 0.01, 0.5)
        assert eval_B(2.0, 0.01, 0.5) == pytest.approx(m.conjugate() * complex(1.49, 2.0))

    def test_m_conjugate_symmetry(self):
        assert eval_m(-3.0, 0.01, 0.5) == pytest.approx(eval_m(3.0, 0.01, 0.5).conjugate(), rel=1e-9)

    def test_m_at_zero_has_simple_pole(self):
        # near x = 0 the kernel is 2 beta x, so eps m(0, eps, beta) -> 2 beta c_beta
        leading = 2.0 * 0.5 * riesz_constant(0.5)
        coarse, fine = eval_m(0.0, 1e-2, 0.5), eval_m(0.0, 1e-3, 0.5)
        assert math.isfinite(coarse.real) and coarse.real > 0.0
        assert abs(coarse.imag) <= 1e-8 * abs(coarse)
        assert abs(1e-3 * fine.real - leading) <= 0.2 * abs(1e-2 * coarse.real - leading) + 1e-6

    def test_b0_routes_agree_and_nonnegative(self):
        assert eval_B0(2.0, 0.5, check=True) >= -1e-8

    @pytest.mark.parametrize("lam", [0.5, 5.0, 20.0])
    def test_b0_sign(self, lam):
        assert eval_B0(lam, 0.5, check=False) >= -1e-8

    @pytest.mark.parametrize("alpha", [0.3, 0.7])
    def test_a0_sign(self, alpha):
        for lam in (0.5, 3.0, 15.0):
            assert eval_A0(lam, alpha, method="regularized") <= 1e-8

    def test_a0_even(self):
        assert eval_A0(-3.0, 0.5, method="regularized", check=False) == \
            eval_A0(3.0, 0.5, method="regularized", check=False)

    def test_table_record_roundtrip(self):
        t = table([1.0 + 2.0j, -0.5], kind="m")
        back = MultiplierTable.from_record(t.to_record())
        np.testing.assert_array_equal(back.values, t.values)
        assert back.kind == "m" and not back.is_real


class TestHurwitz:
    def test_series_matches_mpmath(self):
        x = np.array([0.5, 1.5, 3.0])
        series = hurwitz_Z(3.0, 0.5, x)
        reference = hurwitz_Z(3.0, 0.5, x, method="mpmath")
        np.testing.assert_allclose(series, reference, rtol=1e-9)

    def test_zero_at_pi(self):
        assert abs(hurwitz_Z(0.0, 0.5, math.pi)) < 1e-10

    def test_singular_at_origin(self):
        with pytest.raises(ParameterRangeError):
            hurwitz_Z(1.0, 0.5, 0.0)

    def test_periodic_weight_folds_line_weight(self):
        n = np.arange(200000)
        direct = np.sum((1.0 + 2.0 * math.pi * n) ** -2.0)
        tail = 1.0 / ((2.0 * math.pi) ** 2 * (n.size - 0.5))
        assert periodic_weight(1.0, 2.0) == pytest.approx(direct + tail, rel=1e-9)

    def test_periodic_weight_power(self):
        with pytest.raises(ParameterRangeError):
            periodic_weight(1.0, 1.0)


class TestCertificates:
    def test_sign_pass(self):
        cert = sign_certificate(table([0.1, -1e-9, 0.2]), sign=1)
        assert cert.passed and cert.worst == pytest.approx(-1e-9)

    def test_sign_fail_reports_location(self):
        cert = sign_certificate(table([-0.3, 0.1, 0.2], grid=[4.0, 5.0, 6.0]), sign=-1)
        assert not cert.passed
        assert cert.worst_lambda == 6.0

    def test_decay_fit(self):
        lam = np.geomspace(5.0, 200.0, 60)
        cert = decay_certificate(table(3.0 * lam ** -1.5, grid=lam, kind="A0"), expected_exponent=-1.5)
        assert cert.exponent_fit == pytest.approx(-1.5, abs=1e-10)
        assert cert.constant_fit == pytest.approx(3.0, rel=1e-9)
        assert cert.passed

    def test_constant_table_fails_decay(self):
        lam = np.geomspace(5.0, 200.0, 40)
        cert = decay_certificate(table(np.ones(40), grid=lam), expected_exponent=-0.5)
        assert cert.exponent_fit == pytest.approx(0.0, abs=1e-12)
        assert not cert.passed

    def test_decay_fit_needs_points(self):
        lam = np.geomspace(5.0, 200.0, 10)
        with pytest.raises(InsufficientGridError):
            decay_certificate(table(lam ** -1.0, grid=lam), expected_exponent=-1.0)

    def test_golden_roundtrip(self, tmp_path):
        path = str(tmp_path / "golden.json")
        values = {"a": 1.0, "b": -2.5}
        assert compare_golden(path, values=values).created
        again = compare_golden(path, values=values)
        assert again.passed and not again.created
        drifted = compare_golden(path, values={"a": 1.0, "b": -2.6})
        assert set(drifted.mismatches) == {"b"}


@pytest.mark.slow
def test_lemma_limit():
    report = mellin_lemma_check(line_bump(1, 2), 0.5, [1e-1, 1e-2, 1e-3])
    assert report.errors[-1] <= 1e-3
    assert report.passed


@pytest.mark.slow
class TestFactorization:
    """M[x^{eps-1} Lambda^beta H u] = m (i lam + eps - 1 - beta) M[x^{eps-beta-1} u] for u = x^2 (1-x^2)^2."""

    EPS = 0.01
    BETA = 0.5

    def operator_side(self, u, lam):
        f = lambda x: kernel_oracle(u, self.BETA, x, "hilbert_lambda")
        # f is odd and smooth at 0: slope from a Richardson pair, then f ~ slope x on (0, delta)
        h = 1e-2
        slope = (4.0 * f(h) / h - f(2.0 * h) / (2.0 * h)) / 3.0
        delta = 1e-3
        z = complex(self.EPS, lam)
        head = slope * delta ** z / z
        g = lambda t: math.exp((self.EPS - 1.0) * t) * f(math.exp(t))
        inner, _ = fourier_segment(g, math.log(delta), 0.0, lam)
        outer, _ = fourier_segment(g, 0.0, 15.0, lam)
        return head + inner + outer

    @pytest.mark.parametrize("lam", [0.0, 1.0, 5.0])
    def test_factorization(self, bump_field, lam):
        left = self.operator_side(bump_field, lam)
        weight = mellin(weighted(line_bump(1, 2), self.EPS - self.BETA - 1.0), lam)
        right = eval_m(lam, self.EPS, self.BETA) * complex(self.EPS - 1.0 - self.BETA, lam) * weight
        assert abs(left - right) <= 1e-4 * abs(right)


@pytest.mark.slow
class TestDecayTables:
    LAMBDAS = np.geomspace(5.0, 200.0, 40)

    def test_a0_decay(self):
        cert = decay_certificate(build_table("A0", self.LAMBDAS, 0.0, 0.5), expected_exponent=-1.5)
        assert -1.6 <= cert.exponent_fit <= -1.4
        assert cert.passed

    def test_a_parts_decay(self):
        values = build_table("A", self.LAMBDAS, 1e-3, 0.5)
        assert decay_certificate(values, -0.5, part="im").exponent_fit <= -0.4
        assert decay_certificate(values, -1.5, part="re").exponent_fit <= -1.4

    def test_hurwitz_growth(self):
        cert = hurwitz_growth_fit(0.5)
        assert cert.exponent_fit <= 0.6
        assert cert.zero_positive and cert.passed

    def test_golden_values_reproduce(self, tmp_path):
        values = golden_values()
        assert all(math.isfinite(v) for v in values.values())
        path = str(tmp_path / "golden.json")
        assert compare_golden(path, values=values).created
        assert compare_golden(path).passed
