"""Risk estimators against closed forms and the Monte-Carlo oracles."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ccrisk.gaussian import GaussianVec
from ccrisk.risk import (
    dth_order_value,
    mc_risk,
    mc_sector_probability,
    risk_dth_order,
    risk_exact_1d,
    risk_first_order,
    risk_nakka_chung,
    risk_norm_spectral,
    risk_spectral,
    wilson_interval,
)
from ccrisk.special import psi, sector_fraction, std_normal_cdf

U0 = np.array([0.15567, 0.42294, -0.033632])
SIGMA_U0 = np.array(
    [
        [1.49e-6, -6.68e-6, -1.28e-7],
        [-6.68e-6, 1.23e-4, 1.91e-6],
        [-1.28e-7, 1.91e-6, 4.36e-8],
    ]
)


def scalar(mean, var):
    return GaussianVec([mean], [[var]])


class TestExact1d:
    def test_mean_zero(self):
        assert risk_exact_1d(scalar(0.0, 1.0)).value == pytest.approx(0.5)

    def test_benchmark_scalar_constraint(self):
        est = risk_exact_1d(scalar(-0.048070, 1.01e-4))
        assert est.value == pytest.approx(1 - std_normal_cdf(4.7832), rel=1e-3)
        assert est.value == pytest.approx(8.6e-7, abs=5e-8)

    def test_one_sigma(self):
        assert risk_exact_1d(scalar(-1.0, 1.0)).value == pytest.approx(0.158655, abs=1e-6)

    def test_rejects_nonscalar(self):
        with pytest.raises(ValueError):
            risk_exact_1d(GaussianVec([0.0, 0.0], np.eye(2)))


class TestNakkaChung:
    def test_benchmark_value(self):
        est = risk_nakka_chung(scalar(-0.048070, 1.01e-4))
        assert est.value == pytest.approx(1.01e-4 / (1.01e-4 + 0.048070**2), rel=1e-12)
        assert est.value == pytest.approx(0.0419, abs=2e-4)

    def test_zero_mean(self):
        assert risk_nakka_chung(scalar(0.0, 2.0)).value == 1.0

    def test_one_sigma(self):
        assert risk_nakka_chung(scalar(-2.0, 4.0)).value == pytest.approx(0.5)

    def test_positive_mean_undefined(self):
        est = risk_nakka_chung(scalar(0.1, 1.0))
        assert not est.defined and est.value is None


class TestNormSpectral:
    def test_benchmark_value(self):
        est = risk_norm_spectral(U0, SIGMA_U0, 0.5)
        assert est.defined
        assert est.value == pytest.approx(0.035, abs=1e-3)

    def test_low_dim_closed_form(self):
        est = risk_norm_spectral([1.0], [[1.0]], 2.0)  # margin -1, rho 1
        assert est.value == pytest.approx(math.exp(-0.5), rel=1e-12)

    def test_high_dim_existence_condition(self):
        # margin/rho = -1 but sqrt(5) > 1: no real risk level exists
        est = risk_norm_spectral([2.0, 0, 0, 0, 0], np.eye(5), 3.0)
        assert not est.defined

    def test_violated_nominal_rejected(self):
        with pytest.raises(ValueError):
            risk_norm_spectral([3.0], [[1.0]], 2.0)


class TestSpectral:
    def test_zero_mean(self):
        assert risk_spectral(GaussianVec([0.0, 0.0], np.eye(2))).value == 1.0

    def test_example_closed_form(self, example_2d):
        lam_max = 1.05 + math.sqrt(0.6425)
        expected = math.exp(-0.5 / lam_max)
        assert risk_spectral(example_2d).value == pytest.approx(expected, rel=1e-10)
        assert risk_spectral(example_2d).value == pytest.approx(0.7632, abs=2e-4)

    def test_scalar(self):
        assert risk_spectral(scalar(-2.0, 1.0)).value == pytest.approx(psi(2.0, 1), rel=1e-12)

    def test_positive_mean_undefined(self):
        assert not risk_spectral(GaussianVec([0.1, -1.0], np.eye(2))).defined


class TestFirstOrder:
    def test_benchmark_scalar(self):
        est = risk_first_order(scalar(-0.048070, 1.01e-4))
        assert est.value == pytest.approx(psi(4.7832, 1), rel=1e-3)
        assert est.value == pytest.approx(1.7e-6, abs=1e-7)

    def test_example(self, example_2d):
        assert risk_first_order(example_2d).value == pytest.approx(math.exp(-0.5), rel=1e-10)

    def test_zero_mean(self):
        assert risk_first_order(GaussianVec([0.0, 0.0, 0.0], np.eye(3))).value == 1.0


class TestDthOrder:
    def test_d1_equals_first_order(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            g = scalar(-float(rng.uniform(0, 4)), float(rng.uniform(0.1, 3)))
            assert risk_dth_order(g).value == risk_first_order(g).value

    @pytest.mark.parametrize("d,a", [(2, 1.0), (3, 2.0), (6, 0.5)])
    def test_equal_radii_collapse(self, d, a):
        g = GaussianVec(-a * np.ones(d), np.eye(d))
        assert risk_dth_order(g).value == pytest.approx(psi(a, d), rel=1e-12)

    def test_example_bracketed_by_mc(self, example_2d):
        value = risk_dth_order(example_2d).value
        first = risk_first_order(example_2d).value
        mc = mc_risk(example_2d, 10**7, 3)
        assert mc.estimate - 5 * mc.ci_halfwidth <= value <= first

    def test_zero_radius_convention(self):
        # one active constraint (zero margin): its shell has zero width and
        # the other contributes a half-plane cut. Closed form at d = 2:
        # 1 - (psi(0) - psi(2)) * (1 - 1/2) = 1/2 + exp(-2)/2
        g = GaussianVec([0.0, -2.0], np.eye(2))
        expected = 0.5 + 0.5 * math.exp(-2.0)
        assert risk_dth_order(g).value == pytest.approx(expected, rel=1e-12)
        assert math.isfinite(dth_order_value([0.0, 0.0, 1.5]))

    def test_bracket_invariant(self):
        rng = np.random.default_rng(4)
        for _ in range(50):
            d = int(rng.integers(2, 9))
            radii = rng.uniform(0, 5, size=d)
            value = dth_order_value(radii)
            r_sorted = np.sort(radii)
            assert psi(r_sorted[-1], d) <= value <= psi(r_sorted[0], d)

    def test_chain_ordering_exact(self):
        rng = np.random.default_rng(6)
        for _ in range(100):
            d = int(rng.integers(1, 8))
            a = rng.normal(size=(d, d))
            cov = a @ a.T + 0.05 * np.eye(d)
            mean = -rng.uniform(0, 3, size=d) * np.sqrt(np.diag(cov))
            g = GaussianVec(mean, cov)
            b_d = risk_dth_order(g).value
            b_1 = risk_first_order(g).value
            b_rho = risk_spectral(g).value
            assert b_d <= b_1 <= b_rho

    @settings(max_examples=25, deadline=None)
    @given(st.floats(0.1, 10))
    def test_scale_invariance(self, c):
        g = GaussianVec([-2.0, -1.0], [[1.1, -0.8], [-0.8, 1.0]])
        scaled = GaussianVec(c * g.mean, c * c * g.cov)
        assert risk_spectral(scaled).value == pytest.approx(risk_spectral(g).value, rel=1e-9)
        assert risk_first_order(scaled).value == pytest.approx(risk_first_order(g).value, rel=1e-9)
        assert risk_dth_order(scaled).value == pytest.approx(risk_dth_order(g).value, rel=1e-9)


class TestWilsonInterval:
    def test_brackets_proportion(self):
        lo, hi = wilson_interval(50, 100)
        assert lo < 0.5 < hi

    def test_zero_successes_positive_upper(self):
        lo, hi = wilson_interval(0, 10**5)
        assert lo == 0.0
        assert 0.0 < hi < 1e-4

    def test_all_successes(self):
        lo, hi = wilson_interval(100, 100)
        assert hi == 1.0
        assert lo > 0.95

    def test_shrinks_like_sqrt_n(self):
        w1 = np.diff(wilson_interval(100, 1000))[0]
        w2 = np.diff(wilson_interval(10000, 100000))[0]
        assert w2 == pytest.approx(w1 / 10, rel=0.05)


class TestMcRisk:
    def test_scalar_median(self):
        mc = mc_risk(scalar(0.0, 1.0), 10**6, 0)
        assert mc.estimate == pytest.approx(0.5, abs=0.002)

    def test_independent_product(self):
        g = GaussianVec([-1.959964, -1.959964], np.eye(2))
        mc = mc_risk(g, 10**6, 1)
        assert mc.estimate == pytest.approx(1 - 0.975**2, abs=0.001)

    def test_deterministic_per_seed(self, example_2d):
        a = mc_risk(example_2d, 10**5, 123)
        b = mc_risk(example_2d, 10**5, 123)
        assert a.estimate == b.estimate

    def test_ci_brackets_estimate(self, example_2d):
        mc = mc_risk(example_2d, 10**4, 5)
        assert mc.ci_low <= mc.estimate <= mc.ci_high

    def test_exact_1d_within_ci(self):
        g = scalar(-1.5, 1.0)
        mc = mc_risk(g, 10**6, 17)
        exact = risk_exact_1d(g).value
        assert mc.ci_low <= exact <= mc.ci_high

    def test_overestimation_soundness(self):
        rng = np.random.default_rng(14)
        for _ in range(10):
            d = int(rng.integers(1, 6))
            a = rng.normal(size=(d, d))
            cov = a @ a.T + 0.1 * np.eye(d)
            mean = -rng.uniform(0.2, 2.5, size=d) * np.sqrt(np.diag(cov))
            g = GaussianVec(mean, cov)
            mc = mc_risk(g, 10**5, 99)
            floor = mc.estimate - 5 * mc.ci_halfwidth
            for est in (risk_spectral(g), risk_first_order(g), risk_dth_order(g)):
                assert est.value >= floor

    def test_serialization_records_seed_and_n(self, example_2d):
        payload = mc_risk(example_2d, 10**4, 31).to_dict()
        assert payload["n_samples"] == 10**4
        assert payload["seed"] == 31


class TestMcSectorProbability:
    def test_zero_angle(self):
        mc = mc_sector_probability(3, 0.5, 1.5, [1.0, 0.0, 0.0], 0.0, 10**4, 0)
        assert mc.estimate == 0.0

    def test_planar_half_space(self):
        mc = mc_sector_probability(2, 0.0, 50.0, [0.0, 1.0], math.pi / 2, 10**6, 2)
        assert mc.estimate == pytest.approx(0.5, abs=0.002)

    def test_matches_closed_form(self):
        d, r1, r2, theta = 3, 1.0, 2.0, math.pi / 3
        axis = np.zeros(d)
        axis[0] = 1.0
        mc = mc_sector_probability(d, r1, r2, axis, theta, 10**6, 4)
        closed = 0.5 * sector_fraction(math.cos(theta), d) * (psi(r1, d) - psi(r2, d))
        assert abs(mc.estimate - closed) <= 5 * mc.ci_halfwidth

    def test_invalid_geometry_rejected(self):
        with pytest.raises(ValueError):
            mc_sector_probability(1, 0.0, 1.0, [1.0], 0.5, 100, 0)
        with pytest.raises(ValueError):
            mc_sector_probability(2, 2.0, 1.0, [1.0, 0.0], 0.5, 100, 0)
        with pytest.raises(ValueError):
            mc_sector_probability(2, 0.0, 1.0, [2.0, 0.0], 0.5, 100, 0)
