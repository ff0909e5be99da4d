import math

import numpy as np
import pytest

from aiisac.fading import (
    FadingModel,
    conditional_snr,
    ergodic_distortion_rayleigh,
    ergodic_distortion_rician,
    ergodic_rate_rayleigh,
    ergodic_rate_rician,
    jensen_upper_bound,
    monte_carlo_oracle,
    rayleigh_rate_exact,
    rician_moment_matched,
)
from aiisac.numerics import RandomStream, gauss_laguerre

RULE = gauss_laguerre(128)
RULE40 = gauss_laguerre(40)


class TestConditionalSnr:
    def test_values(self):
        assert conditional_snr(0.0, 10.0, 0.1) == 0.0
        assert math.isclose(conditional_snr(1.0, 10.0, 0.0), 10.0)

    def test_saturation(self):
        assert conditional_snr(1e12, 1.0, 0.5) < 2.0
        assert math.isclose(conditional_snr(1e12, 1.0, 0.5), 2.0, rel_tol=1e-6)

    def test_ceiling_bounds_rate(self):
        kap = 1.0 / 15.0
        for gamma in (0.1, 1.0, 10.0, 100.0):
            assert ergodic_rate_rayleigh(gamma, kap, RULE) <= math.log2(1 + 1 / kap)


class TestRayleigh:
    def test_exact_anchor(self):
        got = ergodic_rate_rayleigh(10.0, 0.0, RULE)
        want = rayleigh_rate_exact(10.0, 0.0)
        assert abs(got - want) <= 1e-6

    def test_exact_formula_with_bottleneck(self):
        # Closed form holds for kappa > 0 too; quadrature must track it.
        got = ergodic_rate_rayleigh(10.0, 1.0 / 15.0, RULE)
        want = rayleigh_rate_exact(10.0, 1.0 / 15.0)
        assert abs(got - want) <= 1e-6

    def test_small_snr_vanishes(self):
        assert ergodic_rate_rayleigh(1e-12, 0.0, RULE) < 1e-10

    def test_distortion_limits(self):
        assert abs(ergodic_distortion_rayleigh(1e-12, 0.0, 1.0, RULE) - 1.0) < 1e-10
        d1 = ergodic_distortion_rayleigh(1.0, 0.0, 1.0, RULE)
        d2 = ergodic_distortion_rayleigh(2.0, 0.0, 1.0, RULE)
        assert d2 < d1 < 1.0


class TestRician:
    def test_k_zero_reduces_to_rayleigh(self):
        for gamma, kap in [(10.0, 0.0), (3.0, 1.0 / 15.0)]:
            assert abs(ergodic_rate_rician(gamma, kap, 0.0, RULE40)
                       - ergodic_rate_rayleigh(gamma, kap, RULE40)) <= 1e-10
            assert abs(ergodic_distortion_rician(gamma, kap, 0.0, 1.0, RULE40)
                       - ergodic_distortion_rayleigh(gamma, kap, 1.0, RULE40)) <= 1e-10

    def test_rate_increasing_in_k(self):
        rates = [ergodic_rate_rician(10.0, 0.0, k, RULE)
                 for k in (0.0, 1.0, 2.0, 4.0, 8.0)]
        assert all(a < b for a, b in zip(rates, rates[1:]))

    def test_large_k_no_overflow(self):
        val = ergodic_rate_rician(10.0, 0.0, 1000.0, RULE)
        assert math.isfinite(val)

    def test_moment_matched_values(self):
        assert math.isclose(rician_moment_matched(10.0, 0.0, 0.0),
                            math.log2(11.0), rel_tol=1e-12)
        k = 3.981
        want = math.log2(1 + (1 + k) * 10 / (1 + (1 + k) * 10 / 15))
        assert math.isclose(rician_moment_matched(10.0, 1.0 / 15.0, k), want,
                            rel_tol=1e-12)

    def test_moment_matched_deviation_bounded(self):
        # The closed-form approximation sits above the exact average
        # (Jensen) and its worst error on this grid is ~0.66 bits, at the
        # low-K high-SNR corner where the gain distribution is widest.
        worst = 0.0
        for k_db in np.linspace(0.0, 10.0, 6):
            for g_db in np.linspace(0.0, 20.0, 6):
                for kap in (0.0, 1.0 / 15.0):
                    k, g = 10 ** (k_db / 10), 10 ** (g_db / 10)
                    exact = ergodic_rate_rician(g, kap, k, RULE)
                    approx = rician_moment_matched(g, kap, k)
                    assert approx >= exact - 1e-9
                    worst = max(worst, abs(exact - approx))
        assert worst <= 0.7


class TestJensenBound:
    def test_point_mass_equality(self):
        model = FadingModel("awgn", gain=2.0)
        bound = jensen_upper_bound(model, 5.0, 0.1, RULE)
        assert math.isclose(bound, math.log2(1 + conditional_snr(2.0, 5.0, 0.1)),
                            rel_tol=1e-12)

    def test_rayleigh_bound(self):
        bound = jensen_upper_bound(FadingModel("rayleigh"), 10.0, 0.0, RULE)
        assert math.isclose(bound, math.log2(11.0), rel_tol=1e-6)
        assert bound >= ergodic_rate_rayleigh(10.0, 0.0, RULE)

    def test_bound_dominates_on_grid(self):
        for gamma in (0.5, 5.0, 50.0):
            for kap in (0.0, 0.2):
                assert (jensen_upper_bound(FadingModel("rayleigh"), gamma, kap, RULE)
                        >= ergodic_rate_rayleigh(gamma, kap, RULE) - 1e-12)
                model = FadingModel("rician", k_factor=4.0)
                assert (jensen_upper_bound(model, gamma, kap, RULE)
                        >= ergodic_rate_rician(gamma, kap, 4.0, RULE) - 1e-12)


class TestMonteCarlo:
    STREAM = RandomStream(seed=42, stream=0)

    def test_awgn_matches_closed_form(self):
        est = monte_carlo_oracle(FadingModel("awgn", gain=1.0), 10.0, 0.0, 1.0,
                                 100, self.STREAM)
        assert math.isclose(est.rate, math.log2(11.0), rel_tol=1e-12)
        assert math.isclose(est.distortion, 1.0 / 11.0, rel_tol=1e-12)

    def test_determinism(self):
        a = monte_carlo_oracle(FadingModel("rayleigh"), 10.0, 0.0, 1.0, 10_000,
                               self.STREAM)
        b = monte_carlo_oracle(FadingModel("rayleigh"), 10.0, 0.0, 1.0, 10_000,
                               self.STREAM)
        assert a == b

    def test_rayleigh_agrees_with_quadrature(self):
        est = monte_carlo_oracle(FadingModel("rayleigh"), 10.0, 1.0 / 15.0, 1.0,
                                 1_000_000, self.STREAM)
        quad = ergodic_rate_rayleigh(10.0, 1.0 / 15.0, RULE)
        assert abs(est.rate - quad) <= 4 * est.rate_std_err + 1e-4

    def test_rician_agrees_with_quadrature(self):
        k = 10 ** 0.6
        est = monte_carlo_oracle(FadingModel("rician", k_factor=k), 10.0, 0.0,
                                 1.0, 1_000_000, self.STREAM.split(3))
        quad = ergodic_rate_rician(10.0, 0.0, k, RULE)
        assert abs(est.rate - quad) <= 4 * est.rate_std_err + 1e-4

    def test_invalid_samples(self):
        with pytest.raises(ValueError):
            monte_carlo_oracle(FadingModel("rayleigh"), 1.0, 0.0, 1.0, 0,
                               self.STREAM)
