import math

import numpy as np
import pytest
from scipy.special import i0

from aiisac.errors import BracketError
from aiisac.numerics import (
    QuadratureRule,
    RandomStream,
    find_root,
    gauss_laguerre,
    lambert_w0,
    log_bessel_i0,
)


class TestGaussLaguerre:
    def test_weights_sum_to_one(self):
        rule = gauss_laguerre(20)
        assert math.isclose(float(np.sum(rule.weights)), 1.0, rel_tol=1e-12)

    @pytest.mark.parametrize("k", [0, 1, 2, 5, 9])
    def test_moments_exact(self, k):
        # Gauss-Laguerre integrates x^k e^{-x} exactly to k! for k < 2M.
        rule = gauss_laguerre(10)
        got = rule.integrate(lambda x: x**k)
        assert math.isclose(got, math.factorial(k), rel_tol=1e-10)

    def test_order_bounds(self):
        with pytest.raises(ValueError):
            gauss_laguerre(0)
        with pytest.raises(ValueError):
            gauss_laguerre(129)

    def test_rule_validation(self):
        with pytest.raises(ValueError):
            QuadratureRule(order=2, nodes=np.array([1.0]), weights=np.array([1.0]))


class TestLambertW:
    def test_known_values(self):
        assert lambert_w0(0.0) == 0.0
        assert math.isclose(lambert_w0(math.e), 1.0, rel_tol=1e-12)
        w = lambert_w0(5.0)
        assert math.isclose(w * math.exp(w), 5.0, rel_tol=1e-12)

    def test_domain(self):
        with pytest.raises(ValueError):
            lambert_w0(-1.0)


class TestLogBesselI0:
    def test_small_matches_scipy(self):
        x = np.linspace(0.0, 15.0, 50)
        assert np.allclose(log_bessel_i0(x), np.log(i0(x)), atol=1e-12)

    def test_branch_continuity(self):
        # Both evaluation branches must agree where the implementation
        # switches between them.
        from aiisac.numerics import _log_i0_asymptotic, _log_i0_series

        x = np.array([20.0])
        gap = _log_i0_series(x) - _log_i0_asymptotic(x)
        assert abs(float(gap[0])) < 1e-12

    def test_large_argument_no_overflow(self):
        val = log_bessel_i0(1e4)
        assert math.isfinite(val)
        assert math.isclose(val, 1e4 - 0.5 * math.log(2 * math.pi * 1e4),
                            rel_tol=1e-6)


class TestFindRoot:
    def test_basic(self):
        root = find_root(lambda x: x * x - 2.0, 0.0, 2.0, tol=1e-14)
        assert math.isclose(root, math.sqrt(2.0), rel_tol=1e-12)

    def test_no_sign_change(self):
        with pytest.raises(BracketError):
            find_root(lambda x: x * x + 1.0, -1.0, 1.0, tol=1e-12)


class TestRandomStream:
    def test_determinism(self):
        a = RandomStream(seed=1, stream=0).generator().normal(size=8)
        b = RandomStream(seed=1, stream=0).generator().normal(size=8)
        assert np.array_equal(a, b)

    def test_streams_differ(self):
        a = RandomStream(seed=1, stream=0).generator().normal(size=8)
        b = RandomStream(seed=1, stream=1).generator().normal(size=8)
        assert not np.array_equal(a, b)

    def test_split(self):
        s = RandomStream(seed=3, stream=0)
        assert s.split(5).stream == 5
        assert s.split(5).seed == 3
