import math

import numpy as np
import pytest

from aiisac.bottleneck import AiBudget, covariance_map
from aiisac.errors import SingularMatrixError, UnobservableParameterError
from aiisac.gaussian import ScalarScenario
from aiisac.gaussian import rate as scalar_rate
from aiisac.mimo import (
    MimoScenario,
    crlb,
    fisher_info,
    hermitian_eig,
    mimo_rate,
    rate_surface,
)


def make_scenario(h_c, q, r_c, c_ai=math.inf, h_s=None, r_s=None, dmu=None):
    n = np.atleast_2d(np.asarray(q)).shape[0]
    m = np.atleast_2d(np.asarray(h_c)).shape[0]
    return MimoScenario(
        h_c=h_c,
        h_s=h_s if h_s is not None else np.eye(m, n),
        q=q,
        r_c=r_c,
        r_s=r_s if r_s is not None else np.eye(m),
        dmu=dmu if dmu is not None else np.ones(m),
        budget=AiBudget(c_ai),
    )


class TestHermitianEig:
    def test_identity(self):
        evals, _ = hermitian_eig(np.eye(3))
        assert np.allclose(evals, 1.0)

    def test_diagonal(self):
        evals, evecs = hermitian_eig(np.diag([1.0, 4.0]))
        assert np.allclose(evals, [1.0, 4.0])
        assert np.allclose(np.abs(evecs), np.eye(2))

    def test_reconstruction(self):
        rng = np.random.default_rng(5)
        a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        h = a + a.conj().T
        evals, evecs = hermitian_eig(h)
        recon = (evecs * evals) @ evecs.conj().T
        assert np.linalg.norm(recon - h) <= 1e-10 * np.linalg.norm(h)

    def test_non_hermitian_rejected(self):
        with pytest.raises(ValueError):
            hermitian_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))


class TestMimoRate:
    def test_zero_channel(self):
        sc = make_scenario(np.zeros((2, 2)), np.eye(2), 0.1 * np.eye(2))
        assert mimo_rate(sc) == 0.0

    def test_parallel_channels(self):
        sc = make_scenario(np.eye(2), np.eye(2), 0.1 * np.eye(2))
        assert math.isclose(mimo_rate(sc), 2.0 * math.log2(11.0), rel_tol=1e-12)

    @pytest.mark.parametrize("c_ai", [0.5, 1.0, 4.0, math.inf])
    def test_scalar_reduction(self, c_ai):
        rng = np.random.default_rng(9)
        for _ in range(10):
            p, g, n = rng.uniform(0.1, 10, size=3)
            sc1 = make_scenario(np.array([[math.sqrt(g)]]), np.array([[p]]),
                                np.array([[n]]), c_ai=c_ai)
            sc2 = ScalarScenario(power=p, gain_c=g, gain_s=g, noise_c=n,
                                 noise_s=n, prior_var=1.0)
            assert abs(mimo_rate(sc1) - scalar_rate(sc2, AiBudget(c_ai))) <= 1e-12

    def test_determinant_identity(self):
        # log det(I + H Q H^H S^-1) = log det(S + H Q H^H) - log det(S)
        rng = np.random.default_rng(3)
        h = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        q = a @ a.conj().T
        s = np.eye(3) * 0.3
        sc = make_scenario(h, q, s)
        sig = h @ q @ h.conj().T
        direct = (np.log2(np.linalg.det(s + sig)) - np.log2(np.linalg.det(s)))
        assert abs(mimo_rate(sc) - float(np.real(direct))) <= 1e-10

    def test_monotone_in_budget(self):
        rng = np.random.default_rng(17)
        h = rng.normal(size=(2, 2))
        q = np.diag([2.0, 1.0])
        rates = [mimo_rate(make_scenario(h, q, 0.1 * np.eye(2), c_ai=c))
                 for c in (0.5, 1.0, 2.0, 4.0, 8.0, math.inf)]
        assert all(a <= b + 1e-12 for a, b in zip(rates, rates[1:]))

    def test_singular_noise(self):
        sc = make_scenario(np.eye(2), np.eye(2), np.zeros((2, 2)))
        with pytest.raises(SingularMatrixError):
            mimo_rate(sc)

    def test_loewner_ordering_of_noise_map(self):
        q = np.diag([2.0, 1.0])
        r1 = covariance_map(q, 1.0)
        r2 = covariance_map(q, 4.0)
        assert np.all(np.linalg.eigvalsh(r1 - r2) >= -1e-12)


class TestFisherAndCrlb:
    def test_unobservable(self):
        sc = make_scenario(np.eye(2), np.eye(2), 0.1 * np.eye(2),
                           dmu=np.zeros(2))
        assert fisher_info(sc) == 0.0
        with pytest.raises(UnobservableParameterError):
            crlb(sc)

    def test_scalar_classical(self):
        g, sigma2 = 3.0, 0.5
        sc = make_scenario(np.array([[1.0]]), np.array([[1.0]]),
                           np.array([[1.0]]), dmu=np.array([g]),
                           r_s=np.array([[sigma2]]))
        assert math.isclose(fisher_info(sc), g * g / sigma2, rel_tol=1e-12)
        assert math.isclose(crlb(sc), sigma2 / (g * g), rel_tol=1e-12)

    def test_monotone_in_budget(self):
        rng = np.random.default_rng(23)
        for _ in range(5):
            h = rng.normal(size=(2, 2))
            dmu = rng.normal(size=2)
            infos = [fisher_info(make_scenario(np.eye(2), np.diag([2.0, 1.0]),
                                               np.eye(2), c_ai=c, h_s=h,
                                               r_s=0.2 * np.eye(2), dmu=dmu))
                     for c in (0.5, 2.0, 8.0, math.inf)]
            assert all(a <= b + 1e-12 for a, b in zip(infos, infos[1:]))


class TestRateSurface:
    def test_single_point(self):
        sc = make_scenario(np.eye(2), np.eye(2), 0.1 * np.eye(2))
        surf = rate_surface(sc, [4.0], [1.0])
        ref = mimo_rate(make_scenario(np.eye(2), np.eye(2), 0.1 * np.eye(2),
                                      c_ai=4.0))
        assert math.isclose(float(surf[0, 0]), ref, rel_tol=1e-12)

    def test_monotone_both_axes(self):
        sc = make_scenario(np.eye(2), 0.005 * np.eye(2), 0.1 * np.eye(2))
        surf = rate_surface(sc, [1.0, 2.0, 4.0, 8.0], [0.5, 1.0, 2.0, 4.0])
        assert np.all(np.diff(surf, axis=0) >= -1e-12)
        assert np.all(np.diff(surf, axis=1) >= -1e-12)

    def test_empty_grid_rejected(self):
        sc = make_scenario(np.eye(2), np.eye(2), 0.1 * np.eye(2))
        with pytest.raises(ValueError):
            rate_surface(sc, [], [1.0])
