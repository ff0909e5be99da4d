"""Closed-form Gaussian performance under a capacity-limited learning module.

All quantities are linear-scale; dB conversion belongs to the CLI layer.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bottleneck import AiBudget, equivalent_noise
from .errors import DegenerateFitError


@dataclass(frozen=True)
class ScalarScenario:
    """Single-antenna scenario: transmit power, link gains, noises, prior.

    Gains may be zero (blocked link); everything else must be positive.
    """

    power: float
    gain_c: float
    gain_s: float
    noise_c: float
    noise_s: float
    prior_var: float

    def __post_init__(self) -> None:
        if self.power <= 0:
            raise ValueError(f"power must be positive, got {self.power}")
        if self.gain_c < 0 or self.gain_s < 0:
            raise ValueError("channel gains must be non-negative")
        if self.noise_c <= 0 or self.noise_s <= 0:
            raise ValueError("noise variances must be positive")
        if self.prior_var <= 0:
            raise ValueError(f"prior variance must be positive, got {self.prior_var}")


@dataclass(frozen=True)
class PerfPoint:
    """A (rate, distortion) operating point."""

    rate: float
    distortion: float

    def __post_init__(self) -> None:
        if self.rate < 0:
            raise ValueError(f"rate must be >= 0, got {self.rate}")
        if self.distortion <= 0:
            raise ValueError(f"distortion must be positive, got {self.distortion}")


def effective_snrs(sc: ScalarScenario, budget: AiBudget) -> tuple[float, float]:
    """Effective SNRs gamma_i = |h_i|^2 P / (N_i + |h_i|^2 N_z) for both links.

    The equivalent noise passes through the same channel as the signal, so
    the bottleneck caps each SNR at 1/kappa.
    """
    if budget.c_ai == 0:
        return 0.0, 0.0
    nz = equivalent_noise(budget, sc.power)
    g_c = sc.gain_c * sc.power / (sc.noise_c + sc.gain_c * nz)
    g_s = sc.gain_s * sc.power / (sc.noise_s + sc.gain_s * nz)
    return g_c, g_s


def rate(sc: ScalarScenario, budget: AiBudget) -> float:
    """Achievable communication rate log2(1 + effective SNR), bits per use."""
    g_c, _ = effective_snrs(sc, budget)
    return math.log2(1.0 + g_c)


def distortion(sc: ScalarScenario, budget: AiBudget) -> float:
    """MMSE sensing distortion prior_var / (1 + effective sensing SNR)."""
    _, g_s = effective_snrs(sc, budget)
    return sc.prior_var / (1.0 + g_s)


def perf_point(sc: ScalarScenario, budget: AiBudget) -> PerfPoint:
    return PerfPoint(rate=rate(sc, budget), distortion=distortion(sc, budget))


def info_to_distortion(info_bits: float, prior_var: float) -> float:
    """MMSE distortion achievable from a given sensing mutual information.

    The Gaussian rate-distortion relation gives prior_var * 2^(-I).
    """
    if info_bits < 0:
        raise ValueError(f"mutual information must be >= 0, got {info_bits}")
    if prior_var <= 0:
        raise ValueError(f"prior variance must be positive, got {prior_var}")
    return prior_var * 2.0 ** (-info_bits)


def gen_tradeoff_bound(mi_data_hypothesis: float, n_tr: int) -> float:
    """Generalization-error bound sqrt(2 I / n_tr) for an I-bit hypothesis."""
    if mi_data_hypothesis < 0:
        raise ValueError("mutual information must be >= 0")
    if n_tr < 1:
        raise ValueError(f"training-set size must be >= 1, got {n_tr}")
    return math.sqrt(2.0 * mi_data_hypothesis / n_tr)


def scaling_gap(sc: ScalarScenario, c_grid: list[float]) -> float:
    """Fitted slope of log2(R_inf - R(C)) versus C.

    A slope near -1 confirms the rate penalty decays like 2^(-C).
    """
    grid = [float(c) for c in c_grid]
    if len(grid) < 4:
        raise ValueError("need at least 4 capacity grid points for the fit")
    if any(math.isinf(c) for c in grid):
        raise ValueError("infinite capacity is not admissible in the fit grid")
    r_inf = rate(sc, AiBudget(math.inf))
    gaps = [r_inf - rate(sc, AiBudget(c)) for c in grid]
    if any(g <= 0 for g in gaps):
        raise DegenerateFitError(
            "rate gap must be positive at every grid point for a log fit"
        )
    slope = np.polyfit(np.asarray(grid), np.log2(np.asarray(gaps)), 1)[0]
    return float(slope)
