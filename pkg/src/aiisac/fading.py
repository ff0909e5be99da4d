"""Ergodic rate and average distortion over fading channels.

The channel power gain x is unit-mean exponential (Rayleigh), non-central
chi-square with unit scattered power (Rician, mean 1+K), or a point mass
(AWGN).  Fading averages are Gauss-Laguerre quadratures against the
exponential weight; a seeded Monte-Carlo oracle provides an independent
route for validation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.special import exp1

from .numerics import QuadratureRule, RandomStream, log_bessel_i0

_MC_CHUNK = 1 << 20


@dataclass(frozen=True)
class FadingModel:
    """Channel gain distribution: "awgn", "rayleigh", or "rician".

    AWGN carries a fixed power gain; Rician carries a K-factor with unit
    scattered power, so its mean gain is 1 + K.
    """

    kind: str
    gain: float = 1.0
    k_factor: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in ("awgn", "rayleigh", "rician"):
            raise ValueError(f"unknown fading kind {self.kind!r}")
        if self.kind == "awgn" and self.gain < 0:
            raise ValueError("awgn gain must be >= 0")
        if self.kind == "rician" and self.k_factor < 0:
            raise ValueError("rician K-factor must be >= 0")

    @property
    def mean_gain(self) -> float:
        if self.kind == "awgn":
            return self.gain
        if self.kind == "rayleigh":
            return 1.0
        return 1.0 + self.k_factor


def conditional_snr(x, gamma_bar: float, kappa: float):
    """Effective SNR x*gamma / (1 + x*gamma*kappa) at channel gain x.

    Saturates at 1/kappa for kappa > 0.  Accepts scalars or arrays.
    """
    if gamma_bar <= 0:
        raise ValueError(f"mean SNR must be positive, got {gamma_bar}")
    if kappa < 0:
        raise ValueError(f"kappa must be >= 0, got {kappa}")
    xg = np.asarray(x, dtype=float) * gamma_bar
    out = xg / (1.0 + xg * kappa)
    return float(out) if np.isscalar(x) else out


def _rician_weight_log(x: np.ndarray, k_factor: float) -> np.ndarray:
    """log of the density factor e^{-K} I0(2 sqrt(K x)) folded into the
    Gauss-Laguerre integrand (computed in log space to survive large K)."""
    return log_bessel_i0(2.0 * np.sqrt(k_factor * x)) - k_factor


def ergodic_rate_rayleigh(
    gamma_bar: float, kappa: float, rule: QuadratureRule
) -> float:
    """Rayleigh ergodic rate by Gauss-Laguerre quadrature, bits per use."""
    snr = conditional_snr(rule.nodes, gamma_bar, kappa)
    return float(np.dot(rule.weights, np.log1p(snr)) / math.log(2.0))


def ergodic_distortion_rayleigh(
    gamma_bar: float, kappa: float, prior_var: float, rule: QuadratureRule
) -> float:
    """Fading-averaged MMSE distortion E[prior_var / (1 + snr(x))]."""
    if prior_var <= 0:
        raise ValueError("prior variance must be positive")
    snr = conditional_snr(rule.nodes, gamma_bar, kappa)
    return float(np.dot(rule.weights, prior_var / (1.0 + snr)))


def ergodic_rate_rician(
    gamma_bar: float, kappa: float, k_factor: float, rule: QuadratureRule
) -> float:
    """Rician ergodic rate: the non-central chi-square average, bits per use."""
    if k_factor < 0:
        raise ValueError("rician K-factor must be >= 0")
    snr = conditional_snr(rule.nodes, gamma_bar, kappa)
    w = np.exp(_rician_weight_log(rule.nodes, k_factor))
    return float(np.dot(rule.weights, w * np.log1p(snr)) / math.log(2.0))


def ergodic_distortion_rician(
    gamma_bar: float, kappa: float, k_factor: float, prior_var: float,
    rule: QuadratureRule,
) -> float:
    """Rician fading-averaged MMSE distortion."""
    if prior_var <= 0:
        raise ValueError("prior variance must be positive")
    snr = conditional_snr(rule.nodes, gamma_bar, kappa)
    w = np.exp(_rician_weight_log(rule.nodes, k_factor))
    return float(np.dot(rule.weights, w * prior_var / (1.0 + snr)))


def rayleigh_rate_exact(gamma_bar: float, kappa: float) -> float:
    """Closed-form Rayleigh ergodic rate via the exponential integral.

    With beta1 = gamma*(1+kappa) and beta2 = gamma*kappa the average of
    log(1 + x*gamma/(1+x*gamma*kappa)) over a unit-mean exponential gain
    is e^{1/beta1} E1(1/beta1) - e^{1/beta2} E1(1/beta2); the second term
    vanishes at kappa = 0.
    """
    if gamma_bar <= 0:
        raise ValueError("mean SNR must be positive")

    def term(beta: float) -> float:
        if beta == 0.0:
            return 0.0
        u = 1.0 / beta
        # e^u E1(u) directly for small u, scaled via log for large u.
        if u < 500.0:
            return math.exp(u) * float(exp1(u))
        # asymptotic e^u E1(u) ~ 1/u (1 - 1/u + 2/u^2 - ...)
        return (1.0 - 1.0 / u + 2.0 / u**2 - 6.0 / u**3) / u

    return (term(gamma_bar * (1.0 + kappa)) - term(gamma_bar * kappa)) / math.log(2.0)


def rician_moment_matched(gamma_bar: float, kappa: float, k_factor: float) -> float:
    """Moment-matched Rician rate log2(1 + snr at the mean gain 1+K)."""
    if k_factor < 0:
        raise ValueError("rician K-factor must be >= 0")
    return math.log2(1.0 + conditional_snr(1.0 + k_factor, gamma_bar, kappa))


def jensen_upper_bound(
    model: FadingModel, gamma_bar: float, kappa: float, rule: QuadratureRule
) -> float:
    """Jensen bound log2(1 + E[snr(x)]) for the given gain distribution."""
    if model.kind == "awgn":
        mean_snr = conditional_snr(model.gain, gamma_bar, kappa)
    else:
        snr = conditional_snr(rule.nodes, gamma_bar, kappa)
        if model.kind == "rician":
            w = np.exp(_rician_weight_log(rule.nodes, model.k_factor))
            mean_snr = float(np.dot(rule.weights, w * snr))
        else:
            mean_snr = float(np.dot(rule.weights, snr))
    return math.log2(1.0 + mean_snr)


class MonteCarloEstimate(NamedTuple):
    rate: float
    distortion: float
    rate_std_err: float
    distortion_std_err: float


def _sample_gains(model: FadingModel, n: int, rng: np.random.Generator) -> np.ndarray:
    if model.kind == "awgn":
        return np.full(n, model.gain)
    if model.kind == "rayleigh":
        return rng.exponential(1.0, size=n)
    mu = math.sqrt(model.k_factor)
    re = rng.normal(mu, math.sqrt(0.5), size=n)
    im = rng.normal(0.0, math.sqrt(0.5), size=n)
    return re * re + im * im


def _chunked_mean(values: np.ndarray) -> tuple[float, float]:
    """Deterministic mean and mean-of-squares via fixed-order chunked sums."""
    n = values.size
    sums, sq_sums = [], []
    for start in range(0, n, _MC_CHUNK):
        chunk = values[start : start + _MC_CHUNK]
        sums.append(float(np.sum(chunk)))
        sq_sums.append(float(np.sum(chunk * chunk)))
    return math.fsum(sums) / n, math.fsum(sq_sums) / n


def monte_carlo_oracle(
    model: FadingModel,
    gamma_bar: float,
    kappa: float,
    prior_var: float,
    n_samples: int,
    stream: RandomStream,
) -> MonteCarloEstimate:
    """Sample-average rate and distortion over the fading distribution.

    Deterministic for a fixed stream: gains come from a counter-based
    generator and the reduction order is fixed regardless of chunking.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    if prior_var <= 0:
        raise ValueError("prior variance must be positive")
    rng = stream.generator()
    gains = _sample_gains(model, n_samples, rng)
    snr = conditional_snr(gains, gamma_bar, kappa)
    rates = np.log1p(snr) / math.log(2.0)
    dists = prior_var / (1.0 + snr)
    r_mean, r_sq = _chunked_mean(rates)
    d_mean, d_sq = _chunked_mean(dists)
    r_se = math.sqrt(max(r_sq - r_mean**2, 0.0) / n_samples)
    d_se = math.sqrt(max(d_sq - d_mean**2, 0.0) / n_samples)
    return MonteCarloEstimate(r_mean, d_mean, r_se, d_se)
