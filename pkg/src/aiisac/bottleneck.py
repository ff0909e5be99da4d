"""Capacity budget of the learning module and its equivalent-noise forms.

A budget of C bits per channel use on the latent representation acts, in
the Gaussian model, like an additive noise of variance N_z = P / (2^C - 1).
The matrix version maps a transmit covariance Q to the minimum-trace noise
covariance R_z = zeta * Q on the active subspace of Q.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateBudgetError, DegenerateInputError, SingularMatrixError
from .numerics import find_root

# Eigenvalues below this fraction of the largest are treated as null space.
RANK_RTOL = 1e-12


@dataclass(frozen=True)
class AiBudget:
    """Representational capacity of the learning module, in bits per use.

    math.inf is admissible and recovers the classical (unconstrained)
    limit; zero is a valid value but most derived quantities are only
    defined as limits there.
    """

    c_ai: float

    def __post_init__(self) -> None:
        if math.isnan(self.c_ai) or self.c_ai < 0:
            raise ValueError(f"capacity must be >= 0 bits, got {self.c_ai}")

    @property
    def is_classical(self) -> bool:
        return math.isinf(self.c_ai)


def kappa(budget: AiBudget) -> float:
    """Normalized equivalent noise N_z / P = 1 / (2^C - 1)."""
    if budget.is_classical:
        return 0.0
    if budget.c_ai == 0:
        raise DegenerateBudgetError("kappa is unbounded at zero capacity")
    return 1.0 / math.expm1(budget.c_ai * math.log(2.0))


def equivalent_noise(budget: AiBudget, power: float) -> float:
    """Equivalent noise variance N_z = P / (2^C - 1); zero in the classical limit."""
    if power <= 0:
        raise ValueError(f"power must be positive, got {power}")
    if budget.is_classical:
        return 0.0
    if budget.c_ai == 0:
        raise DegenerateBudgetError(
            "N_z is unbounded at zero capacity; use the limit forms"
        )
    return power * kappa(budget)


def achieved_mi(power: float, noise_var: float) -> float:
    """Mutual information log2(1 + P / N_z) of the scalar Gaussian latent."""
    if noise_var == 0.0:
        return math.inf
    return math.log2(1.0 + power / noise_var)


def enforce_mi_numerically(power: float, target_c_ai: float, tol: float) -> float:
    """Noise variance found by root-finding on log2(1 + P/N_z) = C.

    Cross-validates the closed form: the result agrees with
    equivalent_noise within the root tolerance.
    """
    if power <= 0 or target_c_ai <= 0 or tol <= 0:
        raise ValueError("power, target capacity, and tol must be positive")

    # Solve in u = ln(N_z) so the bracket spans many decades safely.
    def gap(u: float) -> float:
        return math.log2(1.0 + power * math.exp(-u)) - target_c_ai

    lo = math.log(power) - (target_c_ai + 60.0) * math.log(2.0)
    hi = math.log(power) + 60.0 * math.log(2.0)
    u = find_root(gap, lo, hi, tol=1e-14)
    nz = math.exp(u)
    if abs(gap(u)) > tol:
        raise ArithmeticError(
            f"MI enforcement did not reach tolerance: residual {gap(u)}"
        )
    return nz


def _as_hermitian(a: np.ndarray, name: str) -> np.ndarray:
    m = np.atleast_2d(np.asarray(a, dtype=complex))
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"{name} must be square, got shape {m.shape}")
    scale = float(np.max(np.abs(m))) or 1.0
    if float(np.max(np.abs(m - m.conj().T))) > 1e-12 * scale:
        raise ValueError(f"{name} is not Hermitian within tolerance")
    return 0.5 * (m + m.conj().T)


def _active_subspace(q: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvectors and eigenvalues of Q above the relative rank threshold."""
    evals, evecs = np.linalg.eigh(q)
    lam_max = float(evals[-1])
    if lam_max <= 0:
        return np.empty((q.shape[0], 0)), np.empty(0)
    keep = evals > RANK_RTOL * lam_max
    return evecs[:, keep], evals[keep]


def covariance_map(q: np.ndarray, c_ai: float) -> np.ndarray:
    """Minimum-trace noise covariance meeting the log-det budget.

    Returns R_z = zeta * Q on the rank-r active subspace of Q, with
    zeta = (2^(C/r) - 1)^-1, and zero on the null space.  By
    construction gaussian_mi(Q, R_z) equals C exactly.
    """
    q = _as_hermitian(q, "Q")
    if c_ai <= 0 or math.isnan(c_ai):
        raise DegenerateBudgetError(f"capacity must be positive, got {c_ai}")
    vecs, vals = _active_subspace(q)
    r = vals.size
    if r == 0:
        raise DegenerateInputError("Q has no active subspace (zero matrix)")
    if math.isinf(c_ai):
        return np.zeros_like(q)
    zeta = 1.0 / math.expm1((c_ai / r) * math.log(2.0))
    rz = (vecs * (zeta * vals)) @ vecs.conj().T
    return 0.5 * (rz + rz.conj().T)


def gaussian_mi(q: np.ndarray, r_z: np.ndarray) -> float:
    """log2 det(I + R_z^-1 Q), evaluated on the active subspace of Q.

    R_z must be positive definite there; contributions on the null space
    of Q do not enter.
    """
    q = _as_hermitian(q, "Q")
    r_z = _as_hermitian(r_z, "R_z")
    vecs, vals = _active_subspace(q)
    if vals.size == 0:
        return 0.0
    q_sub = np.diag(vals)
    r_sub = vecs.conj().T @ r_z @ vecs
    r_sub = 0.5 * (r_sub + r_sub.conj().T)
    try:
        chol_r = np.linalg.cholesky(r_sub)
        chol_sum = np.linalg.cholesky(r_sub + q_sub)
    except np.linalg.LinAlgError as exc:
        raise SingularMatrixError(
            "R_z is singular on the active subspace of Q"
        ) from exc
    logdet_r = 2.0 * float(np.sum(np.log(np.real(np.diag(chol_r)))))
    logdet_sum = 2.0 * float(np.sum(np.log(np.real(np.diag(chol_sum)))))
    return (logdet_sum - logdet_r) / math.log(2.0)
