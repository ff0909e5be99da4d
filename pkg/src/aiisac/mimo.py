"""MIMO rate and estimation bounds with a capacity-limited learning module.

The latent-noise covariance R_z follows the minimum-trace mapping from the
transmit covariance; rates are log-determinants against the effective noise
covariance and sensing performance is scalar Fisher information / CRLB for
a linear Gaussian parameter model.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bottleneck import AiBudget, covariance_map
from .errors import SingularMatrixError, UnobservableParameterError

MAX_DIM = 64

_HERM_TOL = 1e-12
_PSD_TOL = 1e-10


def _check_hermitian(a: np.ndarray, name: str) -> np.ndarray:
    m = np.atleast_2d(np.asarray(a, dtype=complex))
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"{name} must be square, got shape {m.shape}")
    if m.shape[0] > MAX_DIM:
        raise ValueError(f"{name} exceeds the supported dimension {MAX_DIM}")
    scale = float(np.max(np.abs(m))) or 1.0
    if float(np.max(np.abs(m - m.conj().T))) > _HERM_TOL * max(scale, 1.0):
        raise ValueError(f"{name} is not Hermitian within tolerance")
    return 0.5 * (m + m.conj().T)


def check_psd(a: np.ndarray, name: str = "matrix") -> np.ndarray:
    """Validated Hermitian PSD copy of `a` (eigenvalue floor check)."""
    m = _check_hermitian(a, name)
    evals = np.linalg.eigvalsh(m)
    lam_max = float(evals[-1])
    if lam_max > 0 and float(evals[0]) < -_PSD_TOL * lam_max:
        raise ValueError(f"{name} is not positive semidefinite")
    return m


def hermitian_eig(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition A = U diag(w) U^H with ascending eigenvalues.

    Residual ||A U - U diag(w)|| is verified to within 1e-10 * ||A||.
    """
    m = _check_hermitian(a, "A")
    evals, evecs = np.linalg.eigh(m)
    norm = float(np.linalg.norm(m)) or 1.0
    resid = float(np.linalg.norm(m @ evecs - evecs * evals))
    if resid > 1e-10 * norm:
        raise ArithmeticError(f"eigendecomposition residual {resid} too large")
    return evals, evecs


@dataclass(frozen=True)
class MimoScenario:
    """Channels, transmit and noise covariances, sensing sensitivity, budget.

    dmu is the derivative of the noiseless sensing observation with respect
    to the scalar parameter of interest.
    """

    h_c: np.ndarray
    h_s: np.ndarray
    q: np.ndarray
    r_c: np.ndarray
    r_s: np.ndarray
    dmu: np.ndarray
    budget: AiBudget
    max_power: float | None = field(default=None)

    def __post_init__(self) -> None:
        object.__setattr__(self, "h_c", np.atleast_2d(np.asarray(self.h_c, complex)))
        object.__setattr__(self, "h_s", np.atleast_2d(np.asarray(self.h_s, complex)))
        object.__setattr__(self, "q", check_psd(self.q, "Q"))
        object.__setattr__(self, "r_c", check_psd(self.r_c, "R_c"))
        object.__setattr__(self, "r_s", check_psd(self.r_s, "R_s"))
        object.__setattr__(
            self, "dmu", np.atleast_1d(np.asarray(self.dmu, complex)).ravel()
        )
        if self.max_power is not None:
            tr = float(np.real(np.trace(self.q)))
            if tr > self.max_power + 1e-9:
                raise ValueError(
                    f"trace(Q) = {tr} exceeds the power limit {self.max_power}"
                )


def _noise_rz(sc: MimoScenario) -> np.ndarray:
    if sc.budget.is_classical:
        return np.zeros_like(sc.q)
    return covariance_map(sc.q, sc.budget.c_ai)


def _logdet_chol(m: np.ndarray, name: str) -> float:
    try:
        chol = np.linalg.cholesky(m)
    except np.linalg.LinAlgError as exc:
        raise SingularMatrixError(f"{name} is not positive definite") from exc
    return 2.0 * float(np.sum(np.log(np.real(np.diag(chol)))))


def mimo_rate(sc: MimoScenario) -> float:
    """log2 det(I + H_c Q H_c^H (R_c + H_c R_z H_c^H)^{-1}), bits per use."""
    rz = _noise_rz(sc)
    signal = sc.h_c @ sc.q @ sc.h_c.conj().T
    noise = sc.r_c + sc.h_c @ rz @ sc.h_c.conj().T
    noise = 0.5 * (noise + noise.conj().T)
    total = noise + 0.5 * (signal + signal.conj().T)
    val = _logdet_chol(total, "effective covariance") - _logdet_chol(
        noise, "effective noise covariance"
    )
    return val / math.log(2.0)


def fisher_info(sc: MimoScenario) -> float:
    """Fisher information dmu^H (R_s + H_s R_z H_s^H)^{-1} dmu, real >= 0."""
    rz = _noise_rz(sc)
    cov = sc.r_s + sc.h_s @ rz @ sc.h_s.conj().T
    cov = 0.5 * (cov + cov.conj().T)
    try:
        chol = np.linalg.cholesky(cov)
    except np.linalg.LinAlgError as exc:
        raise SingularMatrixError("effective sensing covariance is singular") from exc
    y = np.linalg.solve(chol, sc.dmu)
    return float(np.real(np.vdot(y, y)))


def crlb(sc: MimoScenario) -> float:
    """Cramér-Rao bound 1 / fisher_info; raises if the parameter is unobservable."""
    info = fisher_info(sc)
    if info <= 0.0:
        raise UnobservableParameterError("Fisher information is zero")
    return 1.0 / info


def rate_surface(
    template: MimoScenario,
    c_grid: list[float],
    power_scales: list[float],
) -> np.ndarray:
    """Rates on the Cartesian grid [capacity x power scale], row-major.

    Each column scales the template transmit covariance Q so that power
    sweeps reuse one scenario definition.
    """
    if not c_grid or not power_scales:
        raise ValueError("grids must be non-empty")
    out = np.empty((len(c_grid), len(power_scales)))
    for i, c in enumerate(c_grid):
        for j, scale in enumerate(power_scales):
            sc = MimoScenario(
                h_c=template.h_c,
                h_s=template.h_s,
                q=template.q * scale,
                r_c=template.r_c,
                r_s=template.r_s,
                dmu=template.dmu,
                budget=AiBudget(c),
            )
            out[i, j] = mimo_rate(sc)
    return out
