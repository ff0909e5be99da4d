"""Numerical building blocks: Gauss-Laguerre rules, special functions,
safeguarded root finding, and counter-based deterministic random streams.

Everything here is a pure function of its inputs; quadrature rules are
cached by order and immutable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq
from scipy.special import lambertw, roots_laguerre

from .errors import BracketError

MAX_QUADRATURE_ORDER = 128

# Switch between the power series and the large-argument expansion of I0.
# Both branches carry better than 1e-10 relative accuracy at this point.
I0_SWITCH = 20.0

_NEG_INV_E = -0.36787944117144233  # -1/e rounded to double


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights for integration against exp(-x) on (0, inf).

    Nodes are strictly ascending and positive; weights are positive and
    sum to one (the weight function integrates to one).
    """

    order: int
    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self) -> None:
        if self.order != len(self.nodes) or self.order != len(self.weights):
            raise ValueError("rule arrays do not match the stated order")
        if np.any(self.nodes <= 0) or np.any(np.diff(self.nodes) <= 0):
            raise ValueError("nodes must be positive and strictly ascending")
        if np.any(self.weights <= 0):
            raise ValueError("weights must be positive")

    def integrate(self, integrand) -> float:
        """Weighted sum of the integrand over the nodes.

        Accepts either a callable evaluated at the nodes or an array of
        pre-sampled values.
        """
        values = integrand(self.nodes) if callable(integrand) else integrand
        return float(np.sum(self.weights * np.asarray(values, dtype=float)))


@lru_cache(maxsize=None)
def _laguerre_nodes_weights(order: int) -> tuple[tuple[float, ...], tuple[float, ...]]:
    nodes, weights = roots_laguerre(order)
    return tuple(nodes), tuple(weights)


def gauss_laguerre(order: int) -> QuadratureRule:
    """Order-M Gauss-Laguerre rule, exact for polynomials up to degree 2M-1.

    Raises ValueError for orders outside [1, 128].
    """
    if not isinstance(order, (int, np.integer)) or isinstance(order, bool):
        raise ValueError(f"quadrature order must be an integer, got {order!r}")
    if order < 1 or order > MAX_QUADRATURE_ORDER:
        raise ValueError(
            f"quadrature order must be in [1, {MAX_QUADRATURE_ORDER}], got {order}"
        )
    nodes, weights = _laguerre_nodes_weights(int(order))
    return QuadratureRule(
        order=int(order),
        nodes=np.array(nodes, dtype=float),
        weights=np.array(weights, dtype=float),
    )


def lambert_w0(x: float) -> float:
    """Principal branch of the Lambert W function, W(x) * exp(W(x)) = x.

    Defined for x >= -1/e; relative accuracy ~1e-12 away from the branch
    point.
    """
    x = float(x)
    if math.isnan(x) or x < _NEG_INV_E:
        raise ValueError(f"lambert_w0 requires x >= -1/e, got {x}")
    if x == 0.0:
        return 0.0
    w = lambertw(x, k=0)
    return float(w.real)


def _log_i0_series(x: np.ndarray) -> np.ndarray:
    """ln I0 via the ascending series sum_k (x/2)^(2k) / (k!)^2."""
    x = np.asarray(x, dtype=float)
    q = x * x / 4.0
    total = np.ones_like(x)
    term = np.ones_like(x)
    for k in range(1, 200):
        term = term * q / (k * k)
        total += term
        if np.all(term <= 1e-18 * total):
            break
    return np.log(total)


def _log_i0_asymptotic(x: np.ndarray) -> np.ndarray:
    """ln I0 via the large-argument expansion e^x / sqrt(2 pi x) * sum_k mu_k."""
    x = np.asarray(x, dtype=float)
    total = np.ones_like(x)
    term = np.ones_like(x)
    for k in range(1, 40):
        factor = (2 * k - 1) ** 2 / (8.0 * k * x)
        if np.all(factor >= 1.0):
            break
        term = term * factor
        total += term
        if np.all(term <= 1e-18 * total):
            break
    return x - 0.5 * np.log(2.0 * np.pi * x) + np.log(total)


def log_bessel_i0(x):
    """Overflow-safe ln I0(x) for x >= 0; accepts scalars or arrays."""
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0):
        raise ValueError("log_bessel_i0 requires x >= 0")
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    out = np.empty_like(arr)
    small = arr < I0_SWITCH
    if np.any(small):
        out[small] = _log_i0_series(arr[small])
    if np.any(~small):
        out[~small] = _log_i0_asymptotic(arr[~small])
    return float(out[0]) if scalar else out


def find_root(f, lo: float, hi: float, tol: float) -> float:
    """Root of f on [lo, hi] by safeguarded bracketing (Brent); deterministic.

    Requires a sign change on the bracket; terminates when the bracket
    width falls below tol.
    """
    lo = float(lo)
    hi = float(hi)
    if not lo < hi:
        raise ValueError(f"invalid bracket [{lo}, {hi}]")
    if tol <= 0:
        raise ValueError("tol must be positive")
    flo = f(lo)
    fhi = f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0:
        raise BracketError(
            f"no sign change on [{lo}, {hi}]: f(lo)={flo}, f(hi)={fhi}"
        )
    return float(brentq(f, lo, hi, xtol=tol, maxiter=200))


@dataclass(frozen=True)
class RandomStream:
    """Counter-based random stream keyed by (seed, stream index).

    Backed by the Philox counter-based generator, so equal keys yield
    byte-identical sequences regardless of what other streams have done.
    Instances are value-like; derive one per independent work item.
    """

    seed: int
    stream: int = 0

    def generator(self) -> np.random.Generator:
        mask = (1 << 64) - 1
        key = (int(self.seed) & mask) | ((int(self.stream) & mask) << 64)
        return np.random.Generator(np.random.Philox(key=key))

    def split(self, stream: int) -> "RandomStream":
        """Same seed, different stream index."""
        return RandomStream(seed=self.seed, stream=stream)
