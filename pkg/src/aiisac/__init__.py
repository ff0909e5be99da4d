"""Performance theory for ISAC systems with a capacity-limited learning module.

Scalar and MIMO rate/distortion forms, fading averages, achievable
frontiers, and constrained resource allocation, plus a CSV-emitting CLI.
"""
from .bottleneck import (
    AiBudget,
    achieved_mi,
    covariance_map,
    enforce_mi_numerically,
    equivalent_noise,
    gaussian_mi,
    kappa,
)
from .errors import (
    AiIsacError,
    BracketError,
    ConfigError,
    DegenerateBudgetError,
    DegenerateFitError,
    DegenerateInputError,
    SingularMatrixError,
    UnobservableParameterError,
)
from .gaussian import (
    PerfPoint,
    ScalarScenario,
    distortion,
    effective_snrs,
    gen_tradeoff_bound,
    info_to_distortion,
    rate,
    scaling_gap,
)
from .fading import (
    FadingModel,
    MonteCarloEstimate,
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
from .mimo import MimoScenario, crlb, fisher_info, hermitian_eig, mimo_rate, rate_surface
from .numerics import QuadratureRule, RandomStream, gauss_laguerre, lambert_w0
from .region import Frontier, FrontierPoint, frontier, in_region, separated_baseline
from .allocate import (
    AllocationProblem,
    AllocationResult,
    kkt_power_split,
    kkt_residual_check,
    objective,
    optimize_alpha,
)
from .config import RunConfig, parse_config, preset_config

__version__ = "0.1.0"

__all__ = [
    "AiBudget", "AiIsacError", "AllocationProblem", "AllocationResult",
    "BracketError", "ConfigError", "DegenerateBudgetError",
    "DegenerateFitError", "DegenerateInputError", "FadingModel", "Frontier",
    "FrontierPoint", "MimoScenario", "MonteCarloEstimate", "PerfPoint",
    "QuadratureRule", "RandomStream", "RunConfig", "ScalarScenario",
    "SingularMatrixError", "UnobservableParameterError", "achieved_mi",
    "conditional_snr", "covariance_map", "crlb", "distortion",
    "effective_snrs", "enforce_mi_numerically", "equivalent_noise",
    "ergodic_distortion_rayleigh", "ergodic_distortion_rician",
    "ergodic_rate_rayleigh", "ergodic_rate_rician", "fisher_info",
    "frontier", "gauss_laguerre", "gaussian_mi", "gen_tradeoff_bound",
    "hermitian_eig", "in_region", "info_to_distortion", "jensen_upper_bound",
    "kappa", "kkt_power_split", "kkt_residual_check", "lambert_w0",
    "mimo_rate", "monte_carlo_oracle", "objective", "optimize_alpha",
    "parse_config", "preset_config", "rate", "rate_surface",
    "rayleigh_rate_exact", "rician_moment_matched", "scaling_gap",
    "separated_baseline",
]
