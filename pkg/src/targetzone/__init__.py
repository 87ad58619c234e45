"""Finite-horizon exchange-rate target-zone model with non-Gaussian risk.

Closed-form stationary and transient solutions, eigenvalue spectra and
relaxation-time feasibility analysis, regime-shift detection, honeymoon
contact-point analysis, and Monte Carlo simulation of the regulated
fundamental with intervention policies and density estimation.
"""

from .errors import (
    BracketError,
    ConvergenceError,
    DomainError,
    NumericalError,
    PoleError,
    QuadratureError,
    SingularSystemError,
    ValidationError,
)
from .honeymoon import ContactReport, classify_honeymoon, delta_profile, gaussian_contact
from .mc import (
    DensityEstimate,
    PathEnsemble,
    SimConfig,
    classify_shape,
    estimate_density,
    exchange_paths,
    simulate,
)
from .params import Grid, ModelParams, RngStream, rho, uniform_grid, validate
from .specfun import kummer_1f1, sinh_over_cosh_scaled, tanh_ratio
from .spectral import (
    FeasibilityReport,
    Spectrum,
    build_spectrum,
    eigen_residual,
    ou_asymptotic_spectrum,
    regime_scan,
    regime_threshold,
    relaxation_time,
    soft_attractive_spectrum,
    solve_eigenvalue,
    spread_coefficient,
)
from .stationary import (
    StationarySolution,
    eval_stationary,
    eval_stationary_derivatives,
    gaussian_stationary,
    ou_stationary,
    solve_smooth_pasting,
    stationary_ode_residual,
)
from .transient import (
    TransientSolution,
    build_transient,
    eval_full,
    eval_transient,
    fourier_coeffs,
    surface,
)

__version__ = "0.1.0"

__all__ = [
    "BracketError",
    "ContactReport",
    "ConvergenceError",
    "DensityEstimate",
    "DomainError",
    "FeasibilityReport",
    "Grid",
    "ModelParams",
    "NumericalError",
    "PathEnsemble",
    "PoleError",
    "QuadratureError",
    "RngStream",
    "SimConfig",
    "SingularSystemError",
    "Spectrum",
    "StationarySolution",
    "TransientSolution",
    "ValidationError",
    "build_spectrum",
    "build_transient",
    "classify_honeymoon",
    "classify_shape",
    "delta_profile",
    "eigen_residual",
    "estimate_density",
    "eval_full",
    "eval_stationary",
    "eval_stationary_derivatives",
    "eval_transient",
    "exchange_paths",
    "fourier_coeffs",
    "gaussian_contact",
    "gaussian_stationary",
    "kummer_1f1",
    "ou_asymptotic_spectrum",
    "ou_stationary",
    "regime_scan",
    "regime_threshold",
    "relaxation_time",
    "rho",
    "simulate",
    "sinh_over_cosh_scaled",
    "soft_attractive_spectrum",
    "solve_eigenvalue",
    "solve_smooth_pasting",
    "spread_coefficient",
    "stationary_ode_residual",
    "surface",
    "tanh_ratio",
    "uniform_grid",
    "validate",
]
