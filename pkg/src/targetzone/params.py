"""Model parameters, validation, fundamental grids, and random streams.

Every other module consumes :class:`ModelParams` and (for simulation) a
:class:`RngStream`.  All types here are immutable after construction and
safe to share across threads.

Units are a documented convention, never enforced: time in years, the
fundamental in log units.  The band is the symmetric interval
``[-f_bar, +f_bar]`` around central parity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = ["ModelParams", "Grid", "RngStream", "validate", "rho", "uniform_grid"]


@dataclass(frozen=True)
class ModelParams:
    """Scalar inputs of the target-zone model.

    alpha      expectation-updating rate (1/time unit)
    beta       risk intensity of the mean-preserving-spread drift
               (1/fundamental unit); beta = 0 is the Gaussian limit
    sigma      diffusion scale (fundamental unit / sqrt(time))
    f_bar      band half-width (log-fundamental units)
    horizon_T  exit time of the target zone (years)
    r_share    discount share in [0, 1); used only by the mean-reverting
               (Ornstein-Uhlenbeck) variants
    """

    alpha: float
    beta: float = 0.0
    sigma: float = 1.0
    f_bar: float = 0.1
    horizon_T: float = 3.0
    r_share: float = 0.0

    def rho(self) -> float:
        """Composite decay frequency beta^2/2 + alpha."""
        return 0.5 * self.beta**2 + self.alpha


def validate(params: ModelParams) -> ModelParams:
    """Return ``params`` unchanged if all invariants hold.

    Raises :class:`DomainError` naming the first violated invariant.
    """
    if not np.isfinite(params.alpha) or params.alpha <= 0.0:
        raise DomainError("alpha must be positive")
    if not np.isfinite(params.sigma) or params.sigma <= 0.0:
        raise DomainError("sigma must be positive")
    if not np.isfinite(params.f_bar) or params.f_bar <= 0.0:
        raise DomainError("f_bar must be positive")
    if not np.isfinite(params.horizon_T) or params.horizon_T <= 0.0:
        raise DomainError("horizon_T must be positive")
    if not np.isfinite(params.beta) or params.beta < 0.0:
        raise DomainError("beta must be non-negative")
    if not 0.0 <= params.r_share < 1.0:
        raise DomainError("r_share must lie in [0, 1)")
    if not np.isfinite(params.rho()):
        raise DomainError("rho = beta^2/2 + alpha must be finite")
    return params


def rho(params: ModelParams) -> float:
    """beta^2/2 + alpha, the decay frequency entering every time constant."""
    return params.rho()


@dataclass(frozen=True, eq=False)
class Grid:
    """Uniform grid of fundamental values spanning the band exactly."""

    points: np.ndarray
    spacing: float

    def __len__(self) -> int:
        return len(self.points)


def uniform_grid(params: ModelParams, n_points: int) -> Grid:
    """Uniform grid with endpoints exactly at -f_bar and +f_bar."""
    if n_points < 2:
        raise DomainError("grid needs at least 2 points")
    pts = np.linspace(-params.f_bar, params.f_bar, n_points)
    return Grid(points=pts, spacing=float(pts[1] - pts[0]))


@dataclass(frozen=True)
class RngStream:
    """Deterministic random stream addressed by (seed, stream_id).

    Identical (seed, stream_id) reproduces identical draws; distinct
    stream_ids give statistically independent streams.  Every Monte Carlo
    path owns one stream, so results never depend on thread count.
    """

    seed: int
    stream_id: int = 0

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream_id,))
        return np.random.default_rng(ss)

    def normals(self, n: int) -> np.ndarray:
        """First ``n`` standard-normal draws of this stream."""
        return self.generator().standard_normal(n)
