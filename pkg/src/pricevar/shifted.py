"""Shifted frame, directional probability, moments and bands.

For anisotropy ``alpha`` the range of differences moves by ``z0 = -2 n alpha``
and the walk in the primed frame has ``2n' = 2n - |z0|`` steps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .counting import normal_cdf
from .errors import (
    AlphaOutOfUnitInterval,
    EmptyRange,
    NonPositiveOmega,
    NonPositiveSigma,
    OutOfRange,
    WindowTooLarge,
)
from .grid import SegmentGrid, build_grid, check_density_condition, estimate_params
from .variation import PriceSeries

CLAMP_MARGIN = 1e-9


@dataclass(frozen=True)
class FrameShift:
    n: int
    z0: int
    doubled_z_prime: int
    doubled_n_prime: int

    @property
    def z_prime(self) -> float:
        return self.doubled_z_prime / 2

    @property
    def n_prime(self) -> float:
        return self.doubled_n_prime / 2


@dataclass(frozen=True)
class ModelMoments:
    mu: float
    sigma: float
    mu_omega: float
    sigma_omega: float


@dataclass(frozen=True)
class BandPoint:
    timestamp: int
    center: float
    upper: float
    lower: float
    k: float
    alpha: float
    sigma: float
    condition_fraction: float


@dataclass(frozen=True)
class SimulationResult:
    samples: np.ndarray
    z0: int
    alpha_requested: float
    alpha_realized: float
    omega: float
    n: int

    @property
    def doubled_n_prime(self) -> int:
        return 2 * self.n - abs(self.z0)


def check_alpha(alpha: float) -> None:
    if not -1.0 < alpha < 1.0:
        raise AlphaOutOfUnitInterval(
            f"alpha={alpha!r} is outside (-1, 1); pass --clamp to pull it to "
            f"+-(1 - {CLAMP_MARGIN:g})")


def clamp_alpha(alpha: float) -> float:
    bound = 1.0 - CLAMP_MARGIN
    return min(max(alpha, -bound), bound)


def admissible_range(n: int, z0: int) -> range:
    """Integers ``z`` with ``|2z - z0| <= 2n - |z0|``."""
    room = 2 * n - abs(z0)
    if room < 0:
        raise EmptyRange(f"|z0|={abs(z0)} exceeds 2n={2 * n}")
    lo = -((room - z0) // 2)  # ceil((z0 - room) / 2)
    hi = (z0 + room) // 2
    return range(lo, hi + 1)


def shift_frame(z: int, n: int, z0: int) -> FrameShift:
    if z not in admissible_range(n, z0):
        raise OutOfRange(f"z={z} is not admissible for n={n}, z0={z0}")
    return FrameShift(n=n, z0=z0, doubled_z_prime=2 * z - z0, doubled_n_prime=2 * n - abs(z0))


def z0_from_alpha(alpha: float, n: int) -> float:
    return -2.0 * n * alpha


def zeta_prime(zeta: float, alpha: float, n: int) -> float:
    check_alpha(alpha)
    return (zeta + alpha * math.sqrt(2.0 * n)) / math.sqrt(1.0 - abs(alpha))


def p_leq_zero(alpha: float, n: int) -> float:
    """Share of functions whose endpoint difference is not positive."""
    return normal_cdf(zeta_prime(0.0, alpha, n))


def moments(alpha: float, n: int, omega: float) -> ModelMoments:
    check_alpha(alpha)
    if not omega > 0.0:
        raise NonPositiveOmega(f"omega must be positive, got {omega}")
    mu_omega = -2.0 * n * alpha
    sigma_omega = math.sqrt(2.0 * n * (1.0 - abs(alpha)))
    return ModelMoments(mu=mu_omega * omega, sigma=sigma_omega * omega,
                        mu_omega=mu_omega, sigma_omega=sigma_omega)


def p_leq_zero_from_moments(mu: float, sigma: float) -> float:
    if not sigma > 0.0:
        raise NonPositiveSigma(f"sigma must be positive, got {sigma}")
    return normal_cdf(-mu / sigma)


def _even_round(x: float) -> int:
    return 2 * round(x / 2.0)


def simulate_differences(n: int, alpha: float, omega: float, count: int,
                         seed: int) -> SimulationResult:
    """Sample endpoint differences ``D = omega * (z0 + S)``.

    ``S`` is the signed sum of ``2n - |z0|`` fair unit steps; ``z0`` is
    ``-2 n alpha`` rounded to the nearest even integer so that ``n'`` is whole.
    """
    check_alpha(alpha)
    if not omega > 0.0:
        raise NonPositiveOmega(f"omega must be positive, got {omega}")
    if count < 1:
        raise ValueError("count must be positive")
    z0 = _even_round(z0_from_alpha(alpha, n))
    if abs(z0) > 2 * n:
        z0 = int(math.copysign(2 * n, z0))
    steps = 2 * n - abs(z0)
    rng = np.random.default_rng(seed)
    ups = rng.binomial(steps, 0.5, size=count) if steps else np.zeros(count, dtype=np.int64)
    s = 2 * ups - steps
    return SimulationResult(samples=omega * (z0 + s).astype(np.float64), z0=z0,
                            alpha_requested=alpha, alpha_realized=-z0 / (2.0 * n),
                            omega=omega, n=n)


def rolling_bands(series: PriceSeries, window_segments: int, k: float = 2.0,
                  epsilon_rho: float = 0.5, segment_count: int = 64,
                  grid: SegmentGrid | None = None) -> list:
    """Forecast bands ``close + mu +- k sigma`` over rolling windows of segments.

    Each window is a run of ``window_segments`` consecutive cells of the
    series grid; its signed anisotropy is clamped into the unit interval.
    Each point also carries the share of density-condition violations in
    its window.
    """
    if k < 0:
        raise ValueError("band width multiplier must be non-negative")
    if window_segments < 2:
        raise WindowTooLarge("a window needs at least 2 segments")
    if grid is None:
        grid = build_grid(series, segment_count)
    if window_segments > len(grid):
        raise WindowTooLarge(f"window of {window_segments} segments exceeds grid of {len(grid)}")
    points = []
    for stop in range(window_segments, len(grid) + 1):
        sub = grid.window(stop - window_segments, stop)
        params = estimate_params(sub)
        alpha = clamp_alpha(params.alpha_signed)
        mom = moments(alpha, params.n, params.omega)
        condition = check_density_condition(sub, epsilon_rho)
        last = sub.segments[-1]
        center = last.close + mom.mu
        half = k * mom.sigma
        points.append(BandPoint(timestamp=int(round(last.end_ms)), center=center,
                                upper=center + half, lower=center - half, k=k,
                                alpha=alpha, sigma=mom.sigma,
                                condition_fraction=condition.fraction))
    return points
