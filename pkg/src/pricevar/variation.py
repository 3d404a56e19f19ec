"""Total variation and Jordan decomposition of sampled price series.

The samples are the function: the supremum over partitions is realized by
the partition through every tick, so ``V`` is the plain sum of absolute
increments.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidSeries, SeriesTooShort

# identity checks are absolute after scaling by max(1, V)
IDENTITY_TOL = 1e-9


@dataclass(frozen=True)
class PriceSeries:
    """Tick prices on ``T = [timestamps[0], timestamps[-1]]``.

    Timestamps are integer epoch milliseconds, strictly increasing.
    """

    timestamps: np.ndarray
    prices: np.ndarray

    def __post_init__(self):
        ts = np.asarray(self.timestamps, dtype=np.int64)
        px = np.asarray(self.prices, dtype=np.float64)
        if ts.ndim != 1 or px.ndim != 1 or ts.shape != px.shape:
            raise InvalidSeries("timestamps and prices must be 1-d arrays of equal length")
        if ts.size > 1 and np.any(np.diff(ts) <= 0):
            raise InvalidSeries("timestamps must be strictly increasing")
        if not np.all(np.isfinite(px)):
            raise InvalidSeries("prices must be finite")
        ts.setflags(write=False)
        px.setflags(write=False)
        object.__setattr__(self, "timestamps", ts)
        object.__setattr__(self, "prices", px)

    @classmethod
    def from_prices(cls, prices, step_ms: int = 1) -> "PriceSeries":
        """Series with evenly spaced timestamps ``0, step_ms, 2*step_ms, ...``."""
        px = np.asarray(prices, dtype=np.float64)
        return cls(np.arange(px.size, dtype=np.int64) * step_ms, px)

    def __len__(self) -> int:
        return int(self.prices.size)

    @property
    def start(self) -> int:
        return int(self.timestamps[0])

    @property
    def end(self) -> int:
        return int(self.timestamps[-1])


@dataclass(frozen=True)
class VariationProfile:
    cumulative: np.ndarray
    total: float


@dataclass(frozen=True)
class JordanPair:
    f_plus: np.ndarray
    f_minus: np.ndarray


@dataclass(frozen=True)
class VariationSummary:
    D: float
    V: float
    sigma_plus: float
    sigma_minus: float

    @property
    def hyperbola(self) -> float:
        """``sigma_plus * sigma_minus``, which equals ``(V**2 - D**2) / 4``."""
        return self.sigma_plus * self.sigma_minus

    def identity_errors(self) -> dict[str, float]:
        """Normalized residuals of the difference, sum and product identities."""
        scale = max(1.0, self.V)
        return {
            "difference": abs(self.sigma_plus - self.sigma_minus - self.D) / scale,
            "sum": abs(self.sigma_plus + self.sigma_minus - self.V) / scale,
            "hyperbola": abs(self.hyperbola - (self.V**2 - self.D**2) / 4.0) / scale**2,
        }

    def identities_hold(self, tol: float = IDENTITY_TOL) -> bool:
        return all(err < tol for err in self.identity_errors().values())


def _require_length(series: PriceSeries) -> None:
    if len(series) < 2:
        raise SeriesTooShort(f"need at least 2 ticks, got {len(series)}")


def total_variation(series: PriceSeries) -> VariationProfile:
    _require_length(series)
    steps = np.abs(np.diff(series.prices))
    cumulative = np.concatenate(([0.0], np.cumsum(steps)))
    return VariationProfile(cumulative=cumulative, total=float(cumulative[-1]))


def jordan_decompose(series: PriceSeries) -> JordanPair:
    """Split ``f`` into non-decreasing parts with ``f = f_plus - f_minus``.

    Uses ``f_plus = (V(t) + f(t)) / 2`` and ``f_minus = (V(t) - f(t)) / 2``.
    """
    cumulative = total_variation(series).cumulative
    f = series.prices
    return JordanPair(f_plus=(cumulative + f) / 2.0, f_minus=(cumulative - f) / 2.0)


def variation_summary(series: PriceSeries) -> VariationSummary:
    pair = jordan_decompose(series)
    prices = series.prices
    D = float(prices[-1] - prices[0])
    sigma_plus = float(pair.f_plus[-1] - pair.f_plus[0])
    sigma_minus = float(pair.f_minus[-1] - pair.f_minus[0])
    V = float(np.sum(np.abs(np.diff(prices))))
    return VariationSummary(D=D, V=V, sigma_plus=sigma_plus, sigma_minus=sigma_minus)


def is_monotone(series: PriceSeries) -> bool:
    d = np.diff(series.prices)
    return bool(np.all(d >= 0) or np.all(d <= 0))
