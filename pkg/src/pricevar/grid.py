"""Elementary segments, oscillations and the grid parameters.

A grid holds ``n + 1`` segments indexed ``0..n``, so there are ``n``
adjacent pairs and ``rho[0]``, ``rho[n]`` are the endpoint densities.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateGrid,
    EpsilonOutOfRange,
    NoTicksAtAll,
    SeriesTooShort,
    SingleSegment,
)
from .variation import PriceSeries


@dataclass(frozen=True)
class SegmentStats:
    index: int
    M: float
    m: float
    close: float = float("nan")
    start_ms: float = 0.0
    end_ms: float = 0.0
    ticks: int = 0

    @property
    def omega(self) -> float:
        return self.M - self.m

    @property
    def midpoint(self) -> float:
        return (self.M + self.m) / 2.0


@dataclass(frozen=True)
class SegmentGrid:
    segments: tuple
    segment_width: float

    def __len__(self) -> int:
        return len(self.segments)

    @property
    def n(self) -> int:
        return len(self.segments) - 1

    @property
    def omegas(self) -> np.ndarray:
        return np.array([s.omega for s in self.segments], dtype=np.float64)

    def window(self, start: int, stop: int) -> "SegmentGrid":
        """Sub-grid of segments ``start..stop-1``, re-indexed from 0."""
        picked = self.segments[start:stop]
        segs = tuple(
            SegmentStats(i, s.M, s.m, s.close, s.start_ms, s.end_ms, s.ticks)
            for i, s in enumerate(picked)
        )
        return SegmentGrid(segs, self.segment_width)

    @classmethod
    def from_boxes(cls, boxes, segment_width: float = 1.0) -> "SegmentGrid":
        """Grid straight from ``(M, m)`` pairs; handy for tests and synthetic data."""
        segs = []
        for i, (M, m) in enumerate(boxes):
            if m > M:
                raise ValueError(f"segment {i}: inf {m} exceeds sup {M}")
            segs.append(SegmentStats(i, float(M), float(m), float(m),
                                     i * segment_width, (i + 1) * segment_width, 1))
        return cls(tuple(segs), segment_width)


@dataclass(frozen=True)
class GridParams:
    n: int
    lam: float
    rho: tuple
    rho_bar: float
    alpha1: float
    alpha2: float
    alpha2_signed: float
    shift_sum: float
    grid_V: float

    @property
    def alpha(self) -> float:
        return self.alpha1 + self.alpha2

    @property
    def alpha_signed(self) -> float:
        return self.alpha1 + self.alpha2_signed

    @property
    def omega(self) -> float:
        """Average oscillation ``lam * rho_bar``."""
        return self.lam * self.rho_bar

    @property
    def reconstruction(self) -> float:
        """``2 n lam rho_bar (1 + alpha1 + alpha2)``."""
        return 2.0 * self.n * self.lam * self.rho_bar * (1.0 + self.alpha1 + self.alpha2)

    @property
    def endpoint_residual(self) -> float:
        # grid_V - reconstruction = 2 lam (rho_bar - rho_0); zero for uniform densities
        return 2.0 * self.lam * (self.rho_bar - self.rho[0])


@dataclass(frozen=True)
class ConditionReport:
    epsilon_rho: float
    violations: int
    pairs: int

    @property
    def fraction(self) -> float:
        return self.violations / self.pairs if self.pairs else 0.0


def build_grid(series: PriceSeries, segment_count: int) -> SegmentGrid:
    """Cut ``[a, b]`` into ``segment_count`` equal half-open cells (last closed).

    Empty cells carry the previous close forward with zero oscillation.
    """
    if segment_count < 1:
        raise ValueError("segment_count must be >= 1")
    if len(series) == 0:
        raise NoTicksAtAll("series has no ticks")
    if len(series) < 2:
        raise SeriesTooShort(f"need at least 2 ticks, got {len(series)}")

    a, b = series.start, series.end
    span = b - a
    width = span / segment_count
    # integer arithmetic keeps cell assignment exact
    idx = ((series.timestamps - a) * segment_count) // span
    idx = np.minimum(idx, segment_count - 1)

    prices = series.prices
    bounds = np.searchsorted(idx, np.arange(segment_count + 1), side="left")
    segs = []
    prev_close = None
    for k in range(segment_count):
        lo, hi = bounds[k], bounds[k + 1]
        start_ms, end_ms = a + k * width, a + (k + 1) * width
        if hi > lo:
            chunk = prices[lo:hi]
            seg = SegmentStats(k, float(chunk.max()), float(chunk.min()), float(chunk[-1]),
                               start_ms, end_ms, int(hi - lo))
        else:
            if prev_close is None:
                raise NoTicksAtAll("leading segment has no ticks")
            seg = SegmentStats(k, prev_close, prev_close, prev_close, start_ms, end_ms, 0)
        prev_close = seg.close
        segs.append(seg)
    return SegmentGrid(tuple(segs), width)


def pair_increment(prev: SegmentStats, nxt: SegmentStats) -> float:
    """Span of two neighbouring boxes: ``max(M) - min(m)``."""
    return max(prev.M, nxt.M) - min(prev.m, nxt.m)


def pair_increment_halfsum(prev: SegmentStats, nxt: SegmentStats) -> float:
    """Same quantity written through oscillations and edge moves."""
    return (prev.omega + nxt.omega + abs(prev.M - nxt.M) + abs(prev.m - nxt.m)) / 2.0


def min_shift(prev: SegmentStats, nxt: SegmentStats) -> float:
    return min(abs(nxt.M - prev.m), abs(prev.M - nxt.m))


def _require_pairs(grid: SegmentGrid) -> None:
    if len(grid) < 2:
        raise SingleSegment("grid needs at least 2 segments to form a pair")


def _pairs(grid: SegmentGrid):
    segs = grid.segments
    return zip(segs[:-1], segs[1:])


def grid_variation(grid: SegmentGrid) -> float:
    _require_pairs(grid)
    total = 0.0
    for prev, nxt in _pairs(grid):
        total += prev.omega + nxt.omega
    for prev, nxt in _pairs(grid):
        total += min_shift(prev, nxt)
    return total


def signed_shift_sum(grid: SegmentGrid) -> float:
    """Sum of min shifts weighted by the sign of the midpoint move.

    A transition whose midpoint moves down counts positively, so positive
    anisotropy means downward drift.
    """
    total = 0.0
    for prev, nxt in _pairs(grid):
        drop = prev.midpoint - nxt.midpoint
        if drop != 0.0:
            total += np.sign(drop) * min_shift(prev, nxt)
    return float(total)


def estimate_params(grid: SegmentGrid) -> GridParams:
    _require_pairs(grid)
    omegas = grid.omegas
    lam = float(omegas.max())
    if lam <= 0.0:
        raise DegenerateGrid("every segment has zero oscillation; no oscillation bound")
    n = grid.n
    rho = omegas / lam
    rho_bar = float(rho.mean())
    shifts = float(sum(min_shift(p, q) for p, q in _pairs(grid)))
    denom = 2.0 * n * lam * rho_bar
    return GridParams(
        n=n,
        lam=lam,
        rho=tuple(float(r) for r in rho),
        rho_bar=rho_bar,
        alpha1=float((rho[0] - rho[-1]) / (2.0 * n * rho_bar)),
        alpha2=shifts / denom,
        alpha2_signed=signed_shift_sum(grid) / denom,
        shift_sum=shifts,
        grid_V=grid_variation(grid),
    )


def check_density_condition(grid: SegmentGrid, epsilon_rho: float) -> ConditionReport:
    """Count neighbouring segments whose densities differ by ``epsilon_rho`` or more."""
    if not 0.0 < epsilon_rho < 1.0:
        raise EpsilonOutOfRange(f"epsilon_rho must lie in (0, 1), got {epsilon_rho}")
    omegas = grid.omegas
    lam = omegas.max()
    if len(grid) < 2:
        return ConditionReport(epsilon_rho, 0, 0)
    if lam <= 0.0:
        raise DegenerateGrid("every segment has zero oscillation; densities undefined")
    rho = omegas / lam
    violations = int(np.count_nonzero(np.abs(np.diff(rho)) >= epsilon_rho))
    return ConditionReport(epsilon_rho, violations, len(grid) - 1)
