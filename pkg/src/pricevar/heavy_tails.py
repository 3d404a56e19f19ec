"""Heavy-tailed law built from a zeta-dependent frame shift.

The observed variable ``zeta`` is pushed through

    g(zeta) = zeta - sign(zeta) * (zeta**2 - zeta0**2) / 12

and ``P(zeta) = Phi(g(zeta))``. ``g`` is increasing on ``[-6, 6]`` (its
slope is ``1 - |zeta| / 6``) and jumps by ``zeta0**2 / 6`` at the origin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr, ndtri

from .counting import normal_cdf
from .errors import NoSamples, NonPositiveBinWidth, OutsideMonotoneDomain, SingularSystem

DOMAIN = 6.0
BISECTION_TOL = 1e-10
UNIFORM = "uniform"


@dataclass(frozen=True)
class HeavyTailSpec:
    zeta0: float
    C1: float
    C2: float

    @classmethod
    def from_zeta0(cls, zeta0: float) -> "HeavyTailSpec":
        c1, c2 = solve_constants(zeta0)
        return cls(zeta0, c1, c2)

    def residuals(self) -> tuple[float, float]:
        return (self.C1 + 18.0 * self.C2 - 3.0,
                self.C1 + self.zeta0**2 / 2.0 * self.C2 - self.zeta0)


@dataclass(frozen=True)
class Histogram:
    edges: np.ndarray
    counts: np.ndarray
    model_density: np.ndarray
    normal_density: np.ndarray

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.edges)

    @property
    def midpoints(self) -> np.ndarray:
        return (self.edges[:-1] + self.edges[1:]) / 2.0

    @property
    def empirical_density(self) -> np.ndarray:
        return self.counts / (self.total * self.widths)

    def to_csv(self) -> str:
        lines = ["bin_left,bin_right,count,empirical_density,normal_density"]
        emp = self.empirical_density
        for i in range(self.counts.size):
            lines.append(f"{self.edges[i]:.6g},{self.edges[i + 1]:.6g},{int(self.counts[i])},"
                         f"{emp[i]:.6g},{self.normal_density[i]:.6g}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class HeavySamples:
    values: np.ndarray
    zeta0: np.ndarray
    clamped: int


def solve_constants(zeta0: float) -> tuple[float, float]:
    """Solve ``C1 + 18 C2 = 3`` and ``C1 + zeta0**2 / 2 * C2 = zeta0``."""
    pivot = 18.0 - zeta0 * zeta0 / 2.0
    if pivot == 0.0:
        raise SingularSystem(f"zeta0={zeta0} makes the constant system singular")
    c2 = (3.0 - zeta0) / pivot
    return 3.0 - 18.0 * c2, c2


def rfr_shift(zeta: float, C1: float, C2: float) -> float:
    """``-sign(zeta) * (C1 + C2 * zeta**2 / 2)``, zero at the origin."""
    if zeta == 0.0:
        return 0.0
    return -math.copysign(1.0, zeta) * (C1 + C2 * zeta * zeta / 2.0)


def transform(zeta, zeta0):
    """Vectorized ``g``; ``g(0) = 0``."""
    zeta = np.asarray(zeta, dtype=np.float64)
    return zeta - np.sign(zeta) * (zeta * zeta - np.asarray(zeta0) ** 2) / 12.0


def _check_domain(zeta: float) -> None:
    if abs(zeta) > DOMAIN:
        raise OutsideMonotoneDomain(f"|zeta|={abs(zeta)} is beyond the monotone domain {DOMAIN}")


def heavy_cdf(zeta: float, zeta0: float) -> float:
    _check_domain(zeta)
    if zeta == 0.0:
        return 0.5
    return normal_cdf(float(transform(zeta, zeta0)))


def heavy_cdf_limits(zeta: float, zeta0: float) -> tuple[float, float]:
    """Left and right limits of the CDF; they differ only at the origin."""
    if zeta == 0.0:
        jump = zeta0 * zeta0 / 12.0
        return normal_cdf(-jump), normal_cdf(jump)
    value = heavy_cdf(zeta, zeta0)
    return value, value


def heavy_pdf(zeta, zeta0):
    """Density of the continuous part, ``phi(g(zeta)) * (1 - |zeta| / 6)``."""
    zeta = np.asarray(zeta, dtype=np.float64)
    g = transform(zeta, zeta0)
    return np.exp(-0.5 * g * g) / math.sqrt(2.0 * math.pi) * (1.0 - np.abs(zeta) / DOMAIN)


def tail_ratio(zeta: float, zeta0: float) -> float:
    """Heavy right tail over the normal right tail at ``zeta > 0``."""
    if not zeta > 0.0:
        raise ValueError("tail_ratio needs zeta > 0")
    _check_domain(zeta)
    heavy_tail = normal_cdf(-float(transform(zeta, zeta0)))
    return heavy_tail / normal_cdf(-zeta)


def _invert(y: np.ndarray, zeta0: np.ndarray) -> np.ndarray:
    """Solve ``g(zeta) = y`` on ``[0, 6]`` for ``y >= 0`` by bisection."""
    lo = np.zeros_like(y)
    hi = np.full_like(y, DOMAIN)
    iterations = math.ceil(math.log2(DOMAIN / BISECTION_TOL)) + 1
    for _ in range(iterations):
        mid = (lo + hi) / 2.0
        below = transform(mid, zeta0) < y
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return (lo + hi) / 2.0


def sample_heavy(count: int, zeta0=UNIFORM, seed: int = 0) -> HeavySamples:
    """Inverse-transform samples of the heavy-tailed law.

    ``zeta0`` is a fixed value in ``[0, 1)`` or ``"uniform"`` to draw it per
    sample. Normal quantiles past ``g(+-6)`` are clamped to ``+-6``; quantiles
    inside the jump at the origin map to 0.
    """
    if count < 1:
        raise NoSamples("count must be positive")
    rng = np.random.default_rng(seed)
    if isinstance(zeta0, str):
        if zeta0 != UNIFORM:
            raise ValueError(f"unknown zeta0 mode {zeta0!r}")
        z0 = rng.random(count)
    else:
        if not 0.0 <= zeta0 < 1.0:
            raise ValueError("fixed zeta0 must lie in [0, 1)")
        z0 = np.full(count, float(zeta0))
    u = rng.random(count)
    u = np.where(u == 0.0, np.nextafter(0.0, 1.0), u)
    y = ndtri(u)

    top = transform(DOMAIN, z0)
    clamped = np.abs(y) >= top
    jump = z0 * z0 / 12.0
    inside = np.abs(y) <= jump
    magnitude = _invert(np.minimum(np.abs(y), top), z0)
    out = np.sign(y) * magnitude
    out = np.where(clamped, np.sign(y) * DOMAIN, out)
    out = np.where(inside, 0.0, out)
    return HeavySamples(values=out, zeta0=z0, clamped=int(clamped.sum()))


def ks_statistic(samples, zeta0: float) -> float:
    """Kolmogorov-Smirnov distance to the heavy CDF with fixed ``zeta0``.

    Handles the atom at the origin by comparing one-sided limits.
    """
    x = np.sort(np.asarray(samples, dtype=np.float64))
    n = x.size
    if n == 0:
        raise NoSamples("no samples")
    values, first = np.unique(x, return_index=True)
    last = np.append(first[1:], n)
    g = transform(values, zeta0)
    right = ndtr(g)
    left = right.copy()
    at_zero = values == 0.0
    if at_zero.any():
        jump = zeta0 * zeta0 / 12.0
        right[at_zero] = ndtr(jump)
        left[at_zero] = ndtr(-jump)
    ecdf_right = last / n
    ecdf_left = first / n
    return float(max(np.max(np.abs(ecdf_right - right)), np.max(np.abs(ecdf_left - left))))


def tail_mass(samples, threshold: float = 3.0) -> float:
    x = np.asarray(samples)
    return float(np.count_nonzero(np.abs(x) > threshold)) / x.size


def expected_tail_mass(zeta0, threshold: float = 3.0) -> float:
    """Two-sided mass beyond ``threshold``; a ``"uniform"`` zeta0 is averaged over [0, 1)."""
    if isinstance(zeta0, str):
        nodes, weights = np.polynomial.legendre.leggauss(32)
        z0 = (nodes + 1.0) / 2.0
        vals = 2.0 * ndtr(-transform(threshold, z0))
        return float(np.sum(weights * vals) / 2.0)
    return float(2.0 * ndtr(-transform(threshold, zeta0)))


def _model_density(mid: np.ndarray, zeta0) -> np.ndarray:
    if isinstance(zeta0, str):
        nodes, weights = np.polynomial.legendre.leggauss(32)
        z0 = (nodes + 1.0) / 2.0
        return np.array([np.sum(weights * heavy_pdf(m, z0)) / 2.0 for m in mid])
    return heavy_pdf(mid, zeta0)


def build_histogram(samples, bin_width: float, zeta0=UNIFORM) -> Histogram:
    """Bin samples over ``[-6, 6]`` with normal and model overlays at midpoints."""
    x = np.asarray(samples, dtype=np.float64)
    if x.size == 0:
        raise NoSamples("cannot build a histogram from zero samples")
    if not bin_width > 0.0:
        raise NonPositiveBinWidth(f"bin width must be positive, got {bin_width}")
    nbins = math.ceil(round(2 * DOMAIN / bin_width, 9))
    edges = -DOMAIN + bin_width * np.arange(nbins + 1)
    counts, _ = np.histogram(np.clip(x, -DOMAIN, DOMAIN), bins=edges)
    mid = (edges[:-1] + edges[1:]) / 2.0
    normal = np.exp(-0.5 * mid * mid) / math.sqrt(2.0 * math.pi)
    return Histogram(edges=edges, counts=counts, model_density=_model_density(mid, zeta0),
                     normal_density=normal)
