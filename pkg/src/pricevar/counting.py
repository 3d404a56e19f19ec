"""Counting sign sequences of ``2n`` unit oscillations by endpoint difference.

A sequence with ``z + n`` up-moves and ``n - z`` down-moves ends at
``d = 2z``; there are ``C(2n, z + n)`` of them out of ``4**n``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .errors import TooLargeForEnumeration

EXACT_CAP = 512
ENUMERATION_CAP = 12


@dataclass(frozen=True)
class CountDistribution:
    n: int
    counts: dict = field(repr=False)
    probabilities: dict = field(repr=False)

    @property
    def support(self) -> range:
        return range(-self.n, self.n + 1)


@dataclass(frozen=True)
class ZetaScale:
    n: int

    @property
    def delta(self) -> float:
        return math.sqrt(2.0 / self.n)

    def zeta_of(self, z: float) -> float:
        return z * self.delta


def exact_count(n: int, z: int) -> int:
    if n < 1:
        raise ValueError("n must be a positive integer")
    if abs(z) > n:
        return 0
    return math.comb(2 * n, z + n)


def _log_probability(n: int, z: int) -> float:
    k = z + n
    return (math.lgamma(2 * n + 1) - math.lgamma(k + 1) - math.lgamma(2 * n - k + 1)
            - 2 * n * math.log(2.0))


def distribution(n: int, cap: int = EXACT_CAP) -> CountDistribution:
    """Exact counts over ``z = -n..n``; probabilities exact up to ``cap``, log-gamma above."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    counts = {z: exact_count(n, z) for z in range(-n, n + 1)}
    if n <= cap:
        total = 4**n
        # int / int is correctly rounded for arbitrarily large operands
        probs = {z: c / total for z, c in counts.items()}
    else:
        probs = {z: math.exp(_log_probability(n, z)) for z in counts}
    return CountDistribution(n=n, counts=counts, probabilities=probs)


def gaussian_approx(n: int, z: int) -> float:
    return math.exp(-z * z / n) / math.sqrt(math.pi * n)


def gaussian_approx_zeta(n: int, z: int) -> float:
    """The same approximation written as a normal density times ``delta``."""
    scale = ZetaScale(n)
    zeta = scale.zeta_of(z)
    return math.exp(-zeta * zeta / 2.0) / math.sqrt(2.0 * math.pi) * scale.delta


def normal_cdf(x: float) -> float:
    """Standard normal CDF.

    ``0.5 * erfc(-x / sqrt(2))`` keeps full relative accuracy in the left
    tail; the right tail is limited only by double rounding near 1.
    """
    if math.isnan(x):
        raise ValueError("normal_cdf of NaN")
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def normal_pdf(x: float) -> float:
    return math.exp(-0.5 * x * x) / math.sqrt(2.0 * math.pi)


def enumerate_paths(n: int) -> CountDistribution:
    """Brute-force oracle: walk every ``+-1`` sequence of length ``2n``."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    if n > ENUMERATION_CAP:
        raise TooLargeForEnumeration(f"n={n} exceeds the enumeration cap {ENUMERATION_CAP}")
    counts = {z: 0 for z in range(-n, n + 1)}
    for steps in itertools.product((1, -1), repeat=2 * n):
        counts[sum(steps) // 2] += 1
    total = 4**n
    return CountDistribution(n=n, counts=counts,
                             probabilities={z: c / total for z, c in counts.items()})
