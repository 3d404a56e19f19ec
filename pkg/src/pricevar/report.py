"""Run configuration and the full analysis of one tick series."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidConfig
from .grid import build_grid, check_density_condition, estimate_params
from .shifted import check_alpha, clamp_alpha, moments, p_leq_zero, p_leq_zero_from_moments
from .variation import PriceSeries, variation_summary

SCHEMA_VERSION = 1
CROSS_CHECK_TOL = 1e-12


@dataclass(frozen=True)
class RunConfig:
    segment_count: int = 64
    epsilon_rho: float = 0.5
    alpha_policy: str = "error"
    k: float = 2.0
    window_segments: int = 16
    seed: int = 0
    output_format: str = "json"

    def __post_init__(self):
        if self.segment_count < 1:
            raise InvalidConfig("--segments must be >= 1")
        if not 0.0 < self.epsilon_rho < 1.0:
            raise InvalidConfig("--epsilon-rho must lie in (0, 1)")
        if self.alpha_policy not in ("error", "clamp"):
            raise InvalidConfig("alpha policy must be 'error' or 'clamp'")
        if not (self.k >= 0.0 and math.isfinite(self.k)):
            raise InvalidConfig("--k must be a finite non-negative number")
        if self.window_segments < 2:
            raise InvalidConfig("--window must be >= 2")
        if not 0 <= self.seed < 2**64:
            raise InvalidConfig("--seed must fit in 64 bits")
        if self.output_format not in ("json", "csv"):
            raise InvalidConfig("--format must be 'json' or 'csv'")


def _probability_block(alpha: float, n: int, omega: float, policy: str) -> dict:
    clamped = False
    if policy == "clamp" and not -1.0 < alpha < 1.0:
        alpha, clamped = clamp_alpha(alpha), True
    check_alpha(alpha)
    p = p_leq_zero(alpha, n)
    mom = moments(alpha, n, omega)
    p_mom = p_leq_zero_from_moments(mom.mu, mom.sigma)
    return {
        "alpha": alpha,
        "clamped": clamped,
        "p_leq_zero": p,
        "mu": mom.mu,
        "sigma": mom.sigma,
        "p_leq_zero_from_moments": p_mom,
        "moments_identity_ok": abs(p - p_mom) < CROSS_CHECK_TOL,
    }


def analyze(series: PriceSeries, config: RunConfig | None = None, source: str = "-") -> dict:
    """Variation identities, grid parameters and directional probabilities.

    Both anisotropy variants are reported: ``unsigned`` uses the plain
    min-shift sum, ``signed`` weights each shift by the direction of the
    midpoint move.
    """
    config = config or RunConfig()
    summary = variation_summary(series)
    grid = build_grid(series, config.segment_count)
    params = estimate_params(grid)
    condition = check_density_condition(grid, config.epsilon_rho)

    unsigned = _probability_block(params.alpha, params.n, params.omega, config.alpha_policy)
    signed = _probability_block(params.alpha_signed, params.n, params.omega, config.alpha_policy)

    errors = summary.identity_errors()
    checks = {
        "variation_identities_ok": summary.identities_hold(),
        "moments_identity_ok": unsigned["moments_identity_ok"] and signed["moments_identity_ok"],
    }
    return {
        "schema_version": SCHEMA_VERSION,
        "source": {
            "file": source,
            "ticks": len(series),
            "start_ms": series.start,
            "end_ms": series.end,
            "span_ms": series.end - series.start,
        },
        "config": {
            "segments": config.segment_count,
            "epsilon_rho": config.epsilon_rho,
            "alpha_policy": config.alpha_policy,
        },
        "variation": {
            "D": summary.D,
            "V": summary.V,
            "sigma_plus": summary.sigma_plus,
            "sigma_minus": summary.sigma_minus,
            "hyperbola": summary.hyperbola,
            "identity_errors": errors,
        },
        "grid": {
            "n": params.n,
            "segment_width_ms": grid.segment_width,
            "empty_segments": sum(1 for s in grid.segments if s.ticks == 0),
            "lambda": params.lam,
            "rho_bar": params.rho_bar,
            "alpha1": params.alpha1,
            "alpha2": params.alpha2,
            "alpha2_signed": params.alpha2_signed,
            "alpha": params.alpha,
            "alpha_signed": params.alpha_signed,
            "omega": params.omega,
            "grid_V": params.grid_V,
            "reconstruction": params.reconstruction,
            "endpoint_residual": params.endpoint_residual,
        },
        "condition": {
            "epsilon_rho": condition.epsilon_rho,
            "violations": condition.violations,
            "pairs": condition.pairs,
            "fraction": condition.fraction,
        },
        "probabilities": {"unsigned": unsigned, "signed": signed},
        "checks": checks,
    }

