"""Non-randomness price model: variation identities, oscillation grids,
function counting, directional probability and heavy tails."""

from .counting import (
    CountDistribution,
    ZetaScale,
    distribution,
    enumerate_paths,
    exact_count,
    gaussian_approx,
    normal_cdf,
)
from .errors import DomainError, InputError, PricevarError
from .grid import (
    ConditionReport,
    GridParams,
    SegmentGrid,
    SegmentStats,
    build_grid,
    check_density_condition,
    estimate_params,
    grid_variation,
    min_shift,
    pair_increment,
)
from .heavy_tails import (
    HeavyTailSpec,
    Histogram,
    build_histogram,
    heavy_cdf,
    rfr_shift,
    sample_heavy,
    solve_constants,
    tail_ratio,
)
from .report import RunConfig, analyze
from .shifted import (
    BandPoint,
    FrameShift,
    ModelMoments,
    admissible_range,
    moments,
    p_leq_zero,
    p_leq_zero_from_moments,
    rolling_bands,
    shift_frame,
    simulate_differences,
    zeta_prime,
)
from .ticks import parse_ticks, read_ticks
from .variation import (
    JordanPair,
    PriceSeries,
    VariationProfile,
    VariationSummary,
    jordan_decompose,
    total_variation,
    variation_summary,
)

__version__ = "0.1.0"
