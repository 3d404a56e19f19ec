import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pricevar import (
    HeavyTailSpec,
    build_histogram,
    heavy_cdf,
    normal_cdf,
    rfr_shift,
    sample_heavy,
    solve_constants,
    tail_ratio,
)
from pricevar.errors import NoSamples, NonPositiveBinWidth, OutsideMonotoneDomain, SingularSystem
from pricevar.heavy_tails import expected_tail_mass, heavy_cdf_limits, ks_statistic, transform

zeta0_st = st.floats(0.0, 0.999)


def test_solve_constants():
    assert solve_constants(0.0) == (0.0, 1 / 6)
    c1, c2 = solve_constants(1.0)
    # hand solution: C2 = 2 / 17.5, C1 = 3 - 18 C2
    assert c1 == pytest.approx(33 / 35, abs=1e-12)
    assert c2 == pytest.approx(4 / 35, abs=1e-12)
    with pytest.raises(SingularSystem):
        solve_constants(6.0)


@settings(max_examples=200)
@given(zeta0_st)
def test_constants_satisfy_system(zeta0):
    spec = HeavyTailSpec.from_zeta0(zeta0)
    r1, r2 = spec.residuals()
    assert abs(r1) < 1e-12 and abs(r2) < 1e-12


def test_rfr_shift():
    assert rfr_shift(3.0, 0.0, 1 / 6) == pytest.approx(-0.75)
    assert rfr_shift(-3.0, 0.0, 1 / 6) == pytest.approx(0.75)
    assert rfr_shift(0.0, 0.3, 1 / 6) == 0.0


def test_heavy_cdf_examples():
    assert heavy_cdf(0.4, 0.4) == normal_cdf(0.4)
    assert heavy_cdf(3.0, 0.0) == pytest.approx(0.987776, abs=5e-7)
    assert heavy_cdf(0.0, 0.7) == 0.5
    with pytest.raises(OutsideMonotoneDomain):
        heavy_cdf(6.5, 0.0)


def test_heavy_cdf_limits_at_origin():
    lo, hi = heavy_cdf_limits(0.0, 0.6)
    assert lo == pytest.approx(normal_cdf(-0.03))
    assert hi == pytest.approx(normal_cdf(0.03))
    assert lo < 0.5 < hi


@pytest.mark.parametrize("zeta0", [0.0, 0.3, 0.999])
def test_heavy_cdf_monotone_on_grid(zeta0):
    grid = np.arange(-6000, 6001) / 1000
    values = np.array([heavy_cdf(z, zeta0) for z in grid])
    assert np.all(np.diff(values) >= 0)


@settings(max_examples=300)
@given(st.floats(-6, 6), zeta0_st)
def test_heavy_cdf_odd_symmetry(zeta, zeta0):
    assert heavy_cdf(-zeta, zeta0) == pytest.approx(1 - heavy_cdf(zeta, zeta0), abs=1e-12)


@settings(max_examples=300)
@given(st.floats(-6, 6))
def test_consistent_with_general_shift_at_zero_anomaly(zeta):
    c1, c2 = solve_constants(0.0)
    assert heavy_cdf(zeta, 0.0) == pytest.approx(normal_cdf(zeta + rfr_shift(zeta, c1, c2)), abs=1e-15)


def test_tail_ratio_examples():
    assert tail_ratio(3.0, 0.0) == pytest.approx(9.06, abs=5e-3)
    assert tail_ratio(0.5, 0.5) == pytest.approx(1.0)
    assert tail_ratio(0.2, 0.5) < 1


@settings(max_examples=300)
@given(zeta0_st, st.floats(0.001, 6))
def test_tail_ratio_pattern(zeta0, zeta):
    r = tail_ratio(zeta, zeta0)
    if zeta > zeta0 + 1e-9:
        assert r > 1
    elif zeta < zeta0 - 1e-9:
        assert r < 1


def test_sampler_domain_and_determinism():
    a = sample_heavy(20000, "uniform", seed=11)
    b = sample_heavy(20000, "uniform", seed=11)
    assert a.values.tobytes() == b.values.tobytes()
    assert np.all(np.abs(a.values) <= 6)
    assert a.clamped == np.count_nonzero(np.abs(a.values) == 6)


def test_sampler_inverts_transform():
    draw = sample_heavy(5000, 0.5, seed=5)
    v = draw.values
    inner = (np.abs(v) < 6) & (v != 0)
    # g(zeta) lands on the normal quantile; re-derive u and compare with a fresh draw
    rng = np.random.default_rng(5)
    from scipy.special import ndtri
    y = ndtri(rng.random(5000))
    np.testing.assert_allclose(transform(v[inner], 0.5), y[inner], atol=1e-9)


def test_sampler_ks_fixed_zeta0():
    draw = sample_heavy(100_000, 0.5, seed=7)
    assert ks_statistic(draw.values, 0.5) < 0.006


def test_ks_statistic_detects_wrong_law():
    draw = sample_heavy(50_000, 0.5, seed=1)
    normal = np.random.default_rng(1).standard_normal(50_000)
    normal = np.clip(normal, -6, 6)
    assert ks_statistic(normal, 0.5) > ks_statistic(draw.values, 0.5)


def test_histogram_normalization():
    draw = sample_heavy(20000, "uniform", seed=4)
    h = build_histogram(draw.values, 0.25)
    assert h.total == 20000
    assert np.sum(h.empirical_density * h.widths) == pytest.approx(1.0)
    assert h.edges[0] == -6 and h.edges[-1] == pytest.approx(6)
    mid = h.midpoints
    np.testing.assert_allclose(h.normal_density, np.exp(-mid**2 / 2) / np.sqrt(2 * np.pi))


def test_histogram_single_sample():
    h = build_histogram([0.3], 0.5)
    assert np.count_nonzero(h.counts) == 1


def test_histogram_tails_above_normal():
    draw = sample_heavy(100_000, "uniform", seed=8)
    h = build_histogram(draw.values, 0.25)
    tail = np.abs(h.midpoints) > 3
    emp = np.sum(h.empirical_density[tail] * h.widths[tail])
    nrm = np.sum(h.normal_density[tail] * h.widths[tail])
    assert emp > nrm


def test_histogram_errors():
    with pytest.raises(NoSamples):
        build_histogram([], 0.25)
    with pytest.raises(NonPositiveBinWidth):
        build_histogram([0.1], 0.0)


def test_histogram_csv_layout():
    h = build_histogram([-0.1, 0.1, 0.2], 3.0)
    lines = h.to_csv().splitlines()
    assert lines[0] == "bin_left,bin_right,count,empirical_density,normal_density"
    assert lines[2].split(",")[:3] == ["-3", "0", "1"]
    assert len(lines) == 5


def test_expected_tail_mass_uniform_between_fixed_ends():
    lo, hi = expected_tail_mass(1.0 - 1e-12), expected_tail_mass(0.0)
    assert lo < expected_tail_mass("uniform") < hi
