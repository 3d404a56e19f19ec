import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pricevar import (
    PriceSeries,
    SegmentGrid,
    SegmentStats,
    build_grid,
    check_density_condition,
    estimate_params,
    grid_variation,
    min_shift,
    pair_increment,
    total_variation,
)
from pricevar.errors import DegenerateGrid, EpsilonOutOfRange, SingleSegment
from pricevar.grid import pair_increment_halfsum, signed_shift_sum


def box(M, m, i=0):
    return SegmentStats(i, float(M), float(m))


def test_build_grid_staircase(staircase):
    grid = build_grid(staircase, 3)
    assert [(s.M, s.m) for s in grid.segments] == [(10, 8), (13, 11), (16, 14)]
    np.testing.assert_array_equal(grid.omegas, [2, 2, 2])
    assert [s.index for s in grid.segments] == [0, 1, 2]


def test_build_grid_single_segment(staircase):
    grid = build_grid(staircase, 1)
    assert len(grid) == 1
    assert (grid.segments[0].M, grid.segments[0].m) == (16, 8)


def test_empty_segment_carries_previous_close():
    # ticks only at the two ends of a 4-cell span
    series = PriceSeries([0, 1, 2, 97, 98, 100], [5.0, 7.0, 6.0, 9.0, 8.0, 10.0])
    grid = build_grid(series, 4)
    mid1, mid2 = grid.segments[1], grid.segments[2]
    assert mid1.ticks == mid2.ticks == 0
    assert (mid1.M, mid1.m, mid1.omega) == (6.0, 6.0, 0.0)
    assert (mid2.M, mid2.m) == (6.0, 6.0)
    assert (grid.segments[3].M, grid.segments[3].m) == (10.0, 8.0)


def test_cells_are_half_open_last_closed():
    series = PriceSeries([0, 50, 100], [1.0, 2.0, 3.0])
    grid = build_grid(series, 2)
    assert [s.ticks for s in grid.segments] == [1, 2]


@pytest.mark.parametrize("prev,nxt,inc,shift", [
    ((10, 8), (13, 11), 5, 1),
    ((10, 8), (10, 8), 2, 2),
    ((10, 8), (7, 5), 5, 1),
])
def test_pair_increment_and_min_shift(prev, nxt, inc, shift):
    a, b = box(*prev), box(*nxt)
    assert pair_increment(a, b) == inc
    assert pair_increment_halfsum(a, b) == inc
    assert min_shift(a, b) == shift


box_st = st.tuples(st.floats(-1e3, 1e3), st.floats(0, 1e3)).map(lambda t: box(t[0] + t[1], t[0]))


@settings(max_examples=500, deadline=None)
@given(box_st, box_st)
def test_pair_increment_forms_agree_and_are_bounded(a, b):
    inc = pair_increment(a, b)
    assert abs(inc - pair_increment_halfsum(a, b)) <= 1e-12 * max(1.0, abs(inc)) * 1e3
    assert inc <= a.omega + b.omega + min_shift(a, b) + 1e-9


def test_grid_variation_examples():
    assert grid_variation(SegmentGrid.from_boxes([(10, 8), (13, 11), (16, 14)])) == 10
    assert grid_variation(SegmentGrid.from_boxes([(10, 8)] * 3)) == 12
    with pytest.raises(SingleSegment):
        grid_variation(SegmentGrid.from_boxes([(10, 8)]))


def test_estimate_params_staircase(staircase):
    p = estimate_params(build_grid(staircase, 3))
    assert (p.n, p.lam, p.rho_bar, p.alpha1, p.alpha2) == (2, 2, 1, 0, 0.25)
    assert p.grid_V == 10 == p.reconstruction
    assert p.omega == 2
    # upward staircase: every midpoint rises, so signed anisotropy is negative
    assert p.alpha2_signed == -0.25


def test_estimate_params_alpha1():
    p = estimate_params(SegmentGrid.from_boxes([(1, 0), (0.75, 0), (0.5, 0)]))
    assert p.rho == (1.0, 0.75, 0.5)
    assert p.alpha1 == pytest.approx(0.5 / 3.0, abs=1e-15)


def test_estimate_params_degenerate():
    with pytest.raises(DegenerateGrid):
        estimate_params(build_grid(PriceSeries.from_prices([3.0] * 10), 3))
    with pytest.raises(SingleSegment):
        estimate_params(SegmentGrid.from_boxes([(2, 1)]))


grid_st = st.lists(box_st, min_size=2, max_size=40).filter(lambda bs: max(b.omega for b in bs) > 0)


@settings(max_examples=300, deadline=None)
@given(grid_st)
def test_estimate_params_properties(boxes):
    grid = SegmentGrid.from_boxes([(b.M, b.m) for b in boxes])
    p = estimate_params(grid)
    assert p.alpha2 >= 0
    assert abs(p.alpha2_signed) <= p.alpha2 + 1e-12
    assert all(0.0 <= r <= 1.0 for r in p.rho)
    # reconstruction plus the endpoint residual gives back the grid variation
    scale = max(1.0, p.grid_V)
    assert abs(p.reconstruction + p.endpoint_residual - p.grid_V) <= 1e-9 * scale


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(-100, 100), min_size=2, max_size=20), st.floats(0.01, 50))
def test_uniform_density_reconstruction_exact(lows, width):
    grid = SegmentGrid.from_boxes([(lo + width, lo) for lo in lows])
    p = estimate_params(grid)
    assert p.reconstruction == pytest.approx(p.grid_V, rel=1e-12)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(0, 1e4), min_size=4, max_size=300), st.integers(2, 20))
def test_grid_variation_dominates_coarse_variation(prices, segments):
    series = PriceSeries.from_prices(prices)
    grid = build_grid(series, min(segments, len(prices)))
    if len(grid) < 2:
        return
    closes = PriceSeries.from_prices([s.close for s in grid.segments])
    assert grid_variation(grid) >= total_variation(closes).total - 1e-9


def test_signed_shift_sign_follows_direction():
    down = SegmentGrid.from_boxes([(16, 14), (13, 11), (10, 8)])
    up = SegmentGrid.from_boxes([(10, 8), (13, 11), (16, 14)])
    assert signed_shift_sum(down) == 2 == -signed_shift_sum(up)


@pytest.mark.parametrize("rho,eps,violations", [
    ([1, 1, 1], 0.5, 0),
    ([1, 0.2, 1], 0.5, 2),
])
def test_density_condition(rho, eps, violations):
    grid = SegmentGrid.from_boxes([(r, 0.0) for r in rho])
    rep = check_density_condition(grid, eps)
    assert rep.violations == violations
    assert rep.fraction == violations / 2


def test_density_condition_epsilon_range():
    grid = SegmentGrid.from_boxes([(1, 0), (1, 0)])
    for eps in (1.2, 0.0, 1.0):
        with pytest.raises(EpsilonOutOfRange):
            check_density_condition(grid, eps)
