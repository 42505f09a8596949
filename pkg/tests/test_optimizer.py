"""Tests for the minimal-testable-lambda search."""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from collapse_budget.core import MBAR_TO_PA, TWO_PI, Environment, SweepAxis
from collapse_budget.core.scenario import ScenarioConfig
from collapse_budget.optimizer import (
    TESTABLE_COLUMNS,
    RADIUS_WINDOW,
    OptimizeSpec,
    RatioProbe,
    bisect_lambda,
    min_lambda_at_geometry,
    min_testable_lambda,
    ratio_statistic,
    testable_range_curve,
    testable_table,
)


def _spec(reference, pressure_mbar: float, T_int: float, **kwargs) -> OptimizeSpec:
    return OptimizeSpec(
        pressure=pressure_mbar * MBAR_TO_PA, T_int=T_int, base_config=reference, **kwargs
    )


# --- ratio statistic --------------------------------------------------------


def test_ratio_statistic_without_collapse(reference):
    assert ratio_statistic(reference, 0.0) == 1.0


def test_ratio_statistic_reference(reference):
    assert 2.0 < ratio_statistic(reference, 1e-8) < 21.0


def test_ratio_statistic_increasing_random(reference, rng):
    for _ in range(200):
        config = reference.with_axis(SweepAxis.RADIUS, 10 ** rng.uniform(-8.5, -6))
        config = config.with_axis(SweepAxis.OMEGA_M, 10 ** rng.uniform(3, 6))
        config = config.with_axis(SweepAxis.PRESSURE, 10 ** rng.uniform(-12, -6))
        lo, hi = sorted(10 ** rng.uniform(-14, -6, size=2))
        assert ratio_statistic(config, lo) < ratio_statistic(config, hi)


def test_ratio_probe_matches_statistic(reference):
    config = reference.replace(t_evolve=100.0)
    probe = RatioProbe(config)
    for lam in (0.0, 1e-12, 1e-10, 1e-8):
        assert probe(lam) == pytest.approx(ratio_statistic(config, lam), rel=1e-12)


def test_ratio_statistic_without_any_heating():
    config = ScenarioConfig(environment=Environment(T_env=0.0, pressure=0.0, T_int=0.0), n0=0.0)
    assert ratio_statistic(config, 0.0) == 1.0
    assert ratio_statistic(config, 1e-10) == math.inf
    probe = RatioProbe(config)
    assert probe(0.0) == 1.0
    assert probe(1e-10) == math.inf
    spec = OptimizeSpec(pressure=0.0, T_int=0.0, n0=0.0)
    result = min_lambda_at_geometry(config, spec)
    assert result.converged
    assert result.lambda_min == spec.lambda_bracket[0]


# --- bisection --------------------------------------------------------------


def test_bisection_synthetic_crossing():
    crossing = 5.0
    result = bisect_lambda(lambda lam: 1.0 + 0.2 * lam / crossing, 1.2, (1e-3, 1e1))
    assert result.converged
    assert result.lambda_min == pytest.approx(crossing, rel=1e-3)
    assert result.lambda_min >= crossing * (1 - 1e-12)
    assert result.achieved_ratio >= 1.2


def test_bisection_not_reached():
    result = bisect_lambda(lambda lam: 1.0 + lam, 1.2, (1e-6, 1e-2))
    assert not result.converged
    assert result.lambda_min == 1e-2
    assert result.achieved_ratio == pytest.approx(1.01)


def test_bisection_already_above_threshold():
    result = bisect_lambda(lambda lam: 2.0 + lam, 1.2, (1e-6, 1e-2))
    assert result.converged
    assert result.lambda_min == 1e-6


def test_bisection_rejects_decreasing_ratio():
    with pytest.raises(ValueError):
        bisect_lambda(lambda lam: 2.0 - lam, 1.2, (1e-3, 1.0))


def test_min_lambda_non_increasing_with_lower_pressure(reference):
    """At fixed geometry a cleaner vacuum never raises the bound."""
    spec = _spec(reference, 1e-11, 60.0)
    config = spec.scenario()
    previous = math.inf
    for pressure in np.geomspace(1e-6, 1e-12, 7):
        result = min_lambda_at_geometry(config.with_axis(SweepAxis.PRESSURE, pressure), spec)
        assert result.converged
        assert result.lambda_min <= previous * (1 + 1e-12)
        previous = result.lambda_min


def test_min_lambda_pressure_order_random_geometries(reference, rng):
    spec = _spec(reference, 1e-11, 60.0)
    base = spec.scenario()
    for _ in range(200):
        config = base.with_axis(SweepAxis.RADIUS, 10 ** rng.uniform(-8.5, -6.3))
        config = config.with_axis(SweepAxis.OMEGA_M, 10 ** rng.uniform(2.8, 6.8))
        config = config.with_axis(SweepAxis.T_INT, rng.uniform(10.0, 300.0))
        low, high = sorted(10 ** rng.uniform(-12.0, -4.0, size=2))
        clean = min_lambda_at_geometry(config.with_axis(SweepAxis.PRESSURE, low), spec)
        dirty = min_lambda_at_geometry(config.with_axis(SweepAxis.PRESSURE, high), spec)
        assert clean.lambda_min <= dirty.lambda_min * (1 + 1e-9)
        if dirty.converged:
            assert clean.converged


# --- spec -------------------------------------------------------------------


def test_optimize_spec_scenario(reference):
    spec = _spec(reference, 1e-11, 60.0, horizon=50.0, n0=10.0)
    config = spec.scenario()
    assert config.environment.pressure == pytest.approx(1e-9)
    assert config.environment.T_int == 60.0
    assert config.t_evolve == 50.0
    assert config.n0 == 10.0


def test_optimize_spec_validation(reference):
    with pytest.raises(ValidationError):
        _spec(reference, 1e-11, 60.0, ratio_threshold=1.0)
    with pytest.raises(ValidationError):
        _spec(reference, 1e-11, 60.0, R_bounds=(1e-6, 1e-8))
    spec = OptimizeSpec.model_validate({"pressure_mbar": 1e-11, "T_int_K": 60.0})
    assert spec.pressure == pytest.approx(1e-9)
    assert spec.R_bounds == RADIUS_WINDOW == (1e-8, 1e-7)


# --- geometry search --------------------------------------------------------


@pytest.mark.slow
def test_min_testable_lambda_warm_anchor(reference):
    bound = min_testable_lambda(_spec(reference, 1e-11, 60.0))
    assert bound.converged
    assert 1e-11 < bound.lambda_min < 1e-9
    assert RADIUS_WINDOW[0] <= bound.best_R <= RADIUS_WINDOW[1]
    assert TWO_PI * 100.0 <= bound.best_omega <= TWO_PI * 1e6


@pytest.mark.slow
def test_min_testable_lambda_cold_anchor(reference):
    bound = min_testable_lambda(_spec(reference, 1e-13, 20.0))
    assert bound.converged
    assert 1e-13 < bound.lambda_min < 1e-11


@pytest.mark.slow
def test_bound_reaches_threshold(reference):
    spec = _spec(reference, 1e-11, 60.0)
    bound = min_testable_lambda(spec)
    config = spec.scenario().with_axis(SweepAxis.RADIUS, bound.best_R)
    config = config.with_axis(SweepAxis.OMEGA_M, bound.best_omega)
    assert ratio_statistic(config, bound.lambda_min) >= spec.ratio_threshold - 1e-9


@pytest.mark.slow
def test_refinement_beats_grid(reference):
    spec = _spec(reference, 1e-11, 60.0, grid_points=6)
    bound = min_testable_lambda(spec)
    base = spec.scenario()
    grid_best = math.inf
    for R in np.geomspace(*spec.R_bounds, spec.grid_points):
        for omega in np.geomspace(*spec.omega_bounds, spec.grid_points):
            config = base.with_axis(SweepAxis.RADIUS, float(R))
            config = config.with_axis(SweepAxis.OMEGA_M, float(omega))
            result = min_lambda_at_geometry(config, spec)
            if result.converged:
                grid_best = min(grid_best, result.lambda_min)
    assert bound.lambda_min <= grid_best


@pytest.mark.slow
def test_stricter_threshold_never_lowers_bound(reference):
    loose = min_testable_lambda(_spec(reference, 1e-11, 60.0))
    strict = min_testable_lambda(_spec(reference, 1e-11, 60.0, ratio_threshold=1.5))
    assert strict.lambda_min >= loose.lambda_min


def test_unreachable_threshold_reports_not_converged(reference):
    spec = _spec(reference, 1e-6, 300.0, lambda_bracket=(1e-20, 1e-18), grid_points=3)
    bound = min_testable_lambda(spec)
    assert not bound.converged
    assert bound.lambda_min == 1e-18


@pytest.mark.slow
def test_testable_range_curve(reference):
    template = _spec(reference, 1e-11, 20.0, grid_points=8)
    pressures = [p * MBAR_TO_PA for p in (1e-13, 1e-11, 1e-9)]
    bounds = testable_range_curve(pressures, [20.0, 80.0], template, max_workers=2)
    assert [(b.T_int, b.pressure) for b in bounds] == [
        (T, P) for T in (20.0, 80.0) for P in pressures
    ]
    cold, warm = bounds[:3], bounds[3:]
    for curve in (cold, warm):
        values = [b.lambda_min for b in curve]
        assert all(b >= a * (1 - 5e-3) for a, b in zip(values, values[1:]))
    for c, w in zip(cold, warm):
        assert c.lambda_min <= w.lambda_min * (1 + 5e-3)

    table = testable_table(bounds)
    assert table.columns == TESTABLE_COLUMNS
    assert len(table) == 6


def test_testable_range_curve_needs_values(reference):
    with pytest.raises(ValueError):
        testable_range_curve([], [20.0], _spec(reference, 1e-11, 20.0))


def test_testable_range_curve_processes_match_threads(reference):
    template = _spec(reference, 1e-11, 20.0, grid_points=3)
    pressures = [1e-11 * MBAR_TO_PA, 1e-9 * MBAR_TO_PA]
    on_processes = testable_range_curve(pressures, [40.0], template, max_workers=2)
    on_threads = testable_range_curve(
        pressures, [40.0], template, max_workers=2, processes=False
    )
    assert on_processes == on_threads
    assert [b.pressure for b in on_processes] == pressures


if __name__ == "__main__":
    pytest.main([__file__])
