"""Tests for parameter sweeps, immunity detection and hypothesis discrimination."""

import math

import numpy as np
import pytest
from pydantic import ValidationError
from scipy import stats

from collapse_budget.analysis import (
    SWEEP_COLUMNS,
    SweepSpec,
    evaluate_point,
    heating_comparison,
    immunity_interval,
    immunity_region,
    interval_decades,
    likelihood_ratio_test,
    log_likelihood_ratio,
    longest_run,
    run_sweep,
    sweep_table,
    trajectories_table,
)
from collapse_budget.core import MBAR_TO_PA, GridScale, SweepAxis
from collapse_budget.dynamics import sample_final_phonons
from collapse_budget.file_io import get_preset

# --- sweeps -----------------------------------------------------------------


def test_sweep_grid_is_geometric(reference):
    spec = SweepSpec(axis=SweepAxis.PRESSURE, lo=1e-12, hi=1e-4, points=9, base_config=reference)
    grid = spec.grid()
    assert grid[0] == pytest.approx(1e-12)
    assert grid[-1] == pytest.approx(1e-4)
    np.testing.assert_allclose(grid[1:] / grid[:-1], 10.0, rtol=1e-12)


def test_sweep_spec_validation(reference):
    with pytest.raises(ValidationError):
        SweepSpec(axis="pressure", lo=1.0, hi=1.0, points=5, base_config=reference)
    with pytest.raises(ValidationError):
        SweepSpec(axis="pressure", lo=0.0, hi=1.0, points=5, base_config=reference)
    with pytest.raises(ValidationError):
        SweepSpec(axis="pressure", lo=1.0, hi=2.0, points=1, base_config=reference)
    linear = SweepSpec(
        axis="T_int", lo=0.0, hi=10.0, points=11, scale=GridScale.LINEAR, base_config=reference
    )
    np.testing.assert_allclose(linear.grid(), np.arange(11.0))


def test_sweep_without_collapse_has_unit_ratio(reference):
    base = reference.with_axis(SweepAxis.LAMBDA_CSL, 0.0)
    spec = SweepSpec(axis="pressure", lo=1e-12, hi=1e-6, points=7, base_config=base)
    for row in run_sweep(spec, max_workers=1):
        assert row.ok
        assert row.ratio == 1.0


def test_sweep_rows_dominate_and_keep_order(reference):
    spec = SweepSpec(axis="T_int", lo=1.0, hi=300.0, points=15, base_config=reference)
    rows = run_sweep(spec, max_workers=4)
    np.testing.assert_allclose([row.axis_value for row in rows], spec.grid())
    for row in rows:
        assert row.n_csl >= row.n_cqm
        assert row.ratio >= 1.0


# log10 ranges for random points along each axis
_AXIS_DECADES = {
    SweepAxis.PRESSURE: (-12.0, -4.0),
    SweepAxis.T_INT: (0.0, 2.5),
    SweepAxis.OMEGA_M: (3.0, 6.5),
    SweepAxis.RADIUS: (-9.0, -5.0),
    SweepAxis.LAMBDA_CSL: (-16.0, -6.0),
    SweepAxis.T_EVOLVE: (-2.0, 3.0),
}


def test_collapse_never_lowers_phonons_random(reference, rng):
    axes = list(_AXIS_DECADES)
    for _ in range(200):
        config = reference
        for axis in axes:
            config = config.with_axis(axis, 10 ** rng.uniform(*_AXIS_DECADES[axis]))
        axis = axes[rng.integers(len(axes))]
        row = evaluate_point(config, axis, 10 ** rng.uniform(*_AXIS_DECADES[axis]))
        assert row.ok, row.error
        assert row.n_csl >= row.n_cqm
        assert row.ratio >= 1.0


def test_sweep_is_worker_count_independent(reference):
    spec = SweepSpec(axis="omega_m", lo=1e3, hi=1e6, points=12, base_config=reference)
    serial = sweep_table(run_sweep(spec, max_workers=1), spec.axis)
    threaded = sweep_table(run_sweep(spec, max_workers=4), spec.axis)
    assert serial.equals(threaded)


def test_sweep_table_columns(reference):
    spec = SweepSpec(axis="radius", lo=1e-8, hi=1e-6, points=5, base_config=reference)
    table = sweep_table(run_sweep(spec, max_workers=1), spec.axis)
    assert table.columns == SWEEP_COLUMNS
    assert table["axis"].to_list() == ["radius"] * 5


def test_failed_point_is_reported_not_raised(reference):
    row = evaluate_point(reference, SweepAxis.RADIUS, -1.0)
    assert not row.ok
    assert math.isnan(row.n_csl)
    table = sweep_table([row], SweepAxis.RADIUS)
    assert table["n_csl"].to_list() == [None]
    assert table["axis_value"].to_list() == [-1.0]


def test_csl_less_sensitive_to_pressure(reference):
    """Collapse heating dilutes the gas contribution at low pressure."""
    lo = evaluate_point(reference, SweepAxis.PRESSURE, 1e-13 * MBAR_TO_PA)
    hi = evaluate_point(reference, SweepAxis.PRESSURE, 1e-12 * MBAR_TO_PA)
    change_csl = (hi.n_csl - lo.n_csl) / lo.n_csl
    change_cqm = (hi.n_cqm - lo.n_cqm) / lo.n_cqm
    assert 0 < change_csl < change_cqm


def test_radius_sweep_has_interior_maximum():
    spec = get_preset("fig3d")
    rows = run_sweep(spec, max_workers=1)
    ratios = np.array([row.ratio for row in rows])
    best = int(np.argmax(ratios))
    assert 0 < best < len(rows) - 1
    assert 1e-8 < rows[best].axis_value < 1e-6


def test_heating_comparison(reference):
    t = np.linspace(0.0, 1.0, 11)
    trajectories = heating_comparison(reference, [0.0, 1e-8], t)
    assert [tr.label for tr in trajectories] == ["lambda_0", "lambda_1e-08"]
    assert trajectories[0].mean_n[0] == trajectories[1].mean_n[0] == reference.n0
    assert np.all(trajectories[1].mean_n[1:] > trajectories[0].mean_n[1:])
    table = trajectories_table(trajectories)
    assert table.columns == ["t_s", "lambda_0_mean_n", "lambda_1e-08_mean_n"]


def test_heating_comparison_initial_slope(reference):
    """Initial slope without collapse equals the total diffusion minus damping."""
    t = [0.0, 1e-6]
    (trajectory,) = heating_comparison(reference, [0.0], t)
    slope = (trajectory.mean_n[1] - trajectory.mean_n[0]) / t[1]
    budget = reference.budget(lambda_csl=0.0)
    assert slope == pytest.approx(budget.D_diff_total - budget.Gamma_total * reference.n0, rel=1e-4)


# --- immunity ---------------------------------------------------------------


def test_longest_run():
    assert longest_run(np.array([False, False])) is None
    assert longest_run(np.array([True, True, False, True])) == (0, 1)
    assert longest_run(np.array([True, False, True, True, True])) == (2, 4)
    assert longest_run(np.array([True, False, True])) == (0, 0)


def test_immunity_constant_is_everywhere():
    x = np.geomspace(1.0, 1e4, 9)
    assert immunity_interval(x, np.full(9, 5.0)) == (1.0, pytest.approx(1e4))


def test_immunity_linear_is_nowhere():
    x = np.geomspace(1.0, 1e4, 9)
    assert immunity_interval(x, 3.0 * x) is None


def test_immunity_input_validation():
    with pytest.raises(ValueError):
        immunity_interval([1.0, 2.0], [1.0, 1.0])
    with pytest.raises(ValueError):
        immunity_interval([3.0, 2.0, 1.0], [1.0, 1.0, 1.0])
    with pytest.raises(ValueError):
        immunity_interval([1.0, 2.0, 3.0], [1.0, 0.0, 1.0])


def test_immunity_from_pressure_sweep():
    """Collapse heating widens the pressure range where n is insensitive."""
    spec = get_preset("fig3a")
    rows = run_sweep(spec, max_workers=1)
    region = immunity_region(rows, 0.1)
    assert region is not None
    assert region[0] == pytest.approx(spec.lo)

    base = spec.base_config.with_axis(SweepAxis.LAMBDA_CSL, 0.0)
    rows_cqm = run_sweep(spec.model_copy(update={"base_config": base}), max_workers=1)
    region_cqm = immunity_region(rows_cqm, 0.1)
    assert region_cqm is not None
    assert interval_decades(region_cqm) < interval_decades(region)
    assert region_cqm[1] < region[1]


def test_immunity_rejects_failed_rows(reference):
    rows = [
        evaluate_point(reference, SweepAxis.RADIUS, value) for value in (1e-7, -1.0, 2e-7)
    ]
    with pytest.raises(ValueError):
        immunity_region(rows)


def test_interval_decades():
    assert interval_decades(None) == 0.0
    assert interval_decades((1e-3, 1e2)) == pytest.approx(5.0)


# --- discrimination ---------------------------------------------------------


def test_identical_hypotheses():
    samples = sample_final_phonons(40.0, 50, seed=2)
    report = likelihood_ratio_test(samples, 40.0, 40.0, mc_trials=200, seed=0, max_workers=1)
    assert report.log_likelihood_ratio == 0.0
    assert 1 / 201 <= report.p_value <= 1.0
    again = likelihood_ratio_test(samples, 40.0, 40.0, mc_trials=200, seed=0, max_workers=4)
    assert again == report


def test_identical_hypotheses_p_value_is_uniform():
    samples = sample_final_phonons(40.0, 20, seed=2)
    reports = [
        likelihood_ratio_test(samples, 40.0, 40.0, mc_trials=99, seed=seed, max_workers=1)
        for seed in range(200)
    ]
    p_values = np.array([report.p_value for report in reports])
    assert 0.4 < p_values.mean() < 0.6
    assert p_values.min() < 0.1
    assert p_values.max() > 0.9
    assert stats.kstest(p_values, "uniform").pvalue > 1e-3


def test_log_likelihood_ratio_sign():
    samples = sample_final_phonons(100.0, 500, seed=5)
    assert log_likelihood_ratio(samples, 50.0, 100.0) > 0
    assert log_likelihood_ratio(samples, 100.0, 50.0) < 0


def test_discrimination_input_validation():
    with pytest.raises(ValueError):
        likelihood_ratio_test(np.array([], dtype=np.int64), 1.0, 2.0)
    with pytest.raises(ValueError):
        likelihood_ratio_test(np.array([0, 3]), 0.0, 0.0)
    with pytest.raises(ValueError):
        likelihood_ratio_test(np.array([1.5, 2.0]), 1.0, 2.0)
    with pytest.raises(ValueError):
        likelihood_ratio_test(np.array([1, 2]), 1.0, 2.0, mc_trials=0)


def test_discrimination_is_deterministic():
    samples = sample_final_phonons(60.0, 30, seed=7)
    first = likelihood_ratio_test(samples, 50.0, 60.0, mc_trials=300, seed=9, max_workers=1)
    second = likelihood_ratio_test(samples, 50.0, 60.0, mc_trials=300, seed=9, max_workers=4)
    assert first == second


def test_discrimination_p_value_bounds():
    samples = sample_final_phonons(50.0, 20, seed=1)
    report = likelihood_ratio_test(samples, 50.0, 55.0, mc_trials=99, seed=3, max_workers=1)
    assert 1 / 100 <= report.p_value <= 1.0
    assert report.sample_count == 20
    assert report.mc_trials == 99


@pytest.mark.slow
def test_discrimination_power():
    """A doubled mean is detected in nearly every experiment of 100 samples."""
    detections = 0
    for rep in range(200):
        samples = sample_final_phonons(100.0, 100, seed=1000 + rep)
        report = likelihood_ratio_test(samples, 50.0, 100.0, mc_trials=200, seed=rep, max_workers=1)
        detections += report.p_value < 0.05
    assert detections >= 190


if __name__ == "__main__":
    pytest.main([__file__])
