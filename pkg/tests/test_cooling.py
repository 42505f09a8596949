"""Tests for cavity sideband cooling and the released initial occupation."""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from collapse_budget.cooling import (
    CavityParams,
    bessel_j0,
    check_cooling_params,
    cooling_rate,
    cooling_transient,
    initial_phonons,
    optomech_coupling,
    run_cooling,
    settling_time,
    steady_state_phonons,
)
from collapse_budget.core import CONST, TWO_PI, Environment, Trap
from collapse_budget.core.scenario import ScenarioConfig


def test_bessel_j0():
    assert bessel_j0(0.0) == 1.0
    assert abs(bessel_j0(2.404825557695773)) < 1e-10
    for x in np.linspace(0.1, 30.0, 50):
        assert bessel_j0(-x) == pytest.approx(bessel_j0(x), abs=1e-14)


def test_wavelength_derives_wavenumber_and_frequency():
    cav = CavityParams(lambda_laser=532e-9)
    assert cav.k == pytest.approx(TWO_PI / 532e-9, rel=1e-14)
    assert cav.omega_l == pytest.approx(TWO_PI * CONST.c / 532e-9, rel=1e-14)
    explicit = CavityParams(lambda_laser=532e-9, k=1.0)
    assert explicit.k == 1.0


def test_cavity_unit_suffixes():
    cav = CavityParams.model_validate({"omega_c_hz": 1e5, "Delta_hz": -1e5})
    assert cav.omega_c == pytest.approx(TWO_PI * 1e5)
    assert cav.Delta == pytest.approx(-TWO_PI * 1e5)


def test_cavity_rejects_bad_values():
    with pytest.raises(ValidationError):
        CavityParams(kappa=0.0)
    with pytest.raises(ValidationError):
        CavityParams(omega_s=-1.0)


def test_resolved_fills_trap_and_thermal_occupation():
    trap = Trap(omega_m=TWO_PI * 5e3)
    env = Environment(T_env=4.0)
    cav = CavityParams().resolved(trap, env)
    assert cav.omega_s == trap.omega_m
    assert cav.N_therm == pytest.approx(CONST.k_B * 4.0 / (CONST.hbar * cav.omega_c))
    pinned = CavityParams(omega_s=1.0, N_therm=3.0)
    assert pinned.resolved(trap, env) is pinned


def test_coupling_vanishes_without_drive_or_photons(cavity, sphere, trap):
    assert optomech_coupling(cavity.model_copy(update={"X_d": 0.0}), sphere, trap) == 0.0
    assert optomech_coupling(cavity.model_copy(update={"a_c_sq": 0.0}), sphere, trap) == 0.0


def test_coupling_linear_in_photon_number(cavity, sphere, trap):
    g_sq = optomech_coupling(cavity, sphere, trap)
    doubled = optomech_coupling(
        cavity.model_copy(update={"a_c_sq": 2 * cavity.a_c_sq}), sphere, trap
    )
    assert doubled == pytest.approx(2 * g_sq, rel=1e-12)
    assert g_sq > 0


def test_cooling_rate_sign_and_symmetry(cavity):
    g_sq = 1e10
    assert cooling_rate(g_sq, cavity.model_copy(update={"Delta": 0.0})) == 0.0
    red = cooling_rate(g_sq, cavity)
    blue = cooling_rate(g_sq, cavity.model_copy(update={"Delta": -cavity.Delta}))
    assert red > 0
    assert blue == pytest.approx(-red, rel=1e-12)
    with pytest.raises(ValueError):
        cooling_rate(-1.0, cavity)


def test_cooling_rate_largest_on_the_sideband(cavity):
    rates = {
        Delta: cooling_rate(1e10, cavity.model_copy(update={"Delta": Delta}))
        for Delta in (-0.5 * cavity.omega_c, -cavity.omega_c, -2.0 * cavity.omega_c)
    }
    assert rates[-cavity.omega_c] == max(rates.values())


def test_steady_state_floor(cavity):
    quiet = cavity.model_copy(
        update={"kappa": 4.0 * cavity.omega_c, "Gamma_sc": 0.0, "Gamma_others": 0.0}
    )
    assert steady_state_phonons(quiet, 1e6) == pytest.approx(1.0, rel=1e-14)
    one = steady_state_phonons(cavity.model_copy(update={"Gamma_sc": 1e4}), 1e6)
    two = steady_state_phonons(cavity.model_copy(update={"Gamma_sc": 2e4}), 1e6)
    floor = ((cavity.kappa + cavity.kappa_sc) / (4 * cavity.omega_c)) ** 2
    assert two - floor == pytest.approx(2 * (one - floor), rel=1e-12)
    with pytest.raises(ValueError):
        steady_state_phonons(cavity, 0.0)


def test_cooling_transient():
    assert cooling_transient(100.0, 1.0, 2.0, 0.0) == 100.0
    assert cooling_transient(100.0, 1.0, 2.0, 100.0) == pytest.approx(1.0, rel=1e-12)
    assert cooling_transient(100.0, 0.0, 1.0, math.log(2)) == pytest.approx(50.0, rel=1e-12)
    values = cooling_transient(100.0, 1.0, 2.0, np.array([0.0, 1.0, 2.0]))
    assert np.all(np.diff(values) < 0)
    with pytest.raises(ValueError):
        cooling_transient(100.0, 1.0, 2.0, -1.0)


def test_settling_time():
    t = settling_time(1000.0, 1.0, 3.0, rel_tol=1e-2)
    assert abs(cooling_transient(1000.0, 1.0, 3.0, t) - 1.0) == pytest.approx(1e-2, rel=1e-9)
    assert settling_time(1.0, 1.0, 3.0) == 0.0
    with pytest.raises(ValueError):
        settling_time(10.0, 1.0, 0.0)


def test_initial_phonons_rescaling(cavity, sphere):
    still = cavity.model_copy(update={"delta_x": 0.0, "omega_s": cavity.omega_c})
    assert initial_phonons(2.0, still, sphere) == pytest.approx(2.0, rel=1e-14)
    slower = still.model_copy(update={"omega_s": cavity.omega_c / 10})
    assert initial_phonons(2.0, slower, sphere) == pytest.approx(20.0, rel=1e-12)


def test_initial_phonons_kick_independent_of_steady_state(cavity, sphere):
    cav = cavity.model_copy(update={"omega_s": cavity.omega_c})
    kick = initial_phonons(0.0, cav, sphere)
    assert kick == pytest.approx(
        sphere.mass * cav.omega_s * cav.delta_x**2 / (2 * CONST.hbar), rel=1e-14
    )
    assert initial_phonons(5.0, cav, sphere) == pytest.approx(5.0 + kick, rel=1e-12)


def test_initial_phonons_needs_release_frequency(cavity, sphere):
    with pytest.raises(ValueError):
        initial_phonons(1.0, cavity, sphere)


def test_run_cooling_defaults(cavity, sphere, trap, env):
    result = run_cooling(cavity, sphere, trap, env)
    floor = (cavity.kappa / (4 * cavity.omega_c)) ** 2
    assert result.g_sq > 0
    assert result.Gamma_minus > 0
    assert result.N_ss >= floor
    assert result.n0 >= result.N_ss * cavity.omega_c / trap.omega_m
    assert env.T_env < result.T_bulk < 100.0
    assert 1.0 < result.n0 < 100.0
    assert result.settling_time > 0


def test_run_cooling_blue_detuning_fails(cavity, sphere, trap, env):
    blue = cavity.model_copy(update={"Delta": cavity.omega_c})
    assert check_cooling_params(blue)
    with pytest.raises(ValueError):
        run_cooling(blue, sphere, trap, env)


def test_large_misalignment_warns(cavity):
    assert check_cooling_params(cavity) == []
    warnings = check_cooling_params(cavity.model_copy(update={"delta_x": 1e-9}))
    assert len(warnings) == 1
    assert "delta_x" in warnings[0]


def test_scenario_release_frequency_must_match_trap():
    with pytest.raises(ValidationError):
        ScenarioConfig(trap=Trap(omega_m=TWO_PI * 5e3), cooling=CavityParams(omega_s=1.0))


def test_scenario_frequency_change_moves_release_frequency():
    trap = Trap(omega_m=TWO_PI * 5e3)
    config = ScenarioConfig(trap=trap, cooling=CavityParams(omega_s=trap.omega_m))
    moved = config.with_axis("omega_m", TWO_PI * 7e3)
    assert moved.cooling.omega_s == moved.trap.omega_m


if __name__ == "__main__":
    pytest.main([__file__])
