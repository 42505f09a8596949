"""Shared fixtures for collapse-budget tests."""

import sys

import numpy as np
import pytest
from loguru import logger

from collapse_budget.cooling import CavityParams
from collapse_budget.core import CslParams, Environment, Sphere, Trap
from collapse_budget.core.scenario import ScenarioConfig
from collapse_budget.file_io import get_preset, reference_scenario


@pytest.fixture
def sphere() -> Sphere:
    return Sphere(radius=100e-9, density=2300.0)


@pytest.fixture
def env() -> Environment:
    return Environment(T_env=4.0, pressure=1e-10, T_int=65.0)


@pytest.fixture
def trap() -> Trap:
    return Trap(omega_m=2 * np.pi * 5e3)


@pytest.fixture
def csl() -> CslParams:
    return CslParams(lambda_csl=1e-8, r_c=100e-9)


@pytest.fixture
def reference() -> ScenarioConfig:
    """Reference scenario without cooling or field noise."""
    return reference_scenario()


@pytest.fixture
def fig2() -> ScenarioConfig:
    config = get_preset("fig2")
    assert isinstance(config, ScenarioConfig)
    return config


@pytest.fixture
def cavity() -> CavityParams:
    return CavityParams()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture(autouse=True)
def reset_logging():
    """The CLI replaces the loguru sinks; restore a plain stderr sink afterwards."""
    yield
    logger.remove()
    logger.add(sys.stderr, level="INFO")
