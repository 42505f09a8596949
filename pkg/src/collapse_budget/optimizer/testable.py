"""
Minimal testable collapse rate.

For a given pressure and internal temperature, search the sphere radius and
trap frequency for the geometry at which the smallest lambda_csl produces a
detectable excess, n_csl(horizon)/n_cqm(horizon) >= ratio_threshold.
Bisection on lambda runs inside, the geometry search outside.
"""

import math
from typing import Callable, ClassVar

import numpy as np
import polars as pl
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy.optimize import minimize

from ..analysis.sweeps import phonon_ratio
from ..core.constants import MBAR_TO_PA
from ..core.enums import SweepAxis
from ..core.models import TWO_PI, CslParams, PhysicalModel
from ..core.rates import csl_diffusion
from ..core.scenario import ScenarioConfig, replace_fields
from ..dynamics.evolution import EvolutionParams, phonon_closed_form
from ..utils.utils import parallel_map

LAMBDA_REL_WIDTH = 1e-3
SIMPLEX_TOL = 1e-3

# Radii with an appreciable collapse rate whose gas and blackbody
# decoherence do not yet swamp it
RADIUS_WINDOW = (1e-8, 1e-7)

TESTABLE_COLUMNS = [
    "pressure_Pa",
    "T_int_K",
    "lambda_min_Hz",
    "best_R_m",
    "best_omega_rad_s",
    "achieved_ratio",
    "converged",
]


class OptimizeSpec(PhysicalModel):
    pressure: float = Field(alias="pressure_pa", ge=0)
    T_int: float = Field(alias="T_int_K", ge=0)
    ratio_threshold: float = Field(1.2, gt=1)
    horizon: float = Field(100.0, alias="horizon_s", gt=0)
    n0: float = Field(50.0, ge=0)
    R_bounds: tuple[float, float] = Field(RADIUS_WINDOW, alias="R_bounds_m")
    omega_bounds: tuple[float, float] = Field(
        (TWO_PI * 100.0, TWO_PI * 1e6), alias="omega_bounds_rad_s"
    )
    lambda_bracket: tuple[float, float] = Field((1e-16, 1e-4), alias="lambda_bracket_hz")
    grid_points: int = Field(16, ge=2)
    base_config: ScenarioConfig = ScenarioConfig()

    unit_suffixes: ClassVar[dict[str, tuple[str, float]]] = {
        "pressure_mbar": ("pressure_pa", MBAR_TO_PA),
    }

    @model_validator(mode="after")
    def validate_bounds(self) -> "OptimizeSpec":
        for name in ("R_bounds", "omega_bounds", "lambda_bracket"):
            lo, hi = getattr(self, name)
            assert 0 < lo < hi, f"{name} must satisfy 0 < lo < hi, got ({lo}, {hi})"
        return self

    def scenario(self) -> ScenarioConfig:
        """Base scenario at this cell's pressure, T_int, n0 and horizon."""
        config = self.base_config.with_axis(SweepAxis.PRESSURE, self.pressure)
        config = config.with_axis(SweepAxis.T_INT, self.T_int)
        config = config.with_axis(SweepAxis.T_EVOLVE, self.horizon)
        return config.replace(n0=self.n0)


class TestableBound(BaseModel):
    model_config = ConfigDict(frozen=True)
    __test__ = False

    pressure: float
    T_int: float
    lambda_min: float
    best_R: float
    best_omega: float
    achieved_ratio: float
    converged: bool


class BisectionResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    lambda_min: float
    achieved_ratio: float
    converged: bool


def ratio_statistic(config: ScenarioConfig, lambda_csl: float) -> float:
    """
    n(horizon) with lambda_csl over n(horizon) with lambda_csl = 0. A scenario
    with no heating at all gives 1 at lambda_csl = 0 and inf above it.
    """
    n = []
    for lam in (lambda_csl, 0.0):
        params = EvolutionParams.from_budget(config.budget(lambda_csl=lam), config.trap)
        n.append(float(phonon_closed_form(config.n0, params, config.t_evolve)))
    return phonon_ratio(n[0], n[1])


class RatioProbe:
    """
    ratio_statistic for one geometry as a cheap function of lambda.

    Only D_csl depends on lambda and it is linear in it, so the lambda = 0
    budget and D_csl per unit lambda are computed once.
    """

    def __init__(self, config: ScenarioConfig):
        budget = config.budget(lambda_csl=0.0)
        self.params = EvolutionParams.from_budget(budget, config.trap)
        self.csl_per_lambda = csl_diffusion(
            config.sphere, config.trap, CslParams(lambda_csl=1.0, r_c=config.csl.r_c)
        )
        self.n0 = config.n0
        self.t = config.t_evolve
        self.n_cqm = float(phonon_closed_form(self.n0, self.params, self.t))

    def __call__(self, lambda_csl: float) -> float:
        params = self.params.model_copy(
            update={"D_diff": self.params.D_diff + lambda_csl * self.csl_per_lambda}
        )
        n_csl = float(phonon_closed_form(self.n0, params, self.t))
        return phonon_ratio(n_csl, self.n_cqm)


def bisect_lambda(
    ratio: Callable[[float], float],
    threshold: float,
    bracket: tuple[float, float],
    rel_width: float = LAMBDA_REL_WIDTH,
) -> BisectionResult:
    """
    Smallest lambda in the bracket with ratio(lambda) >= threshold, bisected in
    log space down to a relative bracket width `rel_width`.

    Raises:
        ValueError: if the three-point probe shows ratio decreasing in lambda.
    """
    lo, hi = bracket
    r_lo, r_hi = ratio(lo), ratio(hi)
    r_mid = ratio(math.sqrt(lo * hi))
    if not r_lo <= r_mid <= r_hi:
        raise ValueError(
            f"ratio is not monotone in lambda over {bracket}: {r_lo}, {r_mid}, {r_hi}"
        )
    if r_hi < threshold:
        return BisectionResult(lambda_min=hi, achieved_ratio=r_hi, converged=False)
    if r_lo >= threshold:
        return BisectionResult(lambda_min=lo, achieved_ratio=r_lo, converged=True)
    while hi / lo > 1.0 + rel_width:
        mid = math.sqrt(lo * hi)
        r_mid = ratio(mid)
        if r_mid >= threshold:
            hi, r_hi = mid, r_mid
        else:
            lo = mid
    return BisectionResult(lambda_min=hi, achieved_ratio=r_hi, converged=True)


def min_lambda_at_geometry(config: ScenarioConfig, spec: OptimizeSpec) -> BisectionResult:
    """Bisect on lambda at the geometry of `config`."""
    return bisect_lambda(RatioProbe(config), spec.ratio_threshold, spec.lambda_bracket)


class _GeometryObjective:
    """log(lambda_min) over (ln R, ln omega), penalised where no lambda is detectable."""

    def __init__(self, spec: OptimizeSpec):
        self.spec = spec
        self.base = spec.scenario()
        self.cache: dict[tuple[float, float], BisectionResult] = {}

    def solve(self, R: float, omega: float) -> BisectionResult:
        key = (R, omega)
        if key not in self.cache:
            config = self.base.with_axis(SweepAxis.RADIUS, R)
            config = config.with_axis(SweepAxis.OMEGA_M, omega)
            self.cache[key] = min_lambda_at_geometry(config, self.spec)
        return self.cache[key]

    def score(self, result: BisectionResult) -> float:
        value = math.log(result.lambda_min)
        if not result.converged:
            shortfall = (self.spec.ratio_threshold - result.achieved_ratio) / (
                self.spec.ratio_threshold - 1.0
            )
            value += 1.0 + max(shortfall, 0.0)
        return value

    def __call__(self, u: np.ndarray) -> float:
        R, omega = self._clip(math.exp(u[0]), math.exp(u[1]))
        return self.score(self.solve(R, omega))

    def _clip(self, R: float, omega: float) -> tuple[float, float]:
        R_lo, R_hi = self.spec.R_bounds
        w_lo, w_hi = self.spec.omega_bounds
        return min(max(R, R_lo), R_hi), min(max(omega, w_lo), w_hi)


def min_testable_lambda(spec: OptimizeSpec) -> TestableBound:
    """
    Coarse log grid over (R, omega_m), then Nelder-Mead in (ln R, ln omega)
    from the best grid cell. The refined geometry replaces the grid optimum
    only if it is at least as good.
    """
    objective = _GeometryObjective(spec)
    R_grid = np.geomspace(*spec.R_bounds, spec.grid_points)
    w_grid = np.geomspace(*spec.omega_bounds, spec.grid_points)

    best_score, best_geometry = math.inf, (float(R_grid[0]), float(w_grid[0]))
    for R in R_grid:
        for omega in w_grid:
            score = objective.score(objective.solve(float(R), float(omega)))
            if score < best_score:
                best_score, best_geometry = score, (float(R), float(omega))

    u0 = np.log(best_geometry)
    du = np.array(
        [
            math.log(spec.R_bounds[1] / spec.R_bounds[0]),
            math.log(spec.omega_bounds[1] / spec.omega_bounds[0]),
        ]
    ) / (spec.grid_points - 1)
    lower = np.log([spec.R_bounds[0], spec.omega_bounds[0]])
    upper = np.log([spec.R_bounds[1], spec.omega_bounds[1]])
    # step inward from whichever side leaves room
    steps = np.where(u0 + du <= upper, du, -du)
    simplex = np.array([u0, u0 + [steps[0], 0.0], u0 + [0.0, steps[1]]])
    refined = minimize(
        objective,
        u0,
        method="Nelder-Mead",
        bounds=list(zip(lower, upper)),
        options={
            "initial_simplex": simplex,
            "xatol": SIMPLEX_TOL,
            "fatol": SIMPLEX_TOL,
            "maxiter": 400,
        },
    )
    refined_geometry = objective._clip(*np.exp(refined.x))
    refined_score = objective.score(objective.solve(*refined_geometry))
    if refined_score <= best_score:
        best_geometry = refined_geometry

    result = objective.solve(*best_geometry)
    bound = TestableBound(
        pressure=spec.pressure,
        T_int=spec.T_int,
        lambda_min=result.lambda_min,
        best_R=best_geometry[0],
        best_omega=best_geometry[1],
        achieved_ratio=result.achieved_ratio,
        converged=result.converged,
    )
    if not bound.converged:
        logger.warning(
            f"No detectable lambda below {spec.lambda_bracket[1]:g} Hz at "
            f"P={spec.pressure:g} Pa, T_int={spec.T_int:g} K"
        )
    else:
        logger.debug(
            f"P={spec.pressure:g} Pa, T_int={spec.T_int:g} K: lambda_min="
            f"{bound.lambda_min:.4g} Hz at R={bound.best_R:.4g} m, "
            f"omega={bound.best_omega:.4g} rad/s"
        )
    return bound


def testable_range_curve(
    pressures: list[float],
    T_int_values: list[float],
    template: OptimizeSpec,
    max_workers: int | None = None,
    processes: bool = True,
) -> list[TestableBound]:
    """
    One TestableBound per (T_int, pressure) pair, ordered by T_int and then
    by pressure as given. Cells are independent and run in parallel, on
    worker processes unless `processes` is False.
    """
    if not pressures or not T_int_values:
        raise ValueError("pressures and T_int_values must not be empty")
    specs = [
        replace_fields(template, pressure=float(P), T_int=float(T))
        for T in T_int_values
        for P in pressures
    ]
    bounds = parallel_map(min_testable_lambda, specs, max_workers, processes=processes)
    logger.info(
        f"Testable range finished: {sum(b.converged for b in bounds)}/{len(bounds)} "
        "cells converged"
    )
    return bounds


def testable_table(bounds: list[TestableBound]) -> pl.DataFrame:
    return pl.DataFrame(
        {
            "pressure_Pa": [b.pressure for b in bounds],
            "T_int_K": [b.T_int for b in bounds],
            "lambda_min_Hz": [b.lambda_min for b in bounds],
            "best_R_m": [b.best_R for b in bounds],
            "best_omega_rad_s": [b.best_omega for b in bounds],
            "achieved_ratio": [b.achieved_ratio for b in bounds],
            "converged": [b.converged for b in bounds],
        },
        schema={
            "pressure_Pa": pl.Float64,
            "T_int_K": pl.Float64,
            "lambda_min_Hz": pl.Float64,
            "best_R_m": pl.Float64,
            "best_omega_rad_s": pl.Float64,
            "achieved_ratio": pl.Float64,
            "converged": pl.Boolean,
        },
    )
