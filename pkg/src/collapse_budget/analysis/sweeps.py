"""Parameter sweeps comparing evolution with and without collapse heating."""

import math

import numpy as np
import polars as pl
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..core.enums import GridScale, SweepAxis
from ..core.models import NoiseBudget
from ..core.scenario import ScenarioConfig
from ..dynamics.evolution import EvolutionParams, evolve_closed_form, phonon_closed_form
from ..dynamics.trajectory import Trajectory
from ..utils.utils import make_grid, parallel_map

SWEEP_COLUMNS = [
    "axis",
    "axis_value",
    "n_csl",
    "n_cqm",
    "ratio",
    "D_gas",
    "D_bb",
    "D_csl",
    "Gamma_total",
]


class SweepSpec(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    axis: SweepAxis
    lo: float
    hi: float
    points: int = Field(ge=2)
    scale: GridScale = GridScale.LOG
    base_config: ScenarioConfig = ScenarioConfig()

    @model_validator(mode="after")
    def validate_bounds(self) -> "SweepSpec":
        if not self.lo < self.hi:
            raise ValueError(f"lo must be less than hi, got {self.lo} and {self.hi}")
        if self.scale == GridScale.LOG and self.lo <= 0:
            raise ValueError("A log-scale sweep needs lo > 0")
        return self

    def grid(self) -> np.ndarray:
        return make_grid(self.lo, self.hi, self.points, self.scale == GridScale.LOG)


class SweepRow(BaseModel):
    """
    One grid point. Failed points keep their axis value, carry the error
    message and have NaN in every number.
    """

    model_config = ConfigDict(frozen=True)

    axis_value: float
    n_csl: float = math.nan
    n_cqm: float = math.nan
    ratio: float = math.nan
    budget_csl: NoiseBudget | None = None
    budget_cqm: NoiseBudget | None = None
    error: str | None = None

    @model_validator(mode="after")
    def validate_dominance(self) -> "SweepRow":
        if self.error is None:
            assert self.n_csl >= self.n_cqm, "n_csl must not be below n_cqm"
        return self

    @property
    def ok(self) -> bool:
        return self.error is None


def phonon_ratio(n_csl: float, n_cqm: float) -> float:
    if n_cqm > 0:
        return n_csl / n_cqm
    return 1.0 if n_csl == n_cqm else math.inf


def final_phonons(config: ScenarioConfig, budget: NoiseBudget) -> float:
    params = EvolutionParams.from_budget(budget, config.trap)
    return float(phonon_closed_form(config.n0, params, config.t_evolve))


def evaluate_point(base: ScenarioConfig, axis: SweepAxis, value: float) -> SweepRow:
    try:
        config = base.with_axis(axis, value)
        budget_csl, budget_cqm = config.budget_pair()
        n_csl = final_phonons(config, budget_csl)
        n_cqm = final_phonons(config, budget_cqm)
        return SweepRow(
            axis_value=value,
            n_csl=n_csl,
            n_cqm=n_cqm,
            ratio=phonon_ratio(n_csl, n_cqm),
            budget_csl=budget_csl,
            budget_cqm=budget_cqm,
        )
    except ValueError as e:
        logger.warning(f"Sweep point {axis.value}={value:g} failed: {e}")
        return SweepRow(axis_value=value, error=str(e))


def run_sweep(spec: SweepSpec, max_workers: int | None = None) -> list[SweepRow]:
    """
    Evaluate n(t_evolve) with the configured lambda_csl and with lambda_csl = 0
    at every grid point. Rows come back in grid order.
    """
    grid = spec.grid()
    logger.debug(
        f"Sweeping {spec.axis.value} over {spec.points} {spec.scale.value} points "
        f"from {spec.lo:g} to {spec.hi:g}"
    )
    rows = parallel_map(
        lambda value: evaluate_point(spec.base_config, spec.axis, float(value)),
        grid,
        max_workers,
    )
    failed = sum(not row.ok for row in rows)
    logger.info(f"Sweep over {spec.axis.value} finished, {failed} failed points")
    return rows


def sweep_table(rows: list[SweepRow], axis: SweepAxis) -> pl.DataFrame:
    """Sweep rows as a table with the sweep CSV columns. Failed points are null."""

    def number(value: float | None) -> float | None:
        return None if value is None or math.isnan(value) else value

    records = []
    for row in rows:
        budget = row.budget_csl
        records.append(
            {
                "axis": SweepAxis(axis).value,
                "axis_value": row.axis_value,
                "n_csl": number(row.n_csl),
                "n_cqm": number(row.n_cqm),
                "ratio": number(row.ratio),
                "D_gas": budget.D_gas if budget else None,
                "D_bb": budget.D_bb if budget else None,
                "D_csl": budget.D_csl if budget else None,
                "Gamma_total": budget.Gamma_total if budget else None,
            }
        )
    schema = {name: pl.Float64 for name in SWEEP_COLUMNS}
    schema["axis"] = pl.Utf8
    return pl.DataFrame(records, schema=schema)


def heating_comparison(
    config: ScenarioConfig,
    lambda_values: list[float],
    t_grid: np.ndarray | list[float],
) -> list[Trajectory]:
    """One closed-form trajectory per lambda_csl value, labelled by lambda."""
    trajectories = []
    for lam in lambda_values:
        budget = config.budget(lambda_csl=lam)
        params = EvolutionParams.from_budget(budget, config.trap)
        trajectories.append(
            evolve_closed_form(config.n0, params, t_grid, label=f"lambda_{lam:g}")
        )
    return trajectories


def trajectories_table(trajectories: list[Trajectory]) -> pl.DataFrame:
    """Join trajectories sharing one time grid into a wide table (t_s, <label>_mean_n...)."""
    if not trajectories:
        return pl.DataFrame()
    times = trajectories[0].data.select("t_s")
    columns = [times]
    for trajectory in trajectories:
        if not np.array_equal(trajectory.times, trajectories[0].times):
            raise ValueError("Trajectories must share one time grid")
        columns.append(
            trajectory.prefix_columns(trajectory.label or "trajectory").drop("t_s")
        )
    return pl.concat(columns, how="horizontal")
