"""
Thermal-state evolution of the mean phonon number.

Under a thermal state the master equation reduces to
    dn/dt = -Gamma*n + D_diff
whose solution is used as the default pathway everywhere.
"""

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..core.models import NoiseBudget, Trap
from .trajectory import Trajectory


class EvolutionParams(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    Gamma: float = Field(ge=0)
    D_diff: float = Field(ge=0)
    D_pos: float = Field(0.0, ge=0)
    omega_m: float = Field(gt=0)

    @classmethod
    def from_budget(cls, budget: NoiseBudget, trap: Trap) -> "EvolutionParams":
        return cls(
            Gamma=budget.Gamma_total,
            D_diff=budget.D_diff_total,
            D_pos=budget.D_pos,
            omega_m=trap.omega_m,
        )


def _thermal_params(budget: NoiseBudget) -> EvolutionParams:
    # omega_m does not enter the thermal-state solution
    return EvolutionParams(
        Gamma=budget.Gamma_total, D_diff=budget.D_diff_total, omega_m=1.0
    )


def phonon_rate(n: float, params: EvolutionParams) -> float:
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    return -params.Gamma * n + params.D_diff


def phonon_closed_form(
    n0: float, params: EvolutionParams, t: float | np.ndarray
) -> float | np.ndarray:
    """
    n(t) = e^(-Gamma t)(n0 - D/Gamma) + D/Gamma, with the Gamma = 0 limit
    n0 + D t. Accepts a scalar time or an array of times.
    """
    if n0 < 0:
        raise ValueError(f"n0 must be non-negative, got {n0}")
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0):
        raise ValueError("t must be non-negative")
    Gamma, D = params.Gamma, params.D_diff
    if Gamma == 0:
        n = n0 + D * t_arr
    else:
        # same expression rearranged; stays accurate as Gamma*t -> 0
        n = n0 * np.exp(-Gamma * t_arr) - D * np.expm1(-Gamma * t_arr) / Gamma
    return float(n) if n.ndim == 0 else n


def initial_heating_rate(n0: float, budget: NoiseBudget) -> float:
    """Heating rate at t = 0, -Gamma*n0 + D_diff for the budget's totals."""
    return phonon_rate(n0, _thermal_params(budget))


def evolve_closed_form(
    n0: float, params: EvolutionParams, t_grid: np.ndarray | list[float], label: str = ""
) -> Trajectory:
    times = np.asarray(t_grid, dtype=float)
    return Trajectory(
        times=times, mean_n=phonon_closed_form(n0, params, times), label=label
    )


def asymptotic_ratio(budget_csl: NoiseBudget, budget_cqm: NoiseBudget) -> float:
    """
    D_diff(csl)/D_diff(cqm), the t -> infinity limit of n_csl(t)/n_cqm(t) when
    both budgets share the same Gamma.
    """
    if budget_cqm.D_diff_total <= 0:
        raise ValueError("budget_cqm must have a positive total diffusion")
    return budget_csl.D_diff_total / budget_cqm.D_diff_total


def ratio_trajectory(
    n0: float,
    budget_csl: NoiseBudget,
    budget_cqm: NoiseBudget,
    t_grid: np.ndarray | list[float],
) -> np.ndarray:
    """n_csl(t)/n_cqm(t) on a time grid."""
    times = np.asarray(t_grid, dtype=float)
    n_csl = np.asarray(phonon_closed_form(n0, _thermal_params(budget_csl), times))
    n_cqm = np.asarray(phonon_closed_form(n0, _thermal_params(budget_cqm), times))
    if np.any(n_cqm <= 0):
        raise ValueError("n_cqm must be positive on the whole grid")
    return n_csl / n_cqm
