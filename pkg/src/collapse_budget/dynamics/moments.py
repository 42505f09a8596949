"""
First and second moments of the quadratures Q = a + a^dag, P = i(a^dag - a).

The master equation is read with an amplitude-damping dissipator at rate
Gamma, momentum diffusion D_diff and position diffusion D_pos. Its moments
close into a linear system:

    d<Q>/dt   =  omega <P> - (Gamma/2) <Q>
    d<P>/dt   = -omega <Q> - (Gamma/2) <P>
    dVar_Q/dt =  2 omega C - Gamma (Var_Q - 1) + 4 D_pos
    dVar_P/dt = -2 omega C - Gamma (Var_P - 1) + 4 D_diff
    dC/dt     =  omega (Var_P - Var_Q) - Gamma C

With n = (Var_Q + Var_P)/4 - 1/2 this gives dn/dt = -Gamma n + D_diff + D_pos,
the thermal-state reduction.
"""

import math

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict, model_validator
from scipy.integrate import solve_ivp

from ..core.enums import IntegratorMethod
from .evolution import EvolutionParams
from .trajectory import Trajectory

RTOL = 1e-9
ATOL = 1e-12

# Relative slack on the uncertainty product for floating point round-off
PHYSICALITY_TOL = 1e-6


class IntegrationError(RuntimeError):
    """The moment integrator failed or produced a non-physical state."""


class MomentState(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    mean_Q: float = 0.0
    mean_P: float = 0.0
    var_Q: float = 1.0
    var_P: float = 1.0
    cov_QP: float = 0.0

    @model_validator(mode="after")
    def validate_uncertainty(self) -> "MomentState":
        if self.var_Q < 0 or self.var_P < 0:
            raise ValueError("Variances must be non-negative")
        if not _is_physical(self.var_Q, self.var_P, self.cov_QP):
            raise ValueError(
                "Uncertainty product var_Q*var_P - cov_QP^2 must be at least 1"
            )
        return self

    @classmethod
    def thermal(cls, n: float) -> "MomentState":
        """Thermal state with mean occupation n: Var_Q = Var_P = 2n + 1."""
        if n < 0:
            raise ValueError(f"n must be non-negative, got {n}")
        return cls(var_Q=2.0 * n + 1.0, var_P=2.0 * n + 1.0)

    @property
    def mean_n(self) -> float:
        return moments_to_phonons(self.var_Q, self.var_P)

    def to_vector(self) -> np.ndarray:
        return np.array([self.mean_Q, self.mean_P, self.var_Q, self.var_P, self.cov_QP])

    @classmethod
    def from_vector(cls, y: np.ndarray) -> "MomentState":
        return cls(
            mean_Q=float(y[0]),
            mean_P=float(y[1]),
            var_Q=float(y[2]),
            var_P=float(y[3]),
            cov_QP=float(y[4]),
        )


def moments_to_phonons(var_Q, var_P):
    return (var_Q + var_P) / 4.0 - 0.5


def _is_physical(var_Q: float, var_P: float, cov_QP: float) -> bool:
    product = var_Q * var_P
    return product - cov_QP**2 >= 1.0 - PHYSICALITY_TOL * max(1.0, product)


def moment_system(params: EvolutionParams) -> tuple[np.ndarray, np.ndarray]:
    """Return (A, b) with dy/dt = A y + b for y = (<Q>, <P>, Var_Q, Var_P, C)."""
    w, G = params.omega_m, params.Gamma
    A = np.array(
        [
            [-G / 2, w, 0.0, 0.0, 0.0],
            [-w, -G / 2, 0.0, 0.0, 0.0],
            [0.0, 0.0, -G, 0.0, 2 * w],
            [0.0, 0.0, 0.0, -G, -2 * w],
            [0.0, 0.0, -w, w, -G],
        ]
    )
    b = np.array([0.0, 0.0, G + 4 * params.D_pos, G + 4 * params.D_diff, 0.0])
    return A, b


def rk4_step(rhs, t: float, h: float, y: np.ndarray) -> np.ndarray:
    """Single classical Runge-Kutta 4th order step."""
    k1 = rhs(t, y)
    k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1)
    k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2)
    k4 = rhs(t + h, y + h * k3)
    return y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)


def _integrate_fixed(rhs, y0: np.ndarray, t_final: float, dt: float):
    steps = max(1, math.ceil(t_final / dt))
    h = t_final / steps
    times = np.linspace(0.0, t_final, steps + 1)
    ys = np.empty((5, steps + 1))
    ys[:, 0] = y0
    for i in range(steps):
        ys[:, i + 1] = rk4_step(rhs, times[i], h, ys[:, i])
    return times, ys


def integrate_moments(
    initial: MomentState,
    params: EvolutionParams,
    t_final: float,
    method: IntegratorMethod = IntegratorMethod.ADAPTIVE,
    dt: float | None = None,
    rtol: float = RTOL,
    atol: float = ATOL,
) -> tuple[Trajectory, MomentState]:
    """
    Integrate the moment equations from t = 0 to t_final.

    The adaptive method (RK45 with error control) records every accepted
    step; the fixed method takes classical RK4 steps of size `dt`. Every
    recorded state is checked for physicality.

    Raises:
        IntegrationError: if the integrator fails or a state violates the
            uncertainty bound.
    """
    if t_final <= 0:
        raise ValueError(f"t_final must be positive, got {t_final}")
    A, b = moment_system(params)

    def rhs(_t: float, y: np.ndarray) -> np.ndarray:
        return A @ y + b

    y0 = initial.to_vector()
    method = IntegratorMethod(method)
    if method == IntegratorMethod.FIXED:
        if dt is None or dt <= 0:
            raise ValueError("The fixed-step integrator needs a positive dt")
        times, ys = _integrate_fixed(rhs, y0, t_final, dt)
    else:
        sol = solve_ivp(
            rhs,
            (0.0, t_final),
            y0,
            method="RK45",
            rtol=rtol,
            atol=atol,
            max_step=dt if dt is not None else np.inf,
        )
        if sol.status != 0:
            logger.error(f"Moment integration failed: {sol.message}")
            raise IntegrationError(f"Moment integration failed: {sol.message}")
        times, ys = sol.t, sol.y
    logger.debug(f"Moment integration took {len(times) - 1} steps to t={t_final:g} s")

    var_Q, var_P, cov = ys[2], ys[3], ys[4]
    for i in range(len(times)):
        if var_Q[i] < 0 or var_P[i] < 0 or not _is_physical(var_Q[i], var_P[i], cov[i]):
            logger.error(f"Non-physical moment state at t={times[i]:g} s")
            raise IntegrationError(f"Non-physical moment state at t={times[i]:g} s")

    n = moments_to_phonons(var_Q, var_P)
    # round-off around n = 0
    n = np.where((n < 0) & (n > -PHYSICALITY_TOL), 0.0, n)
    trajectory = Trajectory(times=times, mean_n=n, label="moments")
    return trajectory, MomentState.from_vector(ys[:, -1])
