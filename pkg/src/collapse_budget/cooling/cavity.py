"""
Cavity sideband cooling before the free-evolution phase.

The sphere is cooled in an optical well at omega_c, then released into the
Paul trap at omega_s. The released occupation n0 is the starting point of the
heating measurement.
"""

import math
from typing import Any, ClassVar

import numpy as np
from loguru import logger
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    NonNegativeFloat,
    PositiveFloat,
    model_validator,
)
from scipy import special

from ..core.constants import CONST, DELTA_X_LIMIT
from ..core.models import TWO_PI, Environment, PhysicalModel, Sphere, Trap
from ..core.rates import bulk_temperature, thermal_occupation

DEFAULT_LAMBDA_LASER = 1064e-9
DEFAULT_OMEGA_C = TWO_PI * 100e3


class CavityParams(PhysicalModel):
    """
    Optical cavity and cooling-laser parameters.

    `Delta` is the laser detuning omega_l - omega_cav; red detuning (< 0)
    cools. `k` and `omega_l` default to the values implied by
    `lambda_laser`. `omega_s` defaults to the trap's secular frequency and
    `N_therm` to the thermal occupation at T_env.
    """

    kappa: float = Field(3.0e5 * math.pi, alias="kappa_rad_s", gt=0)
    kappa_sc: float = Field(0.0, alias="kappa_sc_rad_s", ge=0)
    Delta: float = Field(-DEFAULT_OMEGA_C, alias="Delta_rad_s")
    omega_c: float = Field(DEFAULT_OMEGA_C, alias="omega_c_rad_s", gt=0)
    omega_s: PositiveFloat | None = Field(None, alias="omega_s_rad_s")
    omega_l: float = Field(
        TWO_PI * CONST.c / DEFAULT_LAMBDA_LASER, alias="omega_l_rad_s", gt=0
    )
    k: float = Field(TWO_PI / DEFAULT_LAMBDA_LASER, alias="k_m", gt=0)
    a_c_sq: float = Field(1.0e10, ge=0)
    V_c: float = Field(1.96e-11, alias="V_c_m3", gt=0)
    X_d: float = Field(1.0e-7, alias="X_d_m", ge=0)
    eps_r: float = 2.1
    Gamma_sc: float = Field(1.0e4, alias="Gamma_sc_phonons_s", ge=0)
    Gamma_others: float = Field(0.0, alias="Gamma_others_phonons_s", ge=0)
    N_therm: NonNegativeFloat | None = None
    delta_x: float = Field(1.0e-10, alias="delta_x_m", ge=0)
    I0: float = Field(5.0e6, alias="I0_W_m2", ge=0)
    lambda_laser: float = Field(DEFAULT_LAMBDA_LASER, alias="lambda_laser_m", gt=0)

    unit_suffixes: ClassVar[dict[str, tuple[str, float]]] = {
        "kappa_hz": ("kappa_rad_s", TWO_PI),
        "kappa_sc_hz": ("kappa_sc_rad_s", TWO_PI),
        "Delta_hz": ("Delta_rad_s", TWO_PI),
        "omega_c_hz": ("omega_c_rad_s", TWO_PI),
        "omega_s_hz": ("omega_s_rad_s", TWO_PI),
    }

    @model_validator(mode="before")
    @classmethod
    def _derive_from_wavelength(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        wavelength = data.get("lambda_laser_m", data.get("lambda_laser"))
        if wavelength is None or not isinstance(wavelength, (int, float)):
            return data
        if wavelength <= 0:
            return data
        data = dict(data)
        if "k" not in data and "k_m" not in data:
            data["k_m"] = TWO_PI / wavelength
        if "omega_l" not in data and "omega_l_rad_s" not in data:
            data["omega_l_rad_s"] = TWO_PI * CONST.c / wavelength
        return data

    def resolved(self, trap: Trap, env: Environment | None = None) -> "CavityParams":
        """Fill omega_s from the trap and N_therm from T_env when unset."""
        update: dict[str, float] = {}
        if self.omega_s is None:
            update["omega_s"] = trap.omega_m
        if self.N_therm is None:
            T = env.T_env if env is not None else 0.0
            update["N_therm"] = thermal_occupation(T, self.omega_c)
        return self.model_copy(update=update) if update else self


class CoolingResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    g_sq: float
    Gamma_minus: float
    N_ss: float
    T_bulk: float
    n0: float
    settling_time: float = math.nan


def bessel_j0(x: float) -> float:
    return float(special.j0(x))


def optomech_coupling(cav: CavityParams, sphere: Sphere, trap: Trap) -> float:
    """
    Squared optomechanical coupling g^2 in (rad/s)^2, time averaged over the
    AC drive of amplitude X_d.
    """
    if cav.V_c <= 0:
        raise ValueError("V_c must be positive")
    mass = sphere.mass
    drive = 1.0 - bessel_j0(4.0 * cav.k * cav.X_d)
    polarisability = (
        3.0 * sphere.volume / (2.0 * cav.V_c) * (cav.eps_r - 1.0) / (cav.eps_r + 2.0)
    )
    return (
        drive
        / (2.0 * mass * cav.omega_c)
        * CONST.hbar
        * cav.k**2
        * cav.a_c_sq
        * (polarisability * cav.omega_l) ** 2
    )


def cooling_rate(g_sq: float, cav: CavityParams) -> float:
    """
    Time-averaged sideband cooling rate. Positive for red detuning, zero on
    resonance, antisymmetric in Delta.
    """
    if g_sq < 0:
        raise ValueError(f"g_sq must be non-negative, got {g_sq}")
    # cavity-minus-laser detuning
    detuning = -cav.Delta
    half_width_sq = cav.kappa**2 / 4.0
    return (
        g_sq
        * cav.k
        * (
            1.0 / ((detuning - cav.omega_c) ** 2 + half_width_sq)
            - 1.0 / ((detuning + cav.omega_c) ** 2 + half_width_sq)
        )
    )


def steady_state_phonons(cav: CavityParams, Gamma_minus: float) -> float:
    if Gamma_minus <= 0:
        raise ValueError(f"Gamma_minus must be positive, got {Gamma_minus}")
    floor = ((cav.kappa + cav.kappa_sc) / (4.0 * cav.omega_c)) ** 2
    return floor + (cav.Gamma_sc + cav.Gamma_others) / Gamma_minus


def cooling_transient(
    N_therm: float, N_ss: float, Gamma_minus: float, t: float | np.ndarray
) -> float | np.ndarray:
    if N_therm < 0 or N_ss < 0 or Gamma_minus < 0:
        raise ValueError("N_therm, N_ss and Gamma_minus must be non-negative")
    if np.any(np.asarray(t) < 0):
        raise ValueError("t must be non-negative")
    decay = np.exp(-Gamma_minus * np.asarray(t, dtype=float))
    result = N_therm * decay + N_ss * (1.0 - decay)
    return float(result) if np.ndim(result) == 0 else result


def settling_time(
    N_therm: float, N_ss: float, Gamma_minus: float, rel_tol: float = 1e-2
) -> float:
    """Time for the cooling transient to come within rel_tol of N_ss."""
    if Gamma_minus <= 0:
        raise ValueError(f"Gamma_minus must be positive, got {Gamma_minus}")
    if not 0 < rel_tol < 1:
        raise ValueError(f"rel_tol must lie in (0, 1), got {rel_tol}")
    if N_ss <= 0:
        raise ValueError("N_ss must be positive to define a relative tolerance")
    excess = abs(N_therm - N_ss)
    if excess <= rel_tol * N_ss:
        return 0.0
    return math.log(excess / (rel_tol * N_ss)) / Gamma_minus


def initial_phonons(N_ss: float, cav: CavityParams, sphere: Sphere) -> float:
    """
    Occupation after releasing the sphere into the Paul trap: the adiabatic
    frequency rescaling plus the kick from a trap-centre misalignment delta_x.
    This is a lower bound used as the point estimate; real kicks only add.
    """
    if cav.omega_s is None:
        raise ValueError("omega_s is unset; resolve the cavity against a Trap first")
    rescaled = N_ss * cav.omega_c / cav.omega_s
    kick = sphere.mass * cav.omega_s * cav.delta_x**2 / (2.0 * CONST.hbar)
    return rescaled + kick


def check_cooling_params(cav: CavityParams) -> list[str]:
    """Return warnings for physically suspicious but accepted cavity settings."""
    warnings = []
    if cav.Delta >= 0:
        warnings.append(
            f"Delta = {cav.Delta:g} rad/s is not red detuned; the cooling rate is not positive"
        )
    if cav.delta_x > DELTA_X_LIMIT:
        warnings.append(
            f"delta_x = {cav.delta_x:g} m exceeds {DELTA_X_LIMIT:g} m; "
            "the release kick dominates n0"
        )
    for message in warnings:
        logger.warning(message)
    return warnings


def run_cooling(
    cav: CavityParams, sphere: Sphere, trap: Trap, env: Environment
) -> CoolingResult:
    """Full cooling pipeline: g^2, cooling rate, N_ss, bulk temperature and n0."""
    cav = cav.resolved(trap, env)
    check_cooling_params(cav)
    g_sq = optomech_coupling(cav, sphere, trap)
    Gamma_minus = cooling_rate(g_sq, cav)
    if Gamma_minus <= 0:
        logger.error(f"Cooling rate {Gamma_minus:g} 1/s is not positive")
        raise ValueError(
            "Cooling rate is not positive; check the detuning sign and drive amplitude"
        )
    N_ss = steady_state_phonons(cav, Gamma_minus)
    assert cav.N_therm is not None
    result = CoolingResult(
        g_sq=g_sq,
        Gamma_minus=Gamma_minus,
        N_ss=N_ss,
        T_bulk=bulk_temperature(cav.I0, cav.lambda_laser, sphere, env),
        n0=initial_phonons(N_ss, cav, sphere),
        settling_time=settling_time(cav.N_therm, N_ss, Gamma_minus),
    )
    logger.debug(
        f"Cooling: Gamma_minus={Gamma_minus:.4g} 1/s, N_ss={N_ss:.4g}, n0={result.n0:.4g}"
    )
    return result
