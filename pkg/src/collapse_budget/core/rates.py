"""
Per-source heating and damping rates.

Diffusion rates are in phonons/s, damping rates in 1/s, frequencies are
angular (rad/s). Every function is pure.
"""

import math

from .constants import CONST, Q_EDGE_CORE_LIMIT
from .enums import GasDiffusionConvention
from .models import CslParams, Environment, Sphere, Trap, solid_sphere_mass

# Below this x = R^2/r_c^2 the alpha bracket is evaluated by its Taylor series
ALPHA_SERIES_SWITCH = 1.0e-2


def sphere_mass(sphere: Sphere) -> float:
    """Mass of a solid sphere, (4/3)*pi*R^3*d."""
    return solid_sphere_mass(sphere.radius, sphere.density)


def _alpha_shape(x: float) -> float:
    """6*[e^-x - 1 + (x/2)(e^-x + 1)]/x^3, which tends to 1/2 as x -> 0."""
    if x < ALPHA_SERIES_SWITCH:
        # bracket = sum_n (-1)^n (2-n)/(2 n!) x^n, first terms from n = 3
        return 6.0 * (1.0 / 12.0 - x / 24.0 + x**2 / 80.0 - x**3 / 360.0)
    em1 = math.expm1(-x)
    bracket = em1 + 0.5 * x * (em1 + 2.0)
    return 6.0 * bracket / x**3


def alpha_sphere(R: float, r_c: float, mass: float) -> float:
    """
    Geometry factor converting the single-nucleon collapse rate into the
    centre-of-mass diffusion of a homogeneous sphere.
    """
    if R <= 0:
        raise ValueError(f"R must be positive, got {R}")
    if r_c <= 0:
        raise ValueError(f"r_c must be positive, got {r_c}")
    if mass <= 0:
        raise ValueError(f"mass must be positive, got {mass}")
    x = (R / r_c) ** 2
    return (mass / CONST.m_amu) ** 2 * _alpha_shape(x)


def csl_diffusion(sphere: Sphere, trap: Trap, csl: CslParams) -> float:
    """CSL momentum diffusion, hbar/(m*omega_m) * lambda/r_c^2 * alpha."""
    mass = sphere.mass
    alpha = alpha_sphere(sphere.radius, csl.r_c, mass)
    return CONST.hbar / (mass * trap.omega_m) * csl.lambda_csl / csl.r_c**2 * alpha


def mean_gas_speed(T: float, gas_mass: float) -> float:
    """Mean thermal speed of a Maxwell-Boltzmann gas."""
    if gas_mass <= 0:
        raise ValueError(f"gas_mass must be positive, got {gas_mass}")
    if T < 0:
        raise ValueError(f"T must be non-negative, got {T}")
    return math.sqrt(8.0 * CONST.k_B * T / (math.pi * gas_mass))


def gas_damping(env: Environment, sphere: Sphere) -> float:
    """Damping from collisions with the background gas, 16P/(pi*v_g*R*d)."""
    if env.pressure == 0:
        return 0.0
    if env.T_env <= 0:
        raise ValueError("T_env must be positive when the pressure is nonzero")
    v_g = mean_gas_speed(env.T_env, env.gas_mass)
    return 16.0 * env.pressure / (math.pi * v_g * sphere.radius * sphere.density)


def gas_diffusion(
    gamma_g: float,
    env: Environment,
    trap: Trap,
    convention: GasDiffusionConvention = GasDiffusionConvention.MAIN_TEXT,
) -> float:
    if gamma_g < 0:
        raise ValueError(f"gamma_g must be non-negative, got {gamma_g}")
    factor = 2.0 if convention == GasDiffusionConvention.MAIN_TEXT else 1.0
    return gamma_g * CONST.k_B * env.T_env / (factor * CONST.hbar * trap.omega_m)


def bb_damping(T_i: float, sphere: Sphere, trap: Trap) -> float:
    """
    Blackbody damping at temperature T_i, evaluated as
    (2 pi^4/63) (k_B T_i)^6 / (c^5 hbar d omega_m) * Im[(eps-1)/(eps+2)].

    Called with T_int for emission and with T_env for absorption. The
    magnitude is carried by the calibrated `bb_response_im`.
    """
    if T_i < 0:
        raise ValueError(f"T_i must be non-negative, got {T_i}")
    return (
        2.0
        * math.pi**4
        / 63.0
        * (CONST.k_B * T_i) ** 6
        / (CONST.c**5 * CONST.hbar * sphere.density * trap.omega_m)
        * sphere.bb_response_im
    )


def bb_diffusion(
    gamma_bb_e: float, gamma_bb_a: float, env: Environment, trap: Trap
) -> float:
    if gamma_bb_e < 0 or gamma_bb_a < 0:
        raise ValueError("Blackbody damping rates must be non-negative")
    return (
        CONST.k_B
        * (gamma_bb_e * env.T_int + gamma_bb_a * env.T_env)
        / (2.0 * CONST.hbar * trap.omega_m)
    )


def efield_heating_translate(
    ref_rate: float,
    ref_q: float,
    ref_mass: float,
    ref_omega: float,
    sphere: Sphere,
    trap: Trap,
) -> float:
    """
    Scale a measured electric-field heating rate from a reference particle
    to the sphere: rate * q^2 m' w' / (q'^2 m w).
    """
    for name, value in (
        ("ref_rate", ref_rate),
        ("ref_q", ref_q),
        ("ref_mass", ref_mass),
        ("ref_omega", ref_omega),
    ):
        if value <= 0:
            raise ValueError(f"{name} must be positive, got {value}")
    return (
        ref_rate
        * sphere.charge**2
        * ref_mass
        * ref_omega
        / (ref_q**2 * sphere.mass * trap.omega_m)
    )


def bulk_temperature(
    I0: float, lambda_laser: float, sphere: Sphere, env: Environment
) -> float:
    """Steady-state internal temperature of a sphere absorbing laser light of intensity I0."""
    if I0 < 0:
        raise ValueError(f"I0 must be non-negative, got {I0}")
    if lambda_laser <= 0:
        raise ValueError(f"lambda_laser must be positive, got {lambda_laser}")
    if I0 == 0:
        return env.T_env
    if sphere.emissivity == 0:
        raise ValueError("emissivity must be positive to radiate absorbed laser power")
    eps1, eps2 = sphere.eps1, sphere.eps2
    absorption = 3.0 * eps2 / ((eps1 + 2.0) ** 2 + eps2**2)
    heating = (
        I0
        * 4.0
        * math.pi**3
        * sphere.radius
        / (sphere.emissivity * CONST.sigma_SB * lambda_laser)
        * absorption
    )
    return (heating + env.T_env**4) ** 0.25


def thermal_occupation(T: float, omega: float) -> float:
    """Classical occupation k_B*T/(hbar*omega) of a mode thermalised at T."""
    if T < 0:
        raise ValueError(f"T must be non-negative, got {T}")
    if omega <= 0:
        raise ValueError(f"omega must be positive, got {omega}")
    return CONST.k_B * T / (CONST.hbar * omega)


def charge_anisotropy_negligible(q_edge: float, q_core: float) -> bool:
    """
    Whether the rotational coupling of an anisotropic charge distribution can
    be neglected. Holds for q_edge/q_core <= 1/300.
    """
    if q_core <= 0:
        raise ValueError(f"q_core must be positive, got {q_core}")
    if q_edge < 0:
        raise ValueError(f"q_edge must be non-negative, got {q_edge}")
    return q_edge / q_core <= Q_EDGE_CORE_LIMIT
