"""Assemble the per-source rates into a NoiseBudget."""

from .enums import GasDiffusionConvention
from .models import CslParams, EFieldReference, Environment, NoiseBudget, Sphere, Trap
from .rates import (
    bb_damping,
    bb_diffusion,
    csl_diffusion,
    efield_heating_translate,
    gas_damping,
    gas_diffusion,
)


def efield_diffusion(ref: EFieldReference, sphere: Sphere, trap: Trap) -> float:
    return efield_heating_translate(
        ref.rate, ref.charge, ref.mass, ref.omega, sphere, trap
    )


def assemble_budget(
    sphere: Sphere,
    env: Environment,
    trap: Trap,
    csl: CslParams,
    efield_ref: EFieldReference | None = None,
    gas_convention: GasDiffusionConvention = GasDiffusionConvention.MAIN_TEXT,
) -> NoiseBudget:
    """
    Evaluate every heating source for one scenario.

    D_efield is zero when no reference measurement is supplied. Position
    diffusion is not modelled by any source and stays zero.
    """
    gamma_gas = gas_damping(env, sphere)
    gamma_bb_e = bb_damping(env.T_int, sphere, trap)
    gamma_bb_a = bb_damping(env.T_env, sphere, trap)
    return NoiseBudget(
        D_gas=gas_diffusion(gamma_gas, env, trap, gas_convention),
        D_bb=bb_diffusion(gamma_bb_e, gamma_bb_a, env, trap),
        D_csl=csl_diffusion(sphere, trap, csl),
        D_efield=(
            efield_diffusion(efield_ref, sphere, trap) if efield_ref is not None else 0.0
        ),
        gamma_gas=gamma_gas,
        gamma_bb_e=gamma_bb_e,
        gamma_bb_a=gamma_bb_a,
    )
