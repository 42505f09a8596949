# ScenarioConfig lives in .scenario and is not re-exported here: it depends on
# the cooling package, which itself builds on these modules.
from .budget import assemble_budget, efield_diffusion
from .constants import (
    BB_RESPONSE_IM_CALIBRATED,
    CONST,
    DELTA_X_LIMIT,
    H2_MASS,
    MBAR_TO_PA,
    Q_EDGE_CORE_LIMIT,
    Constants,
)
from .enums import (
    GasDiffusionConvention,
    GridScale,
    Hypothesis,
    IntegratorMethod,
    SweepAxis,
)
from .models import (
    TWO_PI,
    CslParams,
    EFieldReference,
    Environment,
    NoiseBudget,
    PhysicalModel,
    Sphere,
    Trap,
)
from .rates import (
    ALPHA_SERIES_SWITCH,
    alpha_sphere,
    bb_damping,
    bb_diffusion,
    bulk_temperature,
    charge_anisotropy_negligible,
    csl_diffusion,
    efield_heating_translate,
    gas_damping,
    gas_diffusion,
    mean_gas_speed,
    sphere_mass,
    thermal_occupation,
)

__all__ = [
    "ALPHA_SERIES_SWITCH",
    "BB_RESPONSE_IM_CALIBRATED",
    "CONST",
    "Constants",
    "CslParams",
    "DELTA_X_LIMIT",
    "EFieldReference",
    "Environment",
    "GasDiffusionConvention",
    "GridScale",
    "H2_MASS",
    "Hypothesis",
    "IntegratorMethod",
    "MBAR_TO_PA",
    "NoiseBudget",
    "PhysicalModel",
    "Q_EDGE_CORE_LIMIT",
    "Sphere",
    "SweepAxis",
    "TWO_PI",
    "Trap",
    "alpha_sphere",
    "assemble_budget",
    "bb_damping",
    "bb_diffusion",
    "bulk_temperature",
    "charge_anisotropy_negligible",
    "csl_diffusion",
    "efield_diffusion",
    "efield_heating_translate",
    "gas_damping",
    "gas_diffusion",
    "mean_gas_speed",
    "sphere_mass",
    "thermal_occupation",
]
