from .cavity import (
    CavityParams,
    CoolingResult,
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

__all__ = [
    "CavityParams",
    "CoolingResult",
    "bessel_j0",
    "check_cooling_params",
    "cooling_rate",
    "cooling_transient",
    "initial_phonons",
    "optomech_coupling",
    "run_cooling",
    "settling_time",
    "steady_state_phonons",
]
