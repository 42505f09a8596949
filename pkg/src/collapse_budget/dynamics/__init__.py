from .evolution import (
    EvolutionParams,
    asymptotic_ratio,
    evolve_closed_form,
    initial_heating_rate,
    phonon_closed_form,
    phonon_rate,
    ratio_trajectory,
)
from .moments import (
    IntegrationError,
    MomentState,
    integrate_moments,
    moment_system,
    moments_to_phonons,
)
from .sampling import make_generator, sample_final_phonons
from .trajectory import Trajectory

__all__ = [
    "EvolutionParams",
    "IntegrationError",
    "MomentState",
    "Trajectory",
    "asymptotic_ratio",
    "evolve_closed_form",
    "initial_heating_rate",
    "integrate_moments",
    "make_generator",
    "moment_system",
    "moments_to_phonons",
    "phonon_closed_form",
    "phonon_rate",
    "ratio_trajectory",
    "sample_final_phonons",
]
