"""
collapse-budget - noise budgets for a collapse-model test with a levitated nanosphere

A Python library for:
- Collapse (CSL), gas, blackbody and electric-field heating rates
- Thermal and second-moment evolution of the phonon occupation
- Cavity cooling and the initial occupation in the Paul trap
- Parameter sweeps, immunity regions and likelihood-ratio discrimination
- Minimal testable collapse rates over sphere radius and trap frequency
"""

__version__ = "0.1.0"

from .core import (
    CONST,
    CslParams,
    EFieldReference,
    Environment,
    GasDiffusionConvention,
    NoiseBudget,
    Sphere,
    SweepAxis,
    Trap,
    assemble_budget,
)
from .core.scenario import ScenarioConfig
from .analysis import (
    DiscriminationReport,
    SweepRow,
    SweepSpec,
    heating_comparison,
    immunity_region,
    likelihood_ratio_test,
    run_sweep,
)
from .cooling import CavityParams, CoolingResult, run_cooling
from .dynamics import (
    EvolutionParams,
    IntegrationError,
    MomentState,
    Trajectory,
    integrate_moments,
    phonon_closed_form,
    sample_final_phonons,
)
from .file_io import ConfigError, RunManifest, get_preset, load_config
from .optimizer import OptimizeSpec, TestableBound, min_testable_lambda, testable_range_curve

__all__ = [
    # Domain types
    "Sphere",
    "Environment",
    "Trap",
    "CslParams",
    "EFieldReference",
    "NoiseBudget",
    "ScenarioConfig",
    "CavityParams",
    "CoolingResult",
    "EvolutionParams",
    "MomentState",
    "Trajectory",
    "SweepSpec",
    "SweepRow",
    "DiscriminationReport",
    "OptimizeSpec",
    "TestableBound",
    "RunManifest",
    # Enums and constants
    "CONST",
    "GasDiffusionConvention",
    "SweepAxis",
    # Errors
    "ConfigError",
    "IntegrationError",
    # Pipelines
    "assemble_budget",
    "phonon_closed_form",
    "integrate_moments",
    "sample_final_phonons",
    "run_cooling",
    "heating_comparison",
    "run_sweep",
    "immunity_region",
    "likelihood_ratio_test",
    "min_testable_lambda",
    "testable_range_curve",
    "load_config",
    "get_preset",
]
