from .discrimination import (
    MC_CHUNKS,
    DiscriminationReport,
    likelihood_ratio_test,
    log_likelihood_ratio,
    thermal_logpmf,
)
from .immunity import (
    DEFAULT_SENSITIVITY_THRESHOLD,
    immunity_interval,
    immunity_region,
    interval_decades,
    log_log_slope,
    longest_run,
)
from .sweeps import (
    SWEEP_COLUMNS,
    SweepRow,
    SweepSpec,
    evaluate_point,
    final_phonons,
    heating_comparison,
    run_sweep,
    sweep_table,
    trajectories_table,
)

__all__ = [
    "DEFAULT_SENSITIVITY_THRESHOLD",
    "DiscriminationReport",
    "MC_CHUNKS",
    "SWEEP_COLUMNS",
    "SweepRow",
    "SweepSpec",
    "evaluate_point",
    "final_phonons",
    "heating_comparison",
    "immunity_interval",
    "immunity_region",
    "interval_decades",
    "likelihood_ratio_test",
    "log_likelihood_ratio",
    "log_log_slope",
    "longest_run",
    "run_sweep",
    "sweep_table",
    "thermal_logpmf",
    "trajectories_table",
]
