"""Detection of the region where the observable is insensitive to an environmental parameter."""

import math

import numpy as np

from .sweeps import SweepRow

DEFAULT_SENSITIVITY_THRESHOLD = 0.1


def log_log_slope(axis_values: np.ndarray, n_values: np.ndarray) -> np.ndarray:
    """d ln n / d ln x, centred in the interior and one-sided at both ends."""
    return np.gradient(np.log(n_values), np.log(axis_values))


def longest_run(mask: np.ndarray) -> tuple[int, int] | None:
    """Inclusive index bounds of the longest run of True, the first one on ties."""
    best: tuple[int, int] | None = None
    start = None
    for i, flag in enumerate(list(mask) + [False]):
        if flag and start is None:
            start = i
        elif not flag and start is not None:
            if best is None or (i - 1 - start) > (best[1] - best[0]):
                best = (start, i - 1)
            start = None
    return best


def immunity_interval(
    axis_values: np.ndarray | list[float],
    n_values: np.ndarray | list[float],
    sensitivity_threshold: float = DEFAULT_SENSITIVITY_THRESHOLD,
) -> tuple[float, float] | None:
    x = np.asarray(axis_values, dtype=float)
    n = np.asarray(n_values, dtype=float)
    if len(x) != len(n):
        raise ValueError("axis_values and n_values must have the same length")
    if len(x) < 3:
        raise ValueError("At least 3 points are needed to estimate slopes")
    if not np.all(np.diff(x) > 0):
        raise ValueError("Rows must be sorted by strictly increasing axis value")
    if np.any(x <= 0) or np.any(~np.isfinite(n)) or np.any(n <= 0):
        raise ValueError("Axis values and phonon numbers must be positive and finite")
    if sensitivity_threshold <= 0:
        raise ValueError("sensitivity_threshold must be positive")
    slope = log_log_slope(x, n)
    run = longest_run(np.abs(slope) < sensitivity_threshold)
    if run is None:
        return None
    return float(x[run[0]]), float(x[run[1]])


def immunity_region(
    rows: list[SweepRow],
    sensitivity_threshold: float = DEFAULT_SENSITIVITY_THRESHOLD,
    use_cqm: bool = False,
) -> tuple[float, float] | None:
    """
    Largest contiguous axis interval where the local log-log slope of
    n_csl (or n_cqm with `use_cqm`) stays below the threshold. None if no
    point qualifies.
    """
    failed = [row.axis_value for row in rows if not row.ok]
    if failed:
        raise ValueError(f"Sweep rows contain failed points at {failed}")
    values = [row.n_cqm if use_cqm else row.n_csl for row in rows]
    return immunity_interval(
        [row.axis_value for row in rows], values, sensitivity_threshold
    )


def interval_decades(interval: tuple[float, float] | None) -> float:
    """Width of an interval in decades, 0 for an empty one."""
    if interval is None:
        return 0.0
    return math.log10(interval[1] / interval[0])
