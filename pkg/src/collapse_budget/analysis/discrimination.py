"""
Likelihood-ratio test between two thermal (Bose-Einstein) hypotheses for
measured final phonon numbers.
"""

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field
from scipy import stats

from ..dynamics.sampling import make_generator
from ..utils.utils import parallel_map

# Monte-Carlo trials are split into this many chunks, each with its own child
# seed, so the p-value does not depend on the worker count. One more child
# seed draws the rank of the observed statistic among ties.
MC_CHUNKS = 16


class DiscriminationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    log_likelihood_ratio: float
    p_value: float = Field(ge=0, le=1)
    sample_count: int
    seed: int
    mean_H0: float
    mean_H1: float
    mc_trials: int


def thermal_logpmf(n: np.ndarray, mean: float) -> np.ndarray:
    """log P(n) for the geometric law with the given mean, supported on n = 0, 1, ..."""
    return stats.geom.logpmf(np.asarray(n) + 1, 1.0 / (1.0 + mean))


def log_likelihood_ratio(samples: np.ndarray, mean_H0: float, mean_H1: float) -> np.ndarray:
    """log L(H1) - log L(H0), summed over the last axis."""
    return np.sum(
        thermal_logpmf(samples, mean_H1) - thermal_logpmf(samples, mean_H0), axis=-1
    )


def _simulated_exceedances(
    seed: np.random.SeedSequence,
    trials: int,
    sample_count: int,
    mean_H0: float,
    mean_H1: float,
    observed: float,
    observed_rank: float,
) -> int:
    """
    Simulated statistics above the observed one, plus the tied ones whose
    uniform rank lands above `observed_rank`.
    """
    if trials == 0:
        return 0
    rng = make_generator(seed)
    if mean_H0 == 0:
        simulated = np.zeros((trials, sample_count), dtype=np.int64)
    else:
        simulated = rng.geometric(1.0 / (1.0 + mean_H0), size=(trials, sample_count)) - 1
    llr = log_likelihood_ratio(simulated, mean_H0, mean_H1)
    ranks = rng.uniform(size=trials)
    if np.isfinite(observed):
        slack = 1e-12 * max(1.0, abs(observed))
        ties = np.abs(llr - observed) <= slack
        above = llr > observed + slack
    else:
        ties = llr == observed
        above = llr > observed
    return int(np.count_nonzero(above) + np.count_nonzero(ties & (ranks > observed_rank)))


def likelihood_ratio_test(
    samples: list[int] | np.ndarray,
    mean_H0: float,
    mean_H1: float,
    mc_trials: int = 1000,
    seed: int = 0,
    max_workers: int | None = None,
) -> DiscriminationReport:
    """
    Test H0 (mean_H0) against H1 (mean_H1) on integer phonon measurements.

    The p-value is the Monte-Carlo estimate (1 + #{LLR_sim >= LLR_obs})/(trials + 1)
    with samples resimulated under H0. Ties are ordered by seeded uniform
    ranks, so identical means (LLR = 0 everywhere) give a uniform p-value.
    """
    data = np.asarray(samples)
    if data.size == 0:
        raise ValueError("samples must not be empty")
    if data.ndim != 1 or not np.issubdtype(data.dtype, np.integer) or np.any(data < 0):
        raise ValueError("samples must be a flat sequence of non-negative integers")
    if mean_H0 < 0 or mean_H1 < 0:
        raise ValueError("Hypothesis means must be non-negative")
    if mean_H0 == 0 and mean_H1 == 0 and np.any(data > 0):
        raise ValueError("Nonzero samples are impossible under two zero-mean hypotheses")
    if mc_trials < 1:
        raise ValueError(f"mc_trials must be at least 1, got {mc_trials}")

    observed = float(log_likelihood_ratio(data, mean_H0, mean_H1))
    chunk_sizes = [len(c) for c in np.array_split(np.arange(mc_trials), MC_CHUNKS)]
    *child_seeds, rank_seed = np.random.SeedSequence(seed).spawn(MC_CHUNKS + 1)
    observed_rank = float(make_generator(rank_seed).uniform())
    counts = parallel_map(
        lambda job: _simulated_exceedances(
            job[0], job[1], data.size, mean_H0, mean_H1, observed, observed_rank
        ),
        list(zip(child_seeds, chunk_sizes)),
        max_workers,
    )
    p_value = (1 + sum(counts)) / (mc_trials + 1)
    logger.debug(f"LLR={observed:.6g}, p={p_value:.4g} from {mc_trials} trials")
    return DiscriminationReport(
        log_likelihood_ratio=observed,
        p_value=p_value,
        sample_count=int(data.size),
        seed=seed,
        mean_H0=mean_H0,
        mean_H1=mean_H1,
        mc_trials=mc_trials,
    )
