"""Synthetic phonon-number measurements under the Bose-Einstein law."""

import numpy as np


def make_generator(seed: int | np.random.SeedSequence) -> np.random.Generator:
    """The single generator type used everywhere: numpy PCG64."""
    return np.random.Generator(np.random.PCG64(seed))


def sample_final_phonons(
    mean_n: float, count: int, seed: int | np.random.SeedSequence
) -> np.ndarray:
    """
    Draw `count` integer phonon numbers from the thermal (geometric)
    distribution P(n) = n_bar^n/(1 + n_bar)^(n + 1) with mean `mean_n`.
    """
    if mean_n < 0:
        raise ValueError(f"mean_n must be non-negative, got {mean_n}")
    if count < 1:
        raise ValueError(f"count must be at least 1, got {count}")
    rng = make_generator(seed)
    if mean_n == 0:
        return np.zeros(count, dtype=np.int64)
    # numpy's geometric counts trials, starting at 1
    return rng.geometric(1.0 / (1.0 + mean_n), size=count).astype(np.int64) - 1
