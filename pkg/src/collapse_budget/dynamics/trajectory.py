"""Time series of the mean phonon number."""

import numpy as np
import polars as pl
from pydantic import BaseModel, ConfigDict, field_validator

TIME_COLUMN = "t_s"
PHONON_COLUMN = "mean_n"


class Trajectory(BaseModel):
    """
    A phonon-number trajectory represented as a Polars DataFrame with columns:
    t_s, mean_n
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    data: pl.DataFrame
    label: str = ""

    def __init__(self, **kwargs):
        if "data" in kwargs:
            data = kwargs["data"]
        else:
            data = pl.DataFrame(
                {
                    TIME_COLUMN: np.asarray(kwargs.get("times", []), dtype=float),
                    PHONON_COLUMN: np.asarray(kwargs.get("mean_n", []), dtype=float),
                }
            )
        super().__init__(data=data, label=kwargs.get("label", ""))

    @field_validator("data")
    @classmethod
    def validate_dataframe_structure(cls, v: pl.DataFrame) -> pl.DataFrame:
        """Require the two columns, strictly increasing times and non-negative occupation."""
        missing = [c for c in (TIME_COLUMN, PHONON_COLUMN) if c not in v.columns]
        if missing:
            raise ValueError(f"Missing required columns: {missing}")
        try:
            v = v.select(
                pl.col(TIME_COLUMN).cast(pl.Float64),
                pl.col(PHONON_COLUMN).cast(pl.Float64),
            )
        except Exception as e:
            raise ValueError(f"Error casting columns to correct types: {e}")

        times = v[TIME_COLUMN].to_numpy()
        if len(times) > 1 and not np.all(np.diff(times) > 0):
            raise ValueError("times must be strictly increasing")
        if np.any(v[PHONON_COLUMN].to_numpy() < 0):
            raise ValueError("mean_n must be non-negative")
        return v

    @property
    def times(self) -> np.ndarray:
        return self.data[TIME_COLUMN].to_numpy()

    @property
    def mean_n(self) -> np.ndarray:
        return self.data[PHONON_COLUMN].to_numpy()

    @property
    def final(self) -> float:
        """Mean phonon number at the last time point."""
        return float(self.mean_n[-1])

    def __len__(self) -> int:
        return len(self.data)

    def prefix_columns(self, prefix: str) -> pl.DataFrame:
        """Rename the occupation column with a prefix for horizontal concatenation"""
        return self.data.rename({PHONON_COLUMN: f"{prefix}_{PHONON_COLUMN}"})
