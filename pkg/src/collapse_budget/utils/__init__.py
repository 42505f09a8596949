from .utils import (
    THREADS_ENV_VAR,
    canonical_digest,
    canonical_json,
    convert_unit_suffixes,
    make_grid,
    parallel_map,
    parse_range,
    parse_values,
    worker_count,
)

__all__ = [
    "THREADS_ENV_VAR",
    "canonical_digest",
    "canonical_json",
    "convert_unit_suffixes",
    "make_grid",
    "parallel_map",
    "parse_range",
    "parse_values",
    "worker_count",
]
