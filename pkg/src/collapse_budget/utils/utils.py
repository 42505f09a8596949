import hashlib
import json
import os
import re
from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor
from typing import Any, Callable, Iterable, TypeVar

import numpy as np
from loguru import logger
from pydantic import BaseModel

_T = TypeVar("_T")
_R = TypeVar("_R")

THREADS_ENV_VAR = "COLLAPSE_BUDGET_THREADS"

# lo..hi:N[log|lin]
_RANGE_PATTERN = re.compile(
    r"^\s*(?P<lo>[^.:\s][^:]*?)\.\.(?P<hi>[^:]+?):(?P<n>\d+)\s*(?P<scale>log|lin)?\s*$"
)


def convert_unit_suffixes(
    data: Any, conversions: dict[str, tuple[str, float]]
) -> Any:
    """
    Rewrite unit-suffixed keys into their canonical SI keys.

    `conversions` maps an accepted key (e.g. "pressure_mbar") to the canonical
    key and the multiplicative factor (e.g. ("pressure_pa", 100.0)).
    Non-dict input is returned untouched so pydantic can report it.
    """
    if not isinstance(data, dict):
        return data
    converted = dict(data)
    for source_key, (target_key, factor) in conversions.items():
        if source_key not in converted:
            continue
        if target_key in converted:
            raise ValueError(
                f"Both '{source_key}' and '{target_key}' given; supply only one"
            )
        value = converted.pop(source_key)
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise ValueError(f"'{source_key}' must be a number, got {value!r}")
        converted[target_key] = float(value) * factor
    return converted


def make_grid(lo: float, hi: float, points: int, log: bool) -> np.ndarray:
    """
    Grid from lo to hi inclusive. Log grids are exactly geometric.
    """
    if points < 2:
        raise ValueError("A grid needs at least 2 points")
    if not lo < hi:
        raise ValueError(f"Grid bounds must satisfy lo < hi, got {lo} and {hi}")
    if log:
        if lo <= 0:
            raise ValueError("Log grids need a positive lower bound")
        return np.geomspace(lo, hi, points)
    return np.linspace(lo, hi, points)


def parse_range(text: str) -> tuple[float, float, int, bool]:
    """
    Parse the range grammar `lo..hi:Npts[log|lin]`, e.g. "1e-13..1e-9:20log".
    Returns (lo, hi, points, is_log). Linear is the default scale.
    """
    match = _RANGE_PATTERN.match(text)
    if match is None:
        raise ValueError(f"Invalid range '{text}', expected lo..hi:N[log|lin]")
    try:
        lo = float(match.group("lo"))
        hi = float(match.group("hi"))
    except ValueError as e:
        raise ValueError(f"Invalid range bounds in '{text}'") from e
    points = int(match.group("n"))
    is_log = match.group("scale") == "log"
    # Validate eagerly so the error points at the flag
    make_grid(lo, hi, points, is_log)
    return lo, hi, points, is_log


def parse_values(text: str) -> list[float]:
    """
    Parse either a comma separated list ("20,40,60") or a range expression.
    """
    if ".." in text:
        lo, hi, points, is_log = parse_range(text)
        return make_grid(lo, hi, points, is_log).tolist()
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        raise ValueError(f"Invalid value list '{text}'") from e
    if not values:
        raise ValueError("Empty value list")
    return values


def worker_count() -> int:
    """Worker cap from COLLAPSE_BUDGET_THREADS, defaulting to min(8, cpus)."""
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is None:
        return min(8, os.cpu_count() or 1)
    try:
        count = int(raw)
    except ValueError:
        logger.warning(f"{THREADS_ENV_VAR}={raw!r} is not an integer, using 1 worker")
        return 1
    if count < 1:
        logger.warning(f"{THREADS_ENV_VAR}={count} is not positive, using 1 worker")
        return 1
    return count


def parallel_map(
    fn: Callable[[_T], _R],
    items: Iterable[_T],
    max_workers: int | None = None,
    processes: bool = False,
) -> list[_R]:
    """
    Map fn over items on a thread pool, or on a process pool when `processes`
    is set (fn and items must then pickle). Results come back in input order
    regardless of completion order.
    """
    items = list(items)
    workers = max_workers if max_workers is not None else worker_count()
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    executor = ProcessPoolExecutor if processes else ThreadPoolExecutor
    with executor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def canonical_json(model: BaseModel) -> str:
    """Aliased JSON dump with sorted keys and compact separators."""
    return json.dumps(
        model.model_dump(mode="json", by_alias=True),
        sort_keys=True,
        separators=(",", ":"),
        allow_nan=False,
    )


def canonical_digest(model: BaseModel) -> str:
    """SHA-256 hex digest of the canonical JSON."""
    return hashlib.sha256(canonical_json(model).encode("utf-8")).hexdigest()
