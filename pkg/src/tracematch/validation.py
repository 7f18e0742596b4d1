"""Input coercion helpers for the estimator API.

The estimators accept plain Python/numpy inputs (arrays, 4-tuples) as well
as the library's own value types; these helpers normalize them.
"""

from __future__ import annotations

from typing import Sequence

from .errors import InvalidSpec
from .trace import ConfigParams, CpuTimeSeries, TraceStage


def as_raw_series(obj, source: str = "array") -> CpuTimeSeries:
    """Coerce an array-like (or pass through a CpuTimeSeries)."""
    if isinstance(obj, CpuTimeSeries):
        return obj
    return CpuTimeSeries(obj, stage=TraceStage.RAW, source=source)


def as_config_params(obj) -> ConfigParams:
    """Coerce a (mappers, reducers, fs_split_mb, input_mb) 4-sequence."""
    if isinstance(obj, ConfigParams):
        return obj
    try:
        mappers, reducers, fs_split_mb, input_mb = (int(v) for v in obj)
    except (TypeError, ValueError) as exc:
        raise InvalidSpec(
            f"expected ConfigParams or a 4-sequence of positive integers, got {obj!r}"
        ) from exc
    return ConfigParams(mappers, reducers, fs_split_mb, input_mb)


def as_runs(X) -> list[tuple[ConfigParams, CpuTimeSeries]]:
    """Coerce a sequence of (params, series) pairs."""
    runs = []
    for idx, item in enumerate(X):
        try:
            params, series = item
        except (TypeError, ValueError) as exc:
            raise InvalidSpec(
                f"run {idx} must be a (params, series) pair, got {item!r}"
            ) from exc
        runs.append((as_config_params(params), as_raw_series(series, source=f"run[{idx}]")))
    return runs


def check_consistent_length(X, y: Sequence) -> None:
    if len(X) != len(y):
        raise InvalidSpec(f"X has {len(X)} runs but y has {len(y)} labels")
