"""Core domain types: CPU-utilization series, configuration tuples, profiles.

All types here are immutable value objects; they can be shared freely across
threads or processes without synchronization.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import InvalidSpec


class TraceStage(Enum):
    """Where a series sits in the filter -> normalize pipeline."""

    RAW = "raw"
    FILTERED = "filtered"
    NORMALIZED = "normalized"


@dataclass(frozen=True, eq=False)
class CpuTimeSeries:
    """A uniformly sampled CPU-utilization series.

    Raw traces carry percentages in [0, 100]; normalized traces are unitless
    with minimum 0 and maximum 1. ``stage`` records which applies; it is a
    label established by the operation that produced the series, not
    re-validated on construction (tests build synthetic series at any stage).
    """

    samples: np.ndarray
    sample_interval: float = 1.0
    stage: TraceStage = TraceStage.RAW
    source: str = "synthetic"

    def __post_init__(self):
        arr = np.array(self.samples, dtype=float, copy=True).reshape(-1)
        if arr.size and not np.isfinite(arr).all():
            raise InvalidSpec("series samples must all be finite")
        if not self.sample_interval > 0:
            raise InvalidSpec(
                f"sample_interval must be > 0, got {self.sample_interval}"
            )
        arr.flags.writeable = False
        object.__setattr__(self, "samples", arr)

    def __len__(self) -> int:
        return int(self.samples.size)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CpuTimeSeries):
            return NotImplemented
        return (
            np.array_equal(self.samples, other.samples)
            and self.sample_interval == other.sample_interval
            and self.stage is other.stage
            and self.source == other.source
        )

    def with_samples(self, samples, stage: TraceStage) -> "CpuTimeSeries":
        """New series with the same metadata but different samples/stage."""
        return CpuTimeSeries(
            samples=samples,
            sample_interval=self.sample_interval,
            stage=stage,
            source=self.source,
        )

    def scaled(self, factor: float) -> "CpuTimeSeries":
        """New series with every sample multiplied by ``factor``."""
        return self.with_samples(self.samples * factor, self.stage)


def series_length(series: CpuTimeSeries) -> int:
    """Number of samples in the series."""
    return len(series)


@dataclass(frozen=True, order=True)
class ConfigParams:
    """The four execution knobs labelling one experiment.

    mappers/reducers are task counts; fs_split_mb is the filesystem split
    size and input_mb the input size, both in megabytes.
    """

    mappers: int
    reducers: int
    fs_split_mb: int
    input_mb: int

    def __post_init__(self):
        for name in ("mappers", "reducers", "fs_split_mb", "input_mb"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool):
                raise InvalidSpec(f"{name} must be an integer, got {value!r}")
            if value <= 0:
                raise InvalidSpec(f"{name} must be positive, got {value}")

    def label(self) -> str:
        return (
            f"M={self.mappers},R={self.reducers},"
            f"FS={self.fs_split_mb},I={self.input_mb}"
        )


@dataclass(frozen=True, eq=False)
class ProfileEntry:
    """One database record: an application run at one configuration.

    ``series`` holds the preprocessed (normalized) trace; the stage rule is
    enforced when the entry is added to a database.
    """

    app_id: str
    params: ConfigParams
    series: CpuTimeSeries = field(repr=False)

    def __post_init__(self):
        if not self.app_id:
            raise InvalidSpec("app_id must be non-empty")

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProfileEntry):
            return NotImplemented
        return (
            self.app_id == other.app_id
            and self.params == other.params
            and self.series == other.series
        )

    @property
    def key(self) -> tuple:
        return (self.app_id, self.params)
