"""Synthetic MapReduce-shaped CPU traces for fixtures and tests.

Each family is a stylized phase template — map ramp-up, map plateau or
sawtooth, shuffle dip, reduce phase, tail-off — with phase durations scaled
by the configured input size against mapper/reducer counts, plus seeded
uniform noise. The shapes are caricatures for reproducible fixtures, not a
performance model of any real cluster.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import InvalidSpec
from .trace import ConfigParams, CpuTimeSeries, TraceStage

_IDLE = 7.0  # baseline percent outside the job


class WorkloadFamily(Enum):
    """Shape archetypes the generator can emit.

    WORDCOUNT_LIKE holds a sustained high map plateau with a short reduce
    tail; EXIM_LIKE shares that plateau shape but dips differently through
    the shuffle; TERASORT_LIKE runs a sawtooth map phase into a long, heavy
    reduce phase.
    """

    WORDCOUNT_LIKE = "wordcount"
    TERASORT_LIKE = "terasort"
    EXIM_LIKE = "exim"


@dataclass(frozen=True)
class SynthSpec:
    """Everything that determines one synthetic trace."""

    params: ConfigParams
    family: WorkloadFamily
    duration_s: int = 120
    noise_amplitude: float = 5.0
    seed: int = 0

    def __post_init__(self):
        if not isinstance(self.duration_s, int) or self.duration_s < 60:
            raise InvalidSpec(
                f"duration_s must be an integer >= 60, got {self.duration_s!r}"
            )
        if not 0.0 <= self.noise_amplitude <= 50.0:
            raise InvalidSpec(
                f"noise_amplitude must lie in [0, 50], got {self.noise_amplitude}"
            )
        if not 0 <= int(self.seed) < 2**64:
            raise InvalidSpec(f"seed must fit in 64 unsigned bits, got {self.seed}")


@dataclass(frozen=True)
class _Recipe:
    """Phase levels and proportions of one family template.

    Levels are percent CPU. The distinguishing structure must live at time
    scales the default low-pass filter keeps (roughly >= 25 s at 1 Hz) and
    in amplitude-level ordering, which time warping cannot erase.
    """

    map_weight: float
    reduce_weight: float
    map_level: float
    map_slope: float
    map_wobble: float
    dip_frac: float
    dip_level: float
    dip_center: float
    reduce_in: float
    reduce_out: float
    reduce_wobble: float
    sawtooth: bool = False


_RECIPES = {
    # sustained high map plateau, mid dip, short low reduce tail
    WorkloadFamily.WORDCOUNT_LIKE: _Recipe(
        map_weight=1.0, reduce_weight=0.38,
        map_level=90.0, map_slope=4.0, map_wobble=3.0,
        dip_frac=0.08, dip_level=42.0, dip_center=0.5,
        reduce_in=58.0, reduce_out=48.0, reduce_wobble=1.5,
    ),
    # the same plateau shape, but a wider, deeper shuffle dip and lower tail
    WorkloadFamily.EXIM_LIKE: _Recipe(
        map_weight=1.0, reduce_weight=0.46,
        map_level=84.0, map_slope=6.0, map_wobble=-3.0,
        dip_frac=0.18, dip_level=13.0, dip_center=0.35,
        reduce_in=48.0, reduce_out=36.0, reduce_wobble=2.0,
    ),
    # mid-level sawtooth map phase, shallow dip, long heavy reduce on top
    WorkloadFamily.TERASORT_LIKE: _Recipe(
        map_weight=1.0, reduce_weight=1.0,
        map_level=52.0, map_slope=0.0, map_wobble=18.0,
        dip_frac=0.05, dip_level=44.0, dip_center=0.5,
        reduce_in=90.0, reduce_out=82.0, reduce_wobble=4.0,
        sawtooth=True,
    ),
}


def _smoothstep(u: np.ndarray) -> np.ndarray:
    return u * u * (3.0 - 2.0 * u)


def _phase(n: int) -> np.ndarray:
    """Local phase in [0, 1) across a segment of n samples."""
    return np.arange(n) / max(n, 1)


def template(spec: SynthSpec) -> np.ndarray:
    """The noiseless closed-form trace for a spec, in percent."""
    n = spec.duration_s
    p = spec.params
    r = _RECIPES[spec.family]

    ramp_n = max(3, round(0.06 * n))
    dip_n = max(4, round(r.dip_frac * n))
    tail_n = max(3, round(0.06 * n))
    core = n - ramp_n - dip_n - tail_n
    map_work = r.map_weight * p.input_mb / p.mappers
    red_work = r.reduce_weight * p.input_mb / p.reducers
    map_n = round(core * map_work / (map_work + red_work))
    map_n = min(max(map_n, 5), core - 5)
    red_n = core - map_n

    segments = []

    u = _phase(ramp_n)
    segments.append(_IDLE + (r.map_level - _IDLE) * _smoothstep(u))

    u = _phase(map_n)
    if r.sawtooth:
        # slow task waves; coarser splits mean longer waves, floor of 26 s so
        # the default filter does not flatten them away
        period = max(26.0, 20.0 + p.fs_split_mb / 2.0)
        saw = 2.0 * np.abs((np.arange(map_n) / period) % 1.0 - 0.5)
        segments.append(r.map_level + 2.0 * r.map_wobble * (saw - 0.5))
    else:
        segments.append(
            r.map_level
            - r.map_slope * u
            + r.map_wobble * np.sin(2.0 * math.pi * 1.2 * u)
        )

    map_exit = segments[-1][-1] if map_n else r.map_level
    u = _phase(dip_n)
    valley = np.where(
        u < r.dip_center,
        map_exit + (r.dip_level - map_exit) * _smoothstep(u / r.dip_center),
        r.dip_level
        + (r.reduce_in - r.dip_level)
        * _smoothstep((u - r.dip_center) / (1.0 - r.dip_center)),
    )
    segments.append(valley)

    u = _phase(red_n)
    segments.append(
        r.reduce_in
        + (r.reduce_out - r.reduce_in) * u
        + r.reduce_wobble * np.sin(2.0 * math.pi * 1.3 * u)
    )

    u = _phase(tail_n)
    segments.append(r.reduce_out + (_IDLE - r.reduce_out) * _smoothstep(u))

    return np.clip(np.concatenate(segments), 0.0, 100.0)


def generate(spec: SynthSpec) -> CpuTimeSeries:
    """Deterministic synthetic raw trace at 1 sample per second."""
    values = template(spec)
    if spec.noise_amplitude > 0:
        rng = np.random.default_rng(spec.seed)
        values = values + rng.uniform(
            -spec.noise_amplitude, spec.noise_amplitude, values.size
        )
    values = np.clip(values, 0.0, 100.0)
    return CpuTimeSeries(
        values,
        sample_interval=1.0,
        stage=TraceStage.RAW,
        source=f"synthetic:{spec.family.value}:seed={spec.seed}",
    )
