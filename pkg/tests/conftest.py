from pathlib import Path

import numpy as np
import pytest

from tracematch.trace import ConfigParams, CpuTimeSeries, TraceStage

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


def make_series(values, stage=TraceStage.RAW, interval=1.0, source="test"):
    return CpuTimeSeries(values, sample_interval=interval, stage=stage, source=source)


def normalized(values, source="test"):
    return make_series(values, stage=TraceStage.NORMALIZED, source=source)


def random_normalized(rng: np.random.Generator, length: int, source="rand"):
    values = rng.uniform(0.0, 1.0, length)
    values[rng.integers(length)] = 0.0
    values[rng.integers(length)] = 1.0
    return normalized(values, source=source)


PARAMS_A = ConfigParams(11, 6, 20, 30)
PARAMS_B = ConfigParams(21, 30, 10, 80)
PARAMS_C = ConfigParams(32, 21, 30, 80)
PARAMS_D = ConfigParams(42, 33, 20, 60)
