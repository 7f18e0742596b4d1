"""Parsers turning captured monitoring output into raw CPU series.

Two formats are supported: the textual output of ``sar -u`` (one data row per
sampling instant with %user/%system/%iowait/%steal/%idle columns) and plain
CSV with one utilization value per line.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum
from typing import IO, Iterable

from .errors import EmptyTrace, MalformedLine, NonMonotonicTimestamps
from .trace import CpuTimeSeries, TraceStage

_TIME_RE = re.compile(r"^(\d{1,2}):(\d{2}):(\d{2})$")
_SECONDS_PER_DAY = 86400


class UtilizationMetric(Enum):
    """Which column combination counts as "CPU utilization".

    The monitoring output carries five percentage columns; the busy total
    (100 - idle) is the default because it includes iowait and steal
    pressure. The other two are exposed so experiments can be re-run
    per-metric.
    """

    BUSY_TOTAL = "busy"
    USER_PLUS_SYSTEM = "usersys"
    USER_ONLY = "user"


@dataclass(frozen=True)
class SarRecord:
    """One parsed data row of a sar CPU report. Percentages are clamped to [0, 100]."""

    timestamp: str
    user_pct: float
    system_pct: float
    iowait_pct: float
    steal_pct: float
    idle_pct: float

    def __post_init__(self):
        for name in ("user_pct", "system_pct", "iowait_pct", "steal_pct", "idle_pct"):
            value = getattr(self, name)
            object.__setattr__(self, name, min(100.0, max(0.0, value)))

    def utilization(self, metric: UtilizationMetric) -> float:
        if metric is UtilizationMetric.BUSY_TOTAL:
            value = 100.0 - self.idle_pct
        elif metric is UtilizationMetric.USER_PLUS_SYSTEM:
            value = self.user_pct + self.system_pct
        else:
            value = self.user_pct
        return min(100.0, max(0.0, value))


def _lines(text: str | IO[str] | Iterable[str]) -> Iterable[str]:
    if isinstance(text, str):
        return text.splitlines()
    return text


def _parse_sar_row(tokens: list[str]) -> SarRecord | None:
    """Parse one whitespace-split line; None when it is not a data row.

    Header repeats, 'Average:' footers, blank lines and truncated rows all
    fall out here as None rather than errors.
    """
    if len(tokens) < 7 or not _TIME_RE.match(tokens[0]):
        return None
    if tokens[1].lower() != "all":
        return None
    values = []
    for tok in tokens[2:7]:
        # sar emits comma decimals under some locales
        try:
            value = float(tok.replace(",", "."))
        except ValueError:
            return None
        if not math.isfinite(value):
            return None
        values.append(value)
    return SarRecord(tokens[0], *values)


def _time_of_day(timestamp: str) -> int:
    h, m, s = (int(g) for g in _TIME_RE.match(timestamp).groups())
    return h * 3600 + m * 60 + s


def parse_sar(
    text: str | IO[str] | Iterable[str],
    metric: UtilizationMetric = UtilizationMetric.BUSY_TOTAL,
    source: str = "<sar>",
) -> CpuTimeSeries:
    """Parse sar-style text into a raw utilization series.

    One sample per valid data row, in file order. The sampling interval is
    inferred from the first two row timestamps (1.0 s when fewer than two
    rows exist or the timestamps coincide). A single backward jump in the
    timestamps is read as a midnight wraparound; a second one means the log
    is corrupted or concatenated and raises NonMonotonicTimestamps.
    """
    records = []
    times = []
    wraps = 0
    for line in _lines(text):
        record = _parse_sar_row(line.split())
        if record is None:
            continue
        t = _time_of_day(record.timestamp)
        if times and t < times[-1][0]:
            wraps += 1
            if wraps > 1:
                raise NonMonotonicTimestamps(
                    f"timestamp {record.timestamp} runs backwards past a "
                    f"second midnight; is this a concatenated log?"
                )
        times.append((t, t + wraps * _SECONDS_PER_DAY))
        records.append(record)
    if not records:
        raise EmptyTrace(f"no data rows found in {source}")
    if len(times) >= 2 and times[1][1] > times[0][1]:
        interval = float(times[1][1] - times[0][1])
    else:
        interval = 1.0
    samples = [r.utilization(metric) for r in records]
    return CpuTimeSeries(
        samples, sample_interval=interval, stage=TraceStage.RAW, source=source
    )


def parse_csv(
    text: str | IO[str] | Iterable[str],
    sample_interval: float = 1.0,
    source: str = "<csv>",
) -> CpuTimeSeries:
    """Parse one-value-per-line text into a raw utilization series.

    The first line may be a header; it is skipped when it does not parse as
    a number. Any later non-numeric line raises MalformedLine. Blank lines
    are ignored.
    """
    samples: list[float] = []
    for lineno, line in enumerate(_lines(text), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        try:
            value = float(stripped)
            if not math.isfinite(value):
                raise ValueError
        except ValueError:
            if lineno == 1:
                continue  # header line
            raise MalformedLine(lineno, stripped) from None
        samples.append(value)
    if not samples:
        raise EmptyTrace(f"no numeric rows found in {source}")
    return CpuTimeSeries(
        samples,
        sample_interval=sample_interval,
        stage=TraceStage.RAW,
        source=source,
    )


def looks_like_sar(text: str) -> bool:
    """True when any line has the sar data-row shape."""
    for line in text.splitlines():
        if _parse_sar_row(line.split()) is not None:
            return True
    return False


def parse_text(
    text: str,
    metric: UtilizationMetric = UtilizationMetric.BUSY_TOTAL,
    source: str = "<trace>",
) -> CpuTimeSeries:
    """Parse trace text, sniffing between the sar and CSV formats."""
    if looks_like_sar(text):
        return parse_sar(text, metric=metric, source=source)
    return parse_csv(text, source=source)


def parse_file(
    path,
    metric: UtilizationMetric = UtilizationMetric.BUSY_TOTAL,
) -> CpuTimeSeries:
    """Read and parse a trace file (sar or CSV, sniffed)."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return parse_text(text, metric=metric, source=str(path))
