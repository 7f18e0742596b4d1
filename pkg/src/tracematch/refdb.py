"""The on-disk reference database of profiled applications.

A database is a single JSON document: a header carrying the format version
and the preprocessing settings shared by every entry, then the entry list.
Samples are written as decimal arrays using Python's shortest round-trip
float representation, so save -> load reproduces them bit-exactly. The exact
field layout is documented in docs/db-format.md and frozen by golden tests.
"""

from __future__ import annotations

import io
import json
import os
from dataclasses import dataclass, field

from .errors import (
    DuplicateEntry,
    MalformedDocument,
    StageViolation,
    TraceMatchError,
    UnsupportedVersion,
)
from .ingest import UtilizationMetric
from .preprocess import FilterSpec
from .trace import ConfigParams, CpuTimeSeries, ProfileEntry, TraceStage

FORMAT_VERSION = 1


@dataclass
class ReferenceDb:
    """Profiled applications plus the preprocessing they were built with.

    All entries share the database's preprocessing settings; matching a
    query preprocessed differently is meaningless, so consumers compare
    their settings against this header and refuse on mismatch.
    """

    filter_spec: FilterSpec = field(default_factory=FilterSpec)
    metric: UtilizationMetric = UtilizationMetric.BUSY_TOTAL
    entries: list[ProfileEntry] = field(default_factory=list)
    format_version: int = FORMAT_VERSION

    def __post_init__(self):
        self._keys = set()
        for entry in self.entries:
            if entry.key in self._keys:
                raise DuplicateEntry(entry.app_id, entry.params)
            self._keys.add(entry.key)

    def __len__(self) -> int:
        return len(self.entries)

    def add(self, entry: ProfileEntry) -> "ReferenceDb":
        """Append an entry, enforcing stage and uniqueness invariants."""
        if entry.series.stage is not TraceStage.NORMALIZED:
            raise StageViolation(
                f"database entries must hold normalized series, got "
                f"{entry.series.stage.value} for app {entry.app_id!r}"
            )
        if entry.key in self._keys:
            raise DuplicateEntry(entry.app_id, entry.params)
        self.entries.append(entry)
        self._keys.add(entry.key)
        return self

    def query(self, params: ConfigParams) -> list[ProfileEntry]:
        """All entries recorded at exactly this configuration."""
        return [e for e in self.entries if e.params == params]

    def app_ids(self) -> list[str]:
        """Distinct application ids, sorted."""
        return sorted({e.app_id for e in self.entries})

    # --- serialization ---------------------------------------------------

    def to_document(self) -> dict:
        return {
            "format_version": self.format_version,
            "preprocessing": {
                "metric": self.metric.value,
                "filter": {
                    "order": self.filter_spec.order,
                    "passband_ripple_db": self.filter_spec.passband_ripple_db,
                    "cutoff_norm": self.filter_spec.cutoff_norm,
                    "zero_phase": self.filter_spec.zero_phase,
                },
            },
            "entries": [
                {
                    "app_id": e.app_id,
                    "params": {
                        "mappers": e.params.mappers,
                        "reducers": e.params.reducers,
                        "fs_split_mb": e.params.fs_split_mb,
                        "input_mb": e.params.input_mb,
                    },
                    "series": {
                        "sample_interval": e.series.sample_interval,
                        "source": e.series.source,
                        "samples": e.series.samples.tolist(),
                    },
                }
                for e in self.entries
            ],
        }

    def save(self, destination) -> None:
        """Write the database document to a path or open file."""
        text = json.dumps(self.to_document(), indent=2) + "\n"
        if hasattr(destination, "write"):
            _write_stream(destination, text)
        else:
            with open(destination, "w", encoding="utf-8") as fh:
                fh.write(text)

    @classmethod
    def load(cls, source) -> "ReferenceDb":
        """Read a database document from a path or open file."""
        if hasattr(source, "read"):
            raw = source.read()
            text = raw.decode("utf-8") if isinstance(raw, bytes) else raw
        else:
            with open(source, "r", encoding="utf-8") as fh:
                text = fh.read()
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedDocument(f"not valid JSON: {exc.msg}", exc.pos) from exc
        return cls.from_document(doc)

    @classmethod
    def from_document(cls, doc) -> "ReferenceDb":
        if not isinstance(doc, dict):
            raise MalformedDocument("top-level document must be an object")
        version = doc.get("format_version")
        if version != FORMAT_VERSION:
            raise UnsupportedVersion(version)
        try:
            pre = doc["preprocessing"]
            metric = UtilizationMetric(pre["metric"])
            fdoc = pre["filter"]
            spec = FilterSpec(
                order=fdoc["order"],
                passband_ripple_db=fdoc["passband_ripple_db"],
                cutoff_norm=fdoc["cutoff_norm"],
                zero_phase=fdoc["zero_phase"],
            )
            db = cls(filter_spec=spec, metric=metric, format_version=version)
            for edoc in doc["entries"]:
                params = ConfigParams(
                    mappers=edoc["params"]["mappers"],
                    reducers=edoc["params"]["reducers"],
                    fs_split_mb=edoc["params"]["fs_split_mb"],
                    input_mb=edoc["params"]["input_mb"],
                )
                series = CpuTimeSeries(
                    edoc["series"]["samples"],
                    sample_interval=edoc["series"]["sample_interval"],
                    stage=TraceStage.NORMALIZED,
                    source=edoc["series"]["source"],
                )
                db.add(ProfileEntry(edoc["app_id"], params, series))
        except (KeyError, TypeError, ValueError, TraceMatchError) as exc:
            raise MalformedDocument(f"bad database document: {exc}") from exc
        return db

    def same_preprocessing(self, filter_spec: FilterSpec, metric: UtilizationMetric) -> bool:
        return self.filter_spec == filter_spec and self.metric is metric


def _write_stream(stream, text: str) -> None:
    try:
        stream.write(text)
    except TypeError:
        stream.write(text.encode("utf-8"))


def load_db(path: str | os.PathLike | io.IOBase) -> ReferenceDb:
    """Convenience alias for :meth:`ReferenceDb.load`."""
    return ReferenceDb.load(path)
