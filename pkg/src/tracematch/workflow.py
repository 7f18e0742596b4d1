"""The two-phase procedure: profile applications, then match a new one.

Profiling preprocesses each captured run and stores it in the reference
database. Matching preprocesses each query run with the database's own
settings, scores it against every stored entry at the same configuration,
awards that configuration's vote to the best-scoring application if it
clears the threshold, and names the application with the most votes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .dtw import dtw_align
from .errors import EmptyDatabase, PreprocessingMismatch, TraceMatchError
from .ingest import UtilizationMetric
from .preprocess import FilterSpec, preprocess
from .refdb import ReferenceDb
from .similarity import DEFAULT_THRESHOLD, correlation, score
from .trace import ConfigParams, CpuTimeSeries, ProfileEntry

#: one profiling or query run: the configuration it ran at, plus the raw trace
Run = tuple[ConfigParams, CpuTimeSeries]


@dataclass(frozen=True)
class AppScore:
    """One application's correlation against a query run."""

    app_id: str
    corr: float


@dataclass(frozen=True)
class ConfigResult:
    """Scores for one query run, against all same-configuration entries.

    ``winner`` is the best-scoring application, present only when its
    correlation reaches the threshold; ``scores`` is sorted by descending
    correlation (ties by app id).
    """

    params: ConfigParams
    scores: tuple[AppScore, ...]
    winner: str | None


@dataclass(frozen=True)
class MatchReport:
    """Everything the matching phase decided, and why."""

    per_config: tuple[ConfigResult, ...]
    votes: dict[str, int]
    verdict: str | None
    threshold: float


def profile_application(
    app_id: str,
    runs: Iterable[Run],
    db: ReferenceDb,
) -> ReferenceDb:
    """Preprocess each captured run and add it to the database.

    Uses the database's own preprocessing settings. Failures are re-raised
    with the offending (app_id, params) attached.
    """
    for params, raw in runs:
        try:
            series = preprocess(raw, db.filter_spec)
            db.add(ProfileEntry(app_id, params, series))
        except TraceMatchError as exc:
            exc.context = (app_id, params)
            raise
    return db


def match_application(
    query_runs: Sequence[Run],
    db: ReferenceDb,
    threshold: float = DEFAULT_THRESHOLD,
    filter_spec: FilterSpec | None = None,
    metric: UtilizationMetric | None = None,
) -> MatchReport:
    """Score query runs against same-configuration database entries and vote.

    ``filter_spec``/``metric`` assert what the caller preprocessed (or will
    preprocess) with; when given and different from the database header the
    comparison would be meaningless, so this fails loudly instead.
    """
    if filter_spec is not None and filter_spec != db.filter_spec:
        raise PreprocessingMismatch(
            f"query filter settings {filter_spec} differ from database "
            f"settings {db.filter_spec}"
        )
    if metric is not None and metric is not db.metric:
        raise PreprocessingMismatch(
            f"query metric {metric.value!r} differs from database "
            f"metric {db.metric.value!r}"
        )
    if len(db) == 0:
        raise EmptyDatabase("reference database has no entries")

    per_config = []
    for params, raw in query_runs:
        try:
            query_series = preprocess(raw, db.filter_spec)
        except TraceMatchError as exc:
            exc.context = ("<query>", params)
            raise
        scores = []
        for entry in db.query(params):
            alignment = dtw_align(query_series, entry.series)
            result = score(alignment, query_series, threshold)
            scores.append(AppScore(entry.app_id, result.corr))
        scores.sort(key=lambda s: (-s.corr, s.app_id))
        winner = None
        if scores and scores[0].corr >= threshold:
            winner = scores[0].app_id
        per_config.append(ConfigResult(params, tuple(scores), winner))

    votes = {app_id: 0 for app_id in db.app_ids()}
    for config in per_config:
        if config.winner is not None:
            votes[config.winner] += 1

    verdict = _pick_verdict(per_config, votes)
    return MatchReport(
        per_config=tuple(per_config),
        votes=votes,
        verdict=verdict,
        threshold=threshold,
    )


def _pick_verdict(per_config, votes: dict[str, int]) -> str | None:
    """Most-voted app; ties broken by mean winning correlation, then app id."""
    top = max(votes.values(), default=0)
    if top == 0:
        return None
    tied = [app_id for app_id, count in votes.items() if count == top]
    if len(tied) == 1:
        return tied[0]

    def mean_won_corr(app_id: str) -> float:
        corrs = [
            c.scores[0].corr for c in per_config if c.winner == app_id and c.scores
        ]
        return sum(corrs) / len(corrs)

    tied.sort(key=lambda app_id: (-mean_won_corr(app_id), app_id))
    return tied[0]


@dataclass(frozen=True)
class PairComparison:
    """Single-pair diagnostic: full pipeline on exactly two raw series."""

    distance: float
    corr: float
    path_length: int


def compare_pair(
    a: CpuTimeSeries,
    b: CpuTimeSeries,
    filter_spec: FilterSpec = FilterSpec(),
) -> PairComparison:
    """Preprocess both series, align, and correlate (a is the query)."""
    qa = preprocess(a, filter_spec)
    qb = preprocess(b, filter_spec)
    alignment = dtw_align(qa, qb)
    corr = correlation(qa, alignment.expanded_reference)
    return PairComparison(
        distance=alignment.distance,
        corr=corr,
        path_length=alignment.path_length,
    )
