"""Scikit-learn style estimators wrapping the matching pipeline.

``TracePreprocessor`` is a stateless transformer (denoise + normalize);
``WorkloadMatcher`` is a classifier whose ``fit`` profiles labelled runs into
a reference database and whose ``predict`` names, per query run, the
best-matching application. Both follow the get_params/set_params contract,
so they clone and grid-search like any other estimator.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.exceptions import NotFittedError

from .ingest import UtilizationMetric
from .preprocess import FilterSpec, preprocess
from .refdb import ReferenceDb
from .similarity import DEFAULT_THRESHOLD
from .validation import as_raw_series, as_runs, check_consistent_length
from .workflow import MatchReport, match_application, profile_application


class TracePreprocessor(TransformerMixin, BaseEstimator):
    """Denoise raw utilization traces and normalize them into [0, 1].

    Stateless: ``fit`` only validates the parameters. ``transform`` accepts
    a sequence of 1-D array-likes or CpuTimeSeries (lengths may differ) and
    returns a list of normalized CpuTimeSeries.
    """

    def __init__(self, order=6, ripple_db=0.5, cutoff=0.1, zero_phase=True):
        self.order = order
        self.ripple_db = ripple_db
        self.cutoff = cutoff
        self.zero_phase = zero_phase

    def filter_spec(self) -> FilterSpec:
        return FilterSpec(
            order=self.order,
            passband_ripple_db=self.ripple_db,
            cutoff_norm=self.cutoff,
            zero_phase=self.zero_phase,
        )

    def fit(self, X=None, y=None):
        self.filter_spec()  # validates parameters
        return self

    def transform(self, X):
        spec = self.filter_spec()
        return [
            preprocess(as_raw_series(series, source=f"X[{idx}]"), spec)
            for idx, series in enumerate(X)
        ]


class WorkloadMatcher(ClassifierMixin, BaseEstimator):
    """Nearest-pattern workload classifier over (configuration, trace) runs.

    ``X`` is a sequence of runs, each a ``(params, series)`` pair where
    ``params`` is a ConfigParams (or 4-tuple) and ``series`` a raw trace;
    ``y`` gives the application label of each run. Prediction compares each
    query run against the stored runs at the same configuration and returns
    the winning label (or None when nothing clears the threshold); ``match``
    returns the full vote report.
    """

    def __init__(
        self,
        threshold=DEFAULT_THRESHOLD,
        order=6,
        ripple_db=0.5,
        cutoff=0.1,
        zero_phase=True,
        metric="busy",
    ):
        self.threshold = threshold
        self.order = order
        self.ripple_db = ripple_db
        self.cutoff = cutoff
        self.zero_phase = zero_phase
        self.metric = metric

    def _filter_spec(self) -> FilterSpec:
        return FilterSpec(
            order=self.order,
            passband_ripple_db=self.ripple_db,
            cutoff_norm=self.cutoff,
            zero_phase=self.zero_phase,
        )

    def fit(self, X, y):
        runs = as_runs(X)
        check_consistent_length(runs, y)
        labels = [str(label) for label in y]
        db = ReferenceDb(
            filter_spec=self._filter_spec(),
            metric=UtilizationMetric(self.metric),
        )
        for (params, series), label in zip(runs, labels):
            profile_application(label, [(params, series)], db)
        self.db_ = db
        self.classes_ = np.unique(labels)
        return self

    @classmethod
    def from_reference_db(cls, db: ReferenceDb, threshold=DEFAULT_THRESHOLD):
        """Build an already-fitted matcher over an existing database."""
        est = cls(
            threshold=threshold,
            order=db.filter_spec.order,
            ripple_db=db.filter_spec.passband_ripple_db,
            cutoff=db.filter_spec.cutoff_norm,
            zero_phase=db.filter_spec.zero_phase,
            metric=db.metric.value,
        )
        est.db_ = db
        est.classes_ = np.unique(db.app_ids())
        return est

    def _check_fitted(self) -> ReferenceDb:
        db = getattr(self, "db_", None)
        if db is None:
            raise NotFittedError(
                "This WorkloadMatcher instance is not fitted yet; "
                "call fit or from_reference_db first."
            )
        return db

    def match(self, X) -> MatchReport:
        """Full matching report (per-config scores, votes, verdict)."""
        db = self._check_fitted()
        return match_application(
            as_runs(X),
            db,
            threshold=self.threshold,
            filter_spec=self._filter_spec(),
            metric=UtilizationMetric(self.metric),
        )

    def predict(self, X):
        """Per-run winning application label; None where nothing matched."""
        report = self.match(X)
        return np.array([c.winner for c in report.per_config], dtype=object)
