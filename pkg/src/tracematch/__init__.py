"""tracematch: fingerprint and match workloads by their CPU-utilization traces.

Ingest captured monitoring output, denoise and normalize it, align traces of
different lengths by dynamic time warping, and score similarity with the
correlation coefficient — either through the functional pipeline in the
submodules or the scikit-learn style estimators exported here.
"""

from .dtw import AlignmentResult, dtw_align, dtw_distance_matrix, pointwise_distance
from .errors import TraceMatchError
from .estimators import TracePreprocessor, WorkloadMatcher
from .ingest import UtilizationMetric, parse_csv, parse_file, parse_sar
from .preprocess import FilterSpec, design_chebyshev1, filter_series, normalize, preprocess
from .refdb import ReferenceDb
from .report import render, render_machine, render_table
from .similarity import SimilarityScore, correlation, score
from .synth import SynthSpec, WorkloadFamily, generate
from .trace import ConfigParams, CpuTimeSeries, ProfileEntry, TraceStage, series_length
from .workflow import (
    AppScore,
    ConfigResult,
    MatchReport,
    PairComparison,
    compare_pair,
    match_application,
    profile_application,
)

__version__ = "0.1.0"

__all__ = [
    "AlignmentResult",
    "AppScore",
    "ConfigParams",
    "ConfigResult",
    "CpuTimeSeries",
    "FilterSpec",
    "MatchReport",
    "PairComparison",
    "ProfileEntry",
    "ReferenceDb",
    "SimilarityScore",
    "SynthSpec",
    "TraceMatchError",
    "TracePreprocessor",
    "TraceStage",
    "UtilizationMetric",
    "WorkloadFamily",
    "WorkloadMatcher",
    "compare_pair",
    "correlation",
    "design_chebyshev1",
    "dtw_align",
    "dtw_distance_matrix",
    "filter_series",
    "generate",
    "match_application",
    "normalize",
    "parse_csv",
    "parse_file",
    "parse_sar",
    "pointwise_distance",
    "preprocess",
    "profile_application",
    "render",
    "render_machine",
    "render_table",
    "score",
    "series_length",
    "__version__",
]
