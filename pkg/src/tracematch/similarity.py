"""Similarity scoring of an aligned series pair.

The similarity between a query and an aligned (expanded) reference is their
Pearson correlation coefficient: mean-centered cross-product over the product
of population standard deviations. 1 is a perfect match, 0 no similarity; a
score at or above the acceptance threshold (default 0.9) counts as a match.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidSpec, LengthMismatch, ZeroVariance
from .trace import CpuTimeSeries

DEFAULT_THRESHOLD = 0.9


@dataclass(frozen=True)
class SimilarityScore:
    """A correlation value plus the accept/reject verdict at a threshold."""

    corr: float
    accepted: bool
    threshold: float = DEFAULT_THRESHOLD

    @classmethod
    def from_corr(cls, corr: float, threshold: float = DEFAULT_THRESHOLD):
        if not 0.0 < threshold <= 1.0:
            raise InvalidSpec(f"threshold must lie in (0, 1], got {threshold}")
        return cls(corr=corr, accepted=corr >= threshold, threshold=threshold)


def correlation(x: CpuTimeSeries, y_prime: CpuTimeSeries) -> float:
    """Pearson correlation coefficient of two equal-length series.

    Uses population (divide-by-N) standard deviations; the N cancels, so
    this equals the textbook corrcoef. The result is clamped to [-1, 1]
    against floating-point overshoot.
    """
    if len(x) != len(y_prime):
        raise LengthMismatch(len(x), len(y_prime))
    xs = x.samples
    ys = y_prime.samples
    xd = xs - xs.mean()
    yd = ys - ys.mean()
    sx2 = float(xd @ xd)
    sy2 = float(yd @ yd)
    if sx2 == 0.0:
        raise ZeroVariance(f"query series from {x.source!r} is constant")
    if sy2 == 0.0:
        raise ZeroVariance(f"reference series from {y_prime.source!r} is constant")
    r = float(xd @ yd) / np.sqrt(sx2 * sy2)
    return float(min(1.0, max(-1.0, r)))


def score(alignment, query: CpuTimeSeries, threshold: float = DEFAULT_THRESHOLD) -> SimilarityScore:
    """Score an alignment: correlation of the query with the expanded reference."""
    corr = correlation(query, alignment.expanded_reference)
    return SimilarityScore.from_corr(corr, threshold)
