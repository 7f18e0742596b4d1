import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tracematch.dtw import dtw_align
from tracematch.errors import InvalidSpec, LengthMismatch, ZeroVariance
from tracematch.similarity import SimilarityScore, correlation, score

from conftest import normalized, random_normalized

float_series = st.lists(
    st.floats(min_value=-50.0, max_value=50.0), min_size=2, max_size=30
)


class TestCorrelation:
    def test_self_correlation_is_one(self):
        rng = np.random.default_rng(0)
        x = random_normalized(rng, 25)
        assert correlation(x, x) == pytest.approx(1.0, abs=1e-9)

    def test_worked_example(self):
        # cov = 2/3, sigma_x = sqrt(2/3), sigma_y = 2*sqrt(2)/3
        x = normalized([0.0, 1.0, 2.0])
        y = normalized([0.0, 2.0, 2.0])
        expected = (2 / 3) / (math.sqrt(2 / 3) * 2 * math.sqrt(2) / 3)
        assert correlation(x, y) == pytest.approx(expected, abs=1e-12)
        assert correlation(x, y) == pytest.approx(0.8660, abs=1e-4)

    def test_perfect_anticorrelation(self):
        assert correlation(normalized([0.0, 1.0]), normalized([1.0, 0.0])) == -1.0

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            correlation(normalized([0.0, 1.0]), normalized([0.0, 1.0, 2.0]))

    def test_zero_variance_query(self):
        with pytest.raises(ZeroVariance):
            correlation(normalized([1.0, 1.0]), normalized([0.0, 1.0]))

    def test_zero_variance_reference(self):
        with pytest.raises(ZeroVariance):
            correlation(normalized([0.0, 1.0]), normalized([1.0, 1.0]))

    @given(values=float_series)
    @settings(max_examples=200)
    def test_matches_numpy_corrcoef(self, values):
        rng = np.random.default_rng(42)
        other = rng.uniform(-1, 1, len(values))
        x = normalized(values)
        y = normalized(other)
        if np.ptp(x.samples) < 1e-6 or np.ptp(y.samples) < 1e-6:
            return
        expected = float(np.corrcoef(x.samples, y.samples)[0, 1])
        assert correlation(x, y) == pytest.approx(expected, abs=1e-12)

    @given(values=float_series, a=st.floats(min_value=-5, max_value=5), b=st.floats(min_value=-5, max_value=5))
    @settings(max_examples=200)
    def test_affine_invariance(self, values, a, b):
        if abs(a) < 1e-6:
            return
        rng = np.random.default_rng(7)
        other = rng.uniform(0, 1, len(values))
        x = normalized(values)
        y = normalized(other)
        if np.ptp(x.samples) < 1e-6 or np.ptp(y.samples) < 1e-6:
            return
        base = correlation(x, y)
        transformed = correlation(x, normalized(a * y.samples + b))
        assert transformed == pytest.approx(math.copysign(1.0, a) * base, abs=1e-9)

    @given(values=float_series)
    @settings(max_examples=200)
    def test_result_in_unit_interval(self, values):
        rng = np.random.default_rng(9)
        other = rng.uniform(0, 1, len(values))
        x = normalized(values)
        y = normalized(other)
        if np.ptp(x.samples) < 1e-6 or np.ptp(y.samples) < 1e-6:
            return
        assert -1.0 <= correlation(x, y) <= 1.0


class TestScore:
    def test_identical_accepted(self):
        rng = np.random.default_rng(1)
        x = random_normalized(rng, 30)
        result = score(dtw_align(x, x), x, threshold=0.9)
        assert result.corr == pytest.approx(1.0, abs=1e-9)
        assert result.accepted

    def test_worked_example_rejected_at_default_threshold(self):
        x = normalized([0.0, 1.0, 2.0])
        alignment = dtw_align(x, normalized([0.0, 2.0]))
        result = score(alignment, x, threshold=0.9)
        assert result.corr == pytest.approx(0.8660, abs=1e-4)
        assert not result.accepted

    def test_worked_example_accepted_at_lower_threshold(self):
        x = normalized([0.0, 1.0, 2.0])
        alignment = dtw_align(x, normalized([0.0, 2.0]))
        assert score(alignment, x, threshold=0.85).accepted

    @pytest.mark.parametrize("threshold", [0.0, -0.5, 1.5])
    def test_threshold_range_enforced(self, threshold):
        with pytest.raises(InvalidSpec):
            SimilarityScore.from_corr(0.5, threshold)

    @pytest.mark.parametrize("threshold", [0.2, 0.5, 0.9, 1.0])
    def test_self_match_accepted_at_any_threshold(self, threshold):
        rng = np.random.default_rng(2)
        x = random_normalized(rng, 20)
        assert score(dtw_align(x, x), x, threshold=threshold).accepted

    @given(
        corr=st.floats(min_value=-1.0, max_value=1.0),
        threshold=st.floats(min_value=0.01, max_value=1.0),
    )
    @settings(max_examples=200)
    def test_accepted_iff_corr_reaches_threshold(self, corr, threshold):
        result = SimilarityScore.from_corr(corr, threshold)
        assert result.accepted == (corr >= threshold)
