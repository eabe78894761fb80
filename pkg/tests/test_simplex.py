"""Vector validation, prediction sets, and metric conventions."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from atckit import (
    Convention,
    DimensionError,
    DimensionMismatchError,
    EmptyInputError,
    MetricValue,
    MissingLabelsError,
    NotOnSimplexError,
    PredictionSet,
    true_accuracy,
    validate_vector,
)


class TestValidateVector:
    def test_exact_point_unchanged(self):
        v = validate_vector([0.5, 0.5])
        assert v.tolist() == [0.5, 0.5]

    def test_three_class_point(self):
        v = validate_vector([0.5, 0.2, 0.3])
        assert v.tolist() == [0.5, 0.2, 0.3]

    def test_sum_off_by_too_much(self):
        with pytest.raises(NotOnSimplexError):
            validate_vector([0.6, 0.6])

    def test_sum_within_tolerance_renormalized(self):
        v = validate_vector([0.5, 0.5000004])
        assert abs(v.sum() - 1.0) <= 1e-12

    def test_tiny_negative_clamped(self):
        v = validate_vector([1.0, -1e-9, 1e-9])
        assert v.min() >= 0.0
        assert abs(v.sum() - 1.0) <= 1e-12

    def test_large_negative_rejected(self):
        with pytest.raises(NotOnSimplexError):
            validate_vector([1.1, -0.1])

    def test_single_component_rejected(self):
        with pytest.raises(DimensionError):
            validate_vector([1.0])

    def test_nan_rejected(self):
        with pytest.raises(NotOnSimplexError):
            validate_vector([0.5, float("nan")])

    @given(
        st.lists(st.floats(min_value=0.0, max_value=1.0), min_size=2, max_size=12).filter(
            lambda xs: sum(xs) > 1e-3
        )
    )
    @settings(max_examples=300, deadline=None)
    def test_renormalization_invariant(self, raw):
        # arbitrary positive vectors scaled onto the simplex stay there
        scale = sum(raw)
        v = validate_vector([x / scale for x in raw], tolerance=1e-6)
        assert abs(v.sum() - 1.0) <= 1e-12
        assert v.min() >= 0.0


class TestPredictionSet:
    def test_empty_rejected(self):
        with pytest.raises(EmptyInputError):
            PredictionSet(np.zeros((0, 3)))

    def test_labels_length_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            PredictionSet([[0.5, 0.5], [0.1, 0.9]], labels=[0])

    def test_labels_out_of_range(self):
        with pytest.raises(ValueError):
            PredictionSet([[0.5, 0.5]], labels=[2])

    def test_empty_labels_treated_as_unlabeled(self):
        data = PredictionSet([[0.6, 0.4]], labels=[])
        assert data.labels is None

    def test_probs_read_only(self):
        data = PredictionSet([[0.5, 0.5]])
        with pytest.raises(ValueError):
            data.probs[0, 0] = 0.9

    def test_predicted_labels_tie_breaks_low(self):
        data = PredictionSet([[0.5, 0.5], [0.2, 0.8]])
        assert data.predicted_labels.tolist() == [0, 1]

    def test_subset_is_bit_identical(self):
        rng = np.random.default_rng(0)
        data = PredictionSet(rng.dirichlet(np.ones(4), size=50), labels=rng.integers(0, 4, 50))
        idx = rng.integers(0, 50, size=50)
        sub = data.subset(idx)
        assert np.array_equal(sub.probs, data.probs[idx])
        assert np.array_equal(sub.labels, data.labels[idx])
        assert len(sub) == 50 and sub.k == 4


class TestTrueAccuracy:
    def test_all_correct(self):
        data = PredictionSet([[0.9, 0.1], [0.2, 0.8]], labels=[0, 1])
        assert true_accuracy(data).value == 1.0

    def test_half_correct(self):
        data = PredictionSet([[0.9, 0.1], [0.2, 0.8]], labels=[1, 1])
        assert true_accuracy(data).value == 0.5

    def test_missing_labels(self):
        data = PredictionSet([[0.6, 0.4]], labels=[])
        with pytest.raises(MissingLabelsError):
            true_accuracy(data)

    def test_pure_function_of_input(self):
        rng = np.random.default_rng(3)
        probs = rng.dirichlet(np.ones(3), size=40)
        labels = rng.integers(0, 3, 40)
        a = true_accuracy(PredictionSet(probs, labels))
        b = true_accuracy(PredictionSet(probs, labels))
        assert a == b
        assert 0.0 <= a.value <= 1.0


class TestMetricValue:
    def test_conversion_semantics(self):
        m = MetricValue(0.3, Convention.ERROR)
        assert m.accuracy == 0.7
        assert m.converted(Convention.ACCURACY).value == 0.7
        assert m.converted(Convention.ERROR) is m  # no-op stays identical

    def test_accuracy_plus_error_is_one(self):
        m = MetricValue(0.42, Convention.ACCURACY)
        assert m.accuracy + m.error == 1.0

    def test_bounds_enforced(self):
        with pytest.raises(ValueError):
            MetricValue(1.2, Convention.ACCURACY)
        with pytest.raises(ValueError):
            MetricValue(-0.1, Convention.ERROR)
