"""Threshold learning and target estimation."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from atckit import (
    DimensionMismatchError,
    EmptyInputError,
    GeneratorSpec,
    MetricValue,
    MissingLabelsError,
    MonotoneTransform,
    PredictionSet,
    ScoreFunction,
    Shift,
    atc_estimate,
    estimate_target,
    learn_threshold,
    make_shift_pair,
    score_batch,
    true_accuracy,
)
from atckit.simplex import Convention

from oracles import naive_learn_threshold


class TestLearnThreshold:
    def test_even_grid_hits_half(self):
        # oracle-verified: scanning all 5 candidates picks 0.6 at proportion 0.5
        t, prop = naive_learn_threshold([0.2, 0.4, 0.6, 0.8], 0.5)
        assert (t, prop) == (0.6, 0.5)
        model = learn_threshold([0.2, 0.4, 0.6, 0.8], 0.5)
        assert (model.threshold, model.achieved_source_proportion) == (t, prop)

    def test_zero_error_takes_minimum(self):
        model = learn_threshold([0.3, 0.7], 0.0)
        assert model.threshold == 0.3
        assert model.achieved_source_proportion == 0.0

    def test_full_error_needs_sentinel(self):
        # oracle-verified: only the sentinel reaches proportion 1
        t, prop = naive_learn_threshold([0.5, 0.5, 0.9], 1.0)
        assert np.isinf(t) and prop == 1.0
        model = learn_threshold([0.5, 0.5, 0.9], 1.0)
        assert model.is_sentinel
        assert model.achieved_source_proportion == 1.0

    def test_accepts_metric_value(self):
        gamma = MetricValue(0.5, Convention.ACCURACY)  # error 0.5
        model = learn_threshold([0.2, 0.4, 0.6, 0.8], gamma)
        assert model.threshold == 0.6

    def test_empty_input(self):
        with pytest.raises(EmptyInputError):
            learn_threshold([], 0.5)

    def test_nan_scores_rejected(self):
        with pytest.raises(ValueError):
            learn_threshold([0.1, float("nan")], 0.5)
        model = learn_threshold([0.1, 0.9], 0.5)
        with pytest.raises(ValueError):
            estimate_target(model, [0.2, float("nan")])

    def test_order_free(self):
        rng = np.random.default_rng(0)
        scores = rng.random(200)
        a = learn_threshold(scores, 0.37)
        b = learn_threshold(rng.permutation(scores), 0.37)
        assert a.threshold == b.threshold
        assert a.achieved_source_proportion == b.achieved_source_proportion

    @given(
        scores=st.lists(
            st.one_of(
                st.floats(min_value=-5, max_value=5, allow_nan=False),
                st.sampled_from([0.0, 0.1, 0.5, 0.5, 1.0]),  # force ties
            ),
            min_size=1,
            max_size=40,
        ),
        gamma=st.floats(min_value=0.0, max_value=1.0),
    )
    @settings(max_examples=300, deadline=None)
    def test_sweep_equals_naive_scan(self, scores, gamma):
        expected_t, expected_prop = naive_learn_threshold(scores, gamma)
        model = learn_threshold(scores, gamma)
        assert model.threshold == expected_t
        assert model.achieved_source_proportion == expected_prop


class TestEstimateTarget:
    def test_counts_strictly_below(self):
        model = learn_threshold([0.2, 0.4, 0.6, 0.8], 0.5)  # t = 0.6
        assert estimate_target(model, [0.1, 0.7]).error == 0.5

    def test_sentinel_classifies_everything_below(self):
        model = learn_threshold([0.5, 0.5, 0.9], 1.0)
        assert estimate_target(model, [0.0, 123.0, -4.0]).error == 1.0

    def test_minimum_threshold_classifies_nothing(self):
        model = learn_threshold([0.3, 0.7], 0.0)  # t = 0.3
        assert estimate_target(model, [0.4, 0.9]).error == 0.0
        # boundary scores are not strictly below
        assert estimate_target(model, [0.3, 0.3]).error == 0.0

    def test_empty_target(self):
        model = learn_threshold([0.5], 0.0)
        with pytest.raises(EmptyInputError):
            estimate_target(model, [])


def _pair(k, seed, n=400, accuracy=0.8, temperature=1.3):
    spec = GeneratorSpec(
        k=k, n=n, target_accuracy=accuracy, concentration=6.0,
        shift=Shift(temperature=temperature), seed=seed,
    )
    return make_shift_pair(spec)


class TestAtcEstimate:
    def test_requires_source_labels(self):
        source = PredictionSet([[0.9, 0.1]])
        target = PredictionSet([[0.4, 0.6]])
        with pytest.raises(MissingLabelsError):
            atc_estimate(source, target, ScoreFunction.MAX_CONF)

    def test_requires_matching_dimension(self):
        source = PredictionSet([[0.9, 0.1]], labels=[0])
        target = PredictionSet([[0.4, 0.3, 0.3]])
        with pytest.raises(DimensionMismatchError):
            atc_estimate(source, target, ScoreFunction.MAX_CONF)

    def test_self_consistency_quantization(self):
        source, _ = _pair(4, seed=5, n=500)
        scores = score_batch(source, ScoreFunction.MAX_CONF)
        assert len(np.unique(scores)) == len(source)  # continuous draws: all distinct
        est = atc_estimate(source, source, ScoreFunction.MAX_CONF)
        gamma = true_accuracy(source).error
        assert abs(est.error - gamma) <= 1.0 / (2 * len(source))

    def test_estimate_on_error_grid(self):
        source, target = _pair(3, seed=9)
        est = atc_estimate(source, target, ScoreFunction.NEG_ENTROPY)
        scaled = est.error * len(target)
        assert abs(scaled - round(scaled)) < 1e-9

    def test_binary_collapse_across_all_functions(self):
        for seed in range(5):
            source, target = _pair(2, seed=seed)
            values = {atc_estimate(source, target, fn).error for fn in ScoreFunction}
            assert len(values) == 1

    def test_quadratic_scores_agree_any_dimension(self):
        for k in (3, 5, 11):
            source, target = _pair(k, seed=k)
            a = atc_estimate(source, target, ScoreFunction.L2_NORM)
            b = atc_estimate(source, target, ScoreFunction.L2_TO_UNIFORM)
            assert a.error == b.error

    @pytest.mark.parametrize("base", tuple(ScoreFunction), ids=lambda f: f.value)
    def test_monotone_transform_leaves_estimate_unchanged(self, base):
        source, target = _pair(5, seed=21)
        reference = atc_estimate(source, target, base)
        for transform in (
            MonotoneTransform.affine(base, 2.0, 1.0),
            MonotoneTransform.affine(base, 0.25, -3.0),
            MonotoneTransform.odd_power(base, 3),
        ):
            transformed = atc_estimate(source, target, transform)
            assert transformed.error == reference.error
            # the decisive fact: identical below-threshold sets, not thresholds
            base_mask = score_batch(target, base) < reference.model.threshold
            tr_mask = score_batch(target, transform) < transformed.model.threshold
            assert np.array_equal(base_mask, tr_mask)

    def test_deterministic_and_order_free(self):
        source, target = _pair(4, seed=2)
        est1 = atc_estimate(source, target, ScoreFunction.JS_TO_UNIFORM)
        rng = np.random.default_rng(0)
        shuffled = source.subset(rng.permutation(len(source)))
        est2 = atc_estimate(shuffled, target, ScoreFunction.JS_TO_UNIFORM)
        assert est1.error == est2.error
        assert est1.model.threshold == est2.model.threshold

    def test_reports_both_conventions_and_sizes(self):
        source, target = _pair(3, seed=4)
        est = atc_estimate(source, target, ScoreFunction.MAX_CONF)
        assert est.accuracy + est.error == 1.0
        assert (est.n_source, est.n_target) == (len(source), len(target))
        assert est.model.fn is ScoreFunction.MAX_CONF
