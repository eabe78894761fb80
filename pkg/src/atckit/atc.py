"""Accuracy estimation by average thresholded confidence (ATC).

A threshold ``t`` is learned on scored, labeled source data so that the
fraction of source scores strictly below ``t`` matches the source error
as closely as possible; the fraction of target scores strictly below the
same ``t`` is then reported as the estimated target error.

Details that matter for exact reproducibility:

* the comparison is always strict (``score < t``), never ``<=``;
* threshold candidates are the distinct observed source scores plus one
  sentinel above all of them (``+inf``), without which a below-threshold
  proportion of 1 would be unreachable;
* among equally good candidates the smallest wins, which is both
  deterministic and conservative (smaller below-threshold set on the
  target when scores tie).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, EmptyInputError, MissingLabelsError
from .scores import MonotoneTransform, ScoreFunction, Scorer, score_batch
from .simplex import Convention, MetricValue, PredictionSet, true_accuracy


@dataclass(frozen=True)
class ThresholdModel:
    """A learned score threshold together with how well it fits.

    ``achieved_source_proportion`` is the below-threshold fraction the
    selected candidate actually attains on the source scores; re-scanning
    the candidates must reproduce it as the minimizer of
    ``|source error - proportion|``.
    """

    threshold: float
    source_metric: MetricValue
    achieved_source_proportion: float
    fn: ScoreFunction | MonotoneTransform | None = None

    @property
    def is_sentinel(self) -> bool:
        return np.isinf(self.threshold)


@dataclass(frozen=True)
class AtcEstimate:
    """Outcome of one source-to-target estimation run."""

    model: ThresholdModel
    target_value: MetricValue
    n_source: int
    n_target: int

    @property
    def accuracy(self) -> float:
        return self.target_value.accuracy

    @property
    def error(self) -> float:
        return self.target_value.error


def _as_error_value(gamma: MetricValue | float) -> float:
    if isinstance(gamma, MetricValue):
        return gamma.error
    value = float(gamma)
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"source metric {value!r} outside [0, 1]")
    return value


def learn_threshold(
    source_scores,
    gamma_s: MetricValue | float,
    fn: ScoreFunction | MonotoneTransform | None = None,
) -> ThresholdModel:
    """Pick the threshold whose below-threshold fraction best matches ``gamma_s``.

    ``gamma_s`` is interpreted in the error convention (a bare float is
    taken as an error rate). Candidates are swept over the sorted
    distinct scores in O(n log n); the result is identical to the naive
    quadratic scan over all candidates.
    """
    scores = np.asarray(source_scores, dtype=np.float64).ravel()
    if scores.size == 0:
        raise EmptyInputError("cannot learn a threshold from zero scores")
    if not np.all(np.isfinite(scores)):
        raise ValueError("source scores must be finite")
    gamma = _as_error_value(gamma_s)
    n = scores.size

    ordered = np.sort(scores)
    # first occurrence of each distinct value in the sorted array equals
    # the count of scores strictly below it
    uniq, first = np.unique(ordered, return_index=True)
    candidates = np.append(uniq, np.inf)
    proportions = np.append(first / n, 1.0)

    best = int(np.argmin(np.abs(gamma - proportions)))  # first hit = smallest t
    return ThresholdModel(
        threshold=float(candidates[best]),
        source_metric=MetricValue(gamma, Convention.ERROR),
        achieved_source_proportion=float(proportions[best]),
        fn=fn,
    )


def estimate_target(model: ThresholdModel, target_scores) -> MetricValue:
    """Below-threshold fraction of the target scores, in error convention."""
    scores = np.asarray(target_scores, dtype=np.float64).ravel()
    if scores.size == 0:
        raise EmptyInputError("cannot estimate from zero target scores")
    if np.any(np.isnan(scores)):
        raise ValueError("target scores must not contain NaN")
    value = float(np.count_nonzero(scores < model.threshold)) / scores.size
    return MetricValue(value, Convention.ERROR)


def atc_estimate(source: PredictionSet, target: PredictionSet, fn: Scorer) -> AtcEstimate:
    """End-to-end estimate of the target metric from a labeled source set.

    Scores both sets with ``fn``, learns the threshold against the
    source error, and reports the target below-threshold fraction. The
    returned estimate converts freely between error and accuracy.
    """
    if source.labels is None:
        raise MissingLabelsError("ATC needs labels on the source set")
    if source.k != target.k:
        raise DimensionMismatchError(
            f"source has k={source.k} classes but target has k={target.k}"
        )
    gamma_s = true_accuracy(source).converted(Convention.ERROR)
    model = learn_threshold(score_batch(source, fn), gamma_s, fn=fn)
    target_value = estimate_target(model, score_batch(target, fn))
    return AtcEstimate(
        model=model,
        target_value=target_value,
        n_source=len(source),
        n_target=len(target),
    )
