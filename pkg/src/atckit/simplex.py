"""Probability vectors, prediction sets, and bounded metrics.

Everything downstream operates on points of the probability simplex: the
k non-negative reals summing to one that a k-class classifier emits per
example. Ingestion is forgiving (serialized softmax dumps rarely sum to
one exactly) but after validation vectors are renormalized so later math
can assume exact simplex membership.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    DimensionError,
    DimensionMismatchError,
    EmptyInputError,
    MissingLabelsError,
    NotOnSimplexError,
)

#: Default ingestion tolerance for the sum-to-one check.
SUM_TOLERANCE = 1e-6


class Convention(Enum):
    """Whether a metric value counts successes or failures."""

    ACCURACY = "accuracy"
    ERROR = "error"


@dataclass(frozen=True)
class MetricValue:
    """A performance metric in [0, 1] tagged with its convention.

    Thresholds are learned against classification error internally;
    reports usually want accuracy. Keeping the convention attached makes
    every conversion explicit and prevents silent 1-x bugs.
    """

    value: float
    convention: Convention

    def __post_init__(self):
        if not 0.0 <= self.value <= 1.0:
            raise ValueError(f"metric value {self.value!r} outside [0, 1]")

    @property
    def accuracy(self) -> float:
        if self.convention is Convention.ACCURACY:
            return self.value
        return 1.0 - self.value

    @property
    def error(self) -> float:
        if self.convention is Convention.ERROR:
            return self.value
        return 1.0 - self.value

    def converted(self, convention: Convention) -> "MetricValue":
        if convention is self.convention:
            return self
        return MetricValue(1.0 - self.value, convention)


def validate_vector(raw, tolerance: float = SUM_TOLERANCE) -> np.ndarray:
    """Validate one probability vector and renormalize it exactly.

    Components in [-tolerance, 0) are clamped to zero (serialization
    noise); anything below -tolerance or a sum further than ``tolerance``
    from one is rejected.

    Returns a read-only float64 array summing to 1 within machine
    precision.
    """
    return validate_matrix(raw, tolerance)[0]


def validate_matrix(raw, tolerance: float = SUM_TOLERANCE) -> np.ndarray:
    """Row-wise :func:`validate_vector` for an (n, k) array."""
    probs = np.array(raw, dtype=np.float64, ndmin=2)
    if probs.ndim != 2:
        raise DimensionError(f"expected a matrix of row vectors, got ndim={probs.ndim}")
    n, k = probs.shape
    if k < 2:
        raise DimensionError(f"probability vectors need k >= 2 components, got k={k}")
    if not np.all(np.isfinite(probs)):
        bad = int(np.argwhere(~np.all(np.isfinite(probs), axis=1))[0, 0])
        raise NotOnSimplexError(f"row {bad}: non-finite component")
    if np.any(probs < -tolerance):
        bad = int(np.argwhere(np.any(probs < -tolerance, axis=1))[0, 0])
        raise NotOnSimplexError(
            f"row {bad}: component below -{tolerance:g} ({probs[bad].min():.6g})"
        )
    probs = np.where(probs < 0.0, 0.0, probs)
    sums = probs.sum(axis=1)
    off = np.abs(sums - 1.0) > tolerance
    if np.any(off):
        bad = int(np.argwhere(off)[0, 0])
        raise NotOnSimplexError(
            f"row {bad}: components sum to {sums[bad]:.9g}, "
            f"further than {tolerance:g} from 1"
        )
    probs /= sums[:, None]
    probs.setflags(write=False)
    return probs


@dataclass(frozen=True)
class PredictionSet:
    """An immutable batch of softmax outputs with optional true labels.

    ``probs`` is an (n, k) matrix of validated probability vectors;
    ``labels``, when present, holds integer class indices in [0, k).
    Represents either labeled validation data or an unlabeled deployment
    sample. Instances are safe to share across threads.
    """

    probs: np.ndarray
    labels: np.ndarray | None = None
    tolerance: float = SUM_TOLERANCE

    def __post_init__(self):
        probs = validate_matrix(self.probs, self.tolerance)
        if probs.shape[0] == 0:
            raise EmptyInputError("prediction set must be non-empty")
        object.__setattr__(self, "probs", probs)
        if self.labels is not None:
            labels = np.asarray(self.labels, dtype=np.int64)
            if labels.size == 0:
                # explicitly empty labels mean "unlabeled"
                object.__setattr__(self, "labels", None)
                return
            if labels.shape != (probs.shape[0],):
                raise DimensionMismatchError(
                    f"{labels.size} labels for {probs.shape[0]} vectors"
                )
            if labels.min() < 0 or labels.max() >= probs.shape[1]:
                raise ValueError(f"labels must lie in [0, {probs.shape[1]})")
            labels.setflags(write=False)
            object.__setattr__(self, "labels", labels)

    def __len__(self) -> int:
        return self.probs.shape[0]

    @property
    def k(self) -> int:
        """Number of classes."""
        return self.probs.shape[1]

    @property
    def predicted_labels(self) -> np.ndarray:
        """Argmax class per example; ties resolve to the lowest index."""
        return np.argmax(self.probs, axis=1)

    def subset(self, indices) -> "PredictionSet":
        """New set from the given row indices (labels travel along).

        Rows of a validated set are already exact simplex points, so the
        result reuses them bit-for-bit instead of renormalizing again.
        """
        probs = self.probs[indices]
        if probs.ndim != 2 or probs.shape[0] == 0:
            raise EmptyInputError("subset must select at least one row")
        probs.setflags(write=False)
        labels = None
        if self.labels is not None:
            labels = self.labels[indices]
            labels.setflags(write=False)
        out = object.__new__(PredictionSet)
        object.__setattr__(out, "probs", probs)
        object.__setattr__(out, "labels", labels)
        object.__setattr__(out, "tolerance", self.tolerance)
        return out


def true_accuracy(data: PredictionSet) -> MetricValue:
    """Fraction of examples whose argmax class equals the true label."""
    if data.labels is None:
        raise MissingLabelsError("true_accuracy needs a labeled prediction set")
    value = float(np.mean(data.predicted_labels == data.labels))
    return MetricValue(value, Convention.ACCURACY)
