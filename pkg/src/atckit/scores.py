"""Confidence score functions on the probability simplex.

Each function maps a probability vector to a real, taking its minimum at
the uniform vector and its maximum at the vertices. Conventions, chosen
so that thresholding behaviour is unchanged while evaluation stays cheap:

* squared forms for the quadratic scores (no square roots),
* natural logarithm everywhere,
* ``0 * log(0) == 0`` by continuity, so vertices are legal inputs,
* Jensen-Shannon is the divergence, not its square-root metric.

Per-component terms are sorted before summation, which makes every score
exactly invariant under permutation of the components rather than merely
up to float reassociation.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Union

import numpy as np
from scipy.special import rel_entr, xlogy

from .simplex import PredictionSet


class ScoreFunction(Enum):
    """The six supported score functions, keyed by their CLI ids."""

    MAX_CONF = "max"
    NEG_ENTROPY = "negent"
    L2_NORM = "l2n"
    L1_TO_UNIFORM = "l1u"
    L2_TO_UNIFORM = "l2u"
    JS_TO_UNIFORM = "js"


#: Registry order used for CLI listings and canonical output ordering.
SCORE_IDS = tuple(fn.value for fn in ScoreFunction)


def uniform_vector(k: int) -> np.ndarray:
    """The centroid of the (k-1)-simplex."""
    return np.full(k, 1.0 / k)


def _sorted_row_sum(terms: np.ndarray) -> np.ndarray:
    # sort per row so the summation order is permutation-independent, then
    # accumulate strictly left to right: cumsum cannot reassociate, whereas
    # np.sum's pairwise SIMD reduction groups terms differently depending
    # on buffer alignment, which would break exact symmetry
    return np.cumsum(np.sort(terms, axis=1), axis=1)[:, -1]


def _max_conf(probs: np.ndarray) -> np.ndarray:
    return np.max(probs, axis=1)


def _neg_entropy(probs: np.ndarray) -> np.ndarray:
    return _sorted_row_sum(xlogy(probs, probs))


def _l2_norm_sq(probs: np.ndarray) -> np.ndarray:
    return _sorted_row_sum(probs * probs)


def _l1_to_uniform(probs: np.ndarray) -> np.ndarray:
    u = 1.0 / probs.shape[1]
    return _sorted_row_sum(np.abs(probs - u))


def _l2_to_uniform_sq(probs: np.ndarray) -> np.ndarray:
    u = 1.0 / probs.shape[1]
    d = probs - u
    return _sorted_row_sum(d * d)


def _js_to_uniform(probs: np.ndarray) -> np.ndarray:
    u = 1.0 / probs.shape[1]
    mid = 0.5 * (probs + u)
    terms = 0.5 * (rel_entr(probs, mid) + rel_entr(u, mid))
    return _sorted_row_sum(terms)


_KERNELS: dict[ScoreFunction, Callable[[np.ndarray], np.ndarray]] = {
    ScoreFunction.MAX_CONF: _max_conf,
    ScoreFunction.NEG_ENTROPY: _neg_entropy,
    ScoreFunction.L2_NORM: _l2_norm_sq,
    ScoreFunction.L1_TO_UNIFORM: _l1_to_uniform,
    ScoreFunction.L2_TO_UNIFORM: _l2_to_uniform_sq,
    ScoreFunction.JS_TO_UNIFORM: _js_to_uniform,
}


@dataclass(frozen=True)
class MonotoneTransform:
    """A strictly increasing rescaling of a base score function.

    Restricted to a catalog whose members are strictly increasing on all
    of R by construction (positive-slope affine maps and odd integer
    powers), so no runtime monotonicity check is needed.
    """

    base: ScoreFunction
    kind: str  # "affine" or "odd-power"
    scale: float = 1.0
    offset: float = 0.0
    exponent: int = 1

    def __post_init__(self):
        if self.kind == "affine":
            if self.scale <= 0:
                raise ValueError("affine transform needs a positive slope")
        elif self.kind == "odd-power":
            if self.exponent < 1 or self.exponent % 2 == 0:
                raise ValueError("power transform needs a positive odd exponent")
        else:
            raise ValueError(f"unknown transform kind {self.kind!r}")

    @classmethod
    def affine(cls, base: ScoreFunction, scale: float, offset: float = 0.0):
        return cls(base, "affine", scale=scale, offset=offset)

    @classmethod
    def odd_power(cls, base: ScoreFunction, exponent: int):
        return cls(base, "odd-power", exponent=exponent)

    def __call__(self, values):
        if self.kind == "affine":
            return self.scale * values + self.offset
        return values ** self.exponent


#: Anything score_batch understands: a registry id, a monotone rescaling
#: of one, or an arbitrary vectorized (n, k) -> (n,) scorer.
Scorer = Union[ScoreFunction, MonotoneTransform, Callable[[np.ndarray], np.ndarray]]


def as_scorer(fn: Scorer) -> Callable[[np.ndarray], np.ndarray]:
    """Resolve ``fn`` to a vectorized kernel over an (n, k) matrix."""
    if isinstance(fn, ScoreFunction):
        return _KERNELS[fn]
    if isinstance(fn, MonotoneTransform):
        kernel = _KERNELS[fn.base]
        return lambda probs: fn(kernel(probs))
    if callable(fn):
        return fn
    raise TypeError(f"cannot interpret {fn!r} as a score function")


def score_batch(data: PredictionSet | np.ndarray, fn: Scorer) -> np.ndarray:
    """Score every vector of ``data``, preserving input order."""
    probs = data.probs if isinstance(data, PredictionSet) else np.atleast_2d(np.asarray(data, dtype=np.float64))
    return as_scorer(fn)(probs)


def score(v, fn: Scorer) -> float:
    """Score a single probability vector (assumed already validated)."""
    probs = np.atleast_2d(np.asarray(v, dtype=np.float64))
    return float(as_scorer(fn)(probs)[0])


def apply_transform(v, transform: MonotoneTransform) -> float:
    """Transformed score of a single vector: ``g(score(v, base))``."""
    return score(v, transform)
