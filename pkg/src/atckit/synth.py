"""Synthetic classifier-output generator with known ground truth.

Produces labeled prediction sets whose per-example correctness is
controlled exactly: each example's argmax class is forced onto either
its true label (with probability ``target_accuracy``) or a uniformly
random wrong class, so the realized accuracy of a generated set is the
realized fraction of correct draws, not an approximation.

Distribution shift is modeled as temperature scaling, ``p_i ** (1/T)``
renormalized, optionally combined with a different label prior.
Temperature changes every score a confidence-based estimator sees while
leaving each vector's argmax (hence accuracy mechanics) untouched.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .simplex import PredictionSet, validate_vector

#: Rejection rounds before forcing the argmax deterministically.
_MAX_REDRAWS = 1000


@dataclass(frozen=True)
class Shift:
    """Source-to-target distortion: confidence softening and/or label prior."""

    temperature: float = 1.0
    label_prior: tuple | None = None

    def __post_init__(self):
        if not self.temperature > 0:
            raise ValueError("temperature must be positive")
        if self.label_prior is not None:
            object.__setattr__(self, "label_prior", tuple(float(x) for x in self.label_prior))


@dataclass(frozen=True)
class GeneratorSpec:
    """Recipe for one synthetic prediction set."""

    k: int
    n: int
    target_accuracy: float
    concentration: float = 8.0
    shift: Shift | None = None
    seed: int = 0

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("k must be at least 2")
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if not 0.0 < self.target_accuracy <= 1.0:
            raise ValueError("target_accuracy must lie in (0, 1]")
        if not self.concentration > 0:
            raise ValueError("concentration must be positive")


def _label_prior(spec: GeneratorSpec) -> np.ndarray:
    if spec.shift is None or spec.shift.label_prior is None:
        return np.full(spec.k, 1.0 / spec.k)
    prior = validate_vector(spec.shift.label_prior)
    if prior.size != spec.k:
        raise ValueError(f"label prior has {prior.size} entries for k={spec.k}")
    return prior


def _force_argmax(probs: np.ndarray, designated: np.ndarray) -> np.ndarray:
    """Deterministic fallback: winner gets just over half the mass."""
    eps = 1e-6
    rest = probs.copy()
    rest[np.arange(len(designated)), designated] = 0.0
    rest_sum = rest.sum(axis=1, keepdims=True)
    out = (0.5 - eps) * rest / rest_sum
    out[np.arange(len(designated)), designated] = 0.5 + eps
    return out


def generate(spec: GeneratorSpec, rng: np.random.Generator | None = None) -> PredictionSet:
    """Draw one labeled prediction set according to ``spec``.

    Per example: the true label comes from the label prior; a Bernoulli
    draw with probability ``target_accuracy`` decides whether the argmax
    is forced onto the true label or onto a uniformly random wrong
    class. Vectors come from a Dirichlet with ``concentration`` on the
    designated winner and 1 elsewhere, redrawn until the argmax lands
    there (deterministic fallback after a bounded number of rounds, so
    generation always terminates). Temperature shift is applied last.
    """
    if rng is None:
        rng = np.random.default_rng(spec.seed)
    k, n = spec.k, spec.n

    labels = rng.choice(k, size=n, p=_label_prior(spec))
    correct = rng.random(n) < spec.target_accuracy
    offsets = rng.integers(1, k, size=n)
    designated = np.where(correct, labels, (labels + offsets) % k)

    shapes = np.ones((n, k))
    shapes[np.arange(n), designated] = spec.concentration
    draws = rng.gamma(shapes)
    probs = draws / draws.sum(axis=1, keepdims=True)

    for _ in range(_MAX_REDRAWS):
        bad = np.flatnonzero(np.argmax(probs, axis=1) != designated)
        if bad.size == 0:
            break
        redraw = rng.gamma(shapes[bad])
        probs[bad] = redraw / redraw.sum(axis=1, keepdims=True)
    else:
        bad = np.flatnonzero(np.argmax(probs, axis=1) != designated)
        probs[bad] = _force_argmax(probs[bad], designated[bad])

    if spec.shift is not None and spec.shift.temperature != 1.0:
        probs = apply_temperature(probs, spec.shift.temperature)

    return PredictionSet(probs, labels)


def apply_temperature(probs: np.ndarray, temperature: float) -> np.ndarray:
    """Power-scale rows by ``1/temperature`` and renormalize.

    Strictly increasing on components for any positive temperature, so
    the argmax of every row is preserved. ``temperature == 1`` returns
    the input unchanged (bit-exact identity, no gratuitous rounding).
    """
    if not temperature > 0:
        raise ValueError("temperature must be positive")
    if temperature == 1.0:
        return probs
    powered = probs ** (1.0 / temperature)
    return powered / powered.sum(axis=1, keepdims=True)


def make_shift_pair(
    spec: GeneratorSpec, shift: Shift | None = None
) -> tuple[PredictionSet, PredictionSet]:
    """Independent (source, target) draw with the shift applied to the target.

    The source comes from ``spec`` with no shift; the target repeats the
    recipe with ``shift`` (default: the spec's own) and independently
    drawn labels. Both sets are labeled so benchmark ground truth exists.
    """
    if shift is None:
        shift = spec.shift
    source = generate(replace(spec, shift=None), np.random.default_rng([spec.seed, 0]))
    target = generate(replace(spec, shift=shift), np.random.default_rng([spec.seed, 1]))
    return source, target
