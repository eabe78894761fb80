"""Bootstrap benchmark: repeated estimation runs with error aggregation.

For each method and each run, the validation set is resampled with
replacement (per-run seed, shared across methods so that methods are
compared on identical resamples), the target metric is estimated with
the resample as source, and the absolute error against the target's
true accuracy is recorded. Aggregation reports the mean absolute error
with a percentile confidence interval, plus tie-aware win counts and a
pairwise mean-difference report over the run-level error distributions.

Per-run seeds are derived from (master seed, dimension, run index) by a
stable hash, never drawn from a shared stream, so runs may execute in
any order or in parallel and still reproduce bit-identically.
"""

from __future__ import annotations

import csv
import hashlib
from dataclasses import dataclass

import numpy as np

from .atc import atc_estimate
from .doc import DocMode, bootstrap_calibration, doc_estimate
from .errors import EmptyInputError
from .scores import SCORE_IDS, ScoreFunction
from .simplex import PredictionSet, true_accuracy

#: Every method id the harness understands, in canonical output order.
CANONICAL_METHODS = SCORE_IDS + ("doc", "doc-reg")

#: Resamples used to fit the regression baseline within each run.
DOC_REG_CALIBRATION_SETS = 10


@dataclass(frozen=True)
class BenchmarkConfig:
    methods: tuple = CANONICAL_METHODS[:-1]  # six ATC variants + naive DoC
    n_boot: int = 1000
    ci_level: float = 0.95
    master_seed: int = 0
    dimensions: tuple = ()

    def __post_init__(self):
        methods = tuple(dict.fromkeys(self.methods))  # dedupe, keep order
        unknown = [m for m in methods if m not in CANONICAL_METHODS]
        if unknown:
            raise ValueError(f"unknown methods: {unknown}; choose from {CANONICAL_METHODS}")
        if not methods:
            raise ValueError("need at least one method")
        # canonical order regardless of how the caller listed them
        methods = tuple(m for m in CANONICAL_METHODS if m in methods)
        object.__setattr__(self, "methods", methods)
        object.__setattr__(self, "dimensions", tuple(self.dimensions))
        if self.n_boot < 1:
            raise ValueError("n_boot must be at least 1")
        if not 0.0 < self.ci_level < 1.0:
            raise ValueError("ci_level must lie strictly between 0 and 1")


@dataclass(frozen=True)
class RunRecord:
    dimension: int
    method: str
    run_index: int
    abs_error: float

    def __post_init__(self):
        if not 0.0 <= self.abs_error <= 1.0:
            raise ValueError(f"abs_error {self.abs_error!r} outside [0, 1]")


@dataclass(frozen=True)
class AggregateRow:
    dimension: int
    method: str
    mean_abs_error: float
    ci_low: float
    ci_high: float

    def __post_init__(self):
        if not self.ci_low <= self.ci_high:
            raise ValueError("ci_low must not exceed ci_high")


@dataclass(frozen=True)
class PairwiseDifference:
    dimension: int
    method_a: str
    method_b: str
    mean_diff: float
    ci_low: float
    ci_high: float
    significant: bool  # interval excludes zero


def run_seed(master_seed: int, dimension: int, run_index: int) -> int:
    """Stable 64-bit seed for one bootstrap run.

    Derived by hashing rather than drawn from a stream so any subset of
    runs can be reproduced in isolation. The method is deliberately not
    part of the key: all methods within a run must see the same
    resample, otherwise estimator comparisons would be confounded by
    resampling noise (and the exact per-run equalities between
    order-equivalent score functions could not hold).
    """
    key = f"{master_seed}:{dimension}:{run_index}".encode()
    return int.from_bytes(hashlib.blake2b(key, digest_size=8).digest(), "big")


def bootstrap_resample(data: PredictionSet, seed) -> PredictionSet:
    """Sample ``len(data)`` rows with replacement; labels travel along."""
    if len(data) == 0:
        raise EmptyInputError("cannot resample an empty set")
    rng = np.random.default_rng(seed)
    return data.subset(rng.integers(0, len(data), size=len(data)))


def _estimate_accuracy(method: str, source: PredictionSet, target: PredictionSet, seed) -> float:
    if method in SCORE_IDS:
        return atc_estimate(source, target, ScoreFunction(method)).accuracy
    if method == "doc":
        return doc_estimate(source, target, DocMode.NAIVE).accuracy
    if method == "doc-reg":
        calibration = bootstrap_calibration(source, DOC_REG_CALIBRATION_SETS, seed=[seed, 1])
        return doc_estimate(source, target, DocMode.REGRESSION, calibration=calibration).accuracy
    raise ValueError(f"unknown method {method!r}")


def run_benchmark(
    source_val: PredictionSet, test: PredictionSet, config: BenchmarkConfig
) -> list[RunRecord]:
    """All (method, run) records for one validation/test pair.

    Both sets must be labeled: the validation resample provides the
    source metric, the test labels provide the ground truth the
    estimates are scored against.
    """
    true_acc = true_accuracy(test).accuracy
    dimension = test.k
    records = []
    for run_index in range(config.n_boot):
        seed = run_seed(config.master_seed, dimension, run_index)
        resample = bootstrap_resample(source_val, seed)
        for method in config.methods:
            estimate = _estimate_accuracy(method, resample, test, seed)
            records.append(
                RunRecord(dimension, method, run_index, abs(true_acc - estimate))
            )
    records.sort(key=_canonical_key)
    return records


def run_benchmark_suite(pairs, config: BenchmarkConfig) -> list[RunRecord]:
    """Concatenate benchmarks over per-dimension (validation, test) pairs."""
    records = []
    seen_dims = set()
    for source_val, test in pairs:
        if test.k in seen_dims:
            raise ValueError(f"two pairs share dimension k={test.k}")
        seen_dims.add(test.k)
        records.extend(run_benchmark(source_val, test, config))
    records.sort(key=_canonical_key)
    return records


def _canonical_key(record: RunRecord):
    return (record.dimension, CANONICAL_METHODS.index(record.method), record.run_index)


def _grouped_errors(records) -> dict:
    groups: dict = {}
    for r in records:
        groups.setdefault((r.dimension, r.method), []).append(r)
    for key, rs in groups.items():
        rs.sort(key=lambda r: r.run_index)
        groups[key] = np.array([r.abs_error for r in rs])
    return groups


def aggregate(records, ci_level: float = 0.95) -> list[AggregateRow]:
    """Mean and percentile interval of abs_error per (dimension, method).

    Interval endpoints are the (1-ci)/2 and 1-(1-ci)/2 empirical
    quantiles with linear interpolation between order statistics.
    """
    if not records:
        raise EmptyInputError("no records to aggregate")
    alpha = (1.0 - ci_level) / 2.0
    rows = []
    for (dimension, method), errors in sorted(
        _grouped_errors(records).items(), key=lambda kv: (kv[0][0], CANONICAL_METHODS.index(kv[0][1]))
    ):
        lo, hi = np.quantile(errors, [alpha, 1.0 - alpha])
        rows.append(AggregateRow(dimension, method, float(np.mean(errors)), float(lo), float(hi)))
    return rows


def rank_methods(rows, exclude_binary: bool = False, decimals: int = 10) -> dict:
    """Tie-aware win counts: every method hitting a dimension's lowest mean wins.

    Means are rounded to ``decimals`` places before comparison so that
    float noise does not split genuine ties. With ``exclude_binary`` the
    2-class dimension is left out of the contest (there all
    order-equivalent score functions tie by construction). Tied winners
    each score a win, so counts may sum to more than the number of
    dimensions ranked.
    """
    by_dim: dict = {}
    for row in rows:
        if exclude_binary and row.dimension == 2:
            continue
        by_dim.setdefault(row.dimension, []).append(row)
    wins: dict = {}
    for dim_rows in by_dim.values():
        for r in dim_rows:
            wins.setdefault(r.method, 0)
        rounded = [round(r.mean_abs_error, decimals) for r in dim_rows]
        best = min(rounded)
        for r, m in zip(dim_rows, rounded):
            if m == best:
                wins[r.method] += 1
    return wins


def pairwise_difference_report(records, ci_level: float = 0.95) -> list[PairwiseDifference]:
    """Mean per-run error difference for each method pair, with interval.

    Differences are taken run-by-run (the runs are aligned because every
    method shares the run's resample), and the interval is the
    percentile interval of those per-run differences. Pairs whose
    interval excludes zero are flagged.
    """
    groups = _grouped_errors(records)
    dims = sorted({dim for dim, _ in groups})
    alpha = (1.0 - ci_level) / 2.0
    report = []
    for dim in dims:
        methods = [m for m in CANONICAL_METHODS if (dim, m) in groups]
        if len(methods) < 2:
            raise ValueError(f"dimension {dim} has fewer than two methods to compare")
        for i, method_a in enumerate(methods):
            for method_b in methods[i + 1 :]:
                diffs = groups[(dim, method_a)] - groups[(dim, method_b)]
                lo, hi = np.quantile(diffs, [alpha, 1.0 - alpha])
                report.append(
                    PairwiseDifference(
                        dimension=dim,
                        method_a=method_a,
                        method_b=method_b,
                        mean_diff=float(np.mean(diffs)),
                        ci_low=float(lo),
                        ci_high=float(hi),
                        significant=bool(lo > 0.0 or hi < 0.0),
                    )
                )
    return report


def write_runs_csv(records, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["dimension", "method", "run", "abs_error"])
        for r in records:
            writer.writerow([r.dimension, r.method, r.run_index, format(r.abs_error, ".12g")])


def write_aggregate_csv(rows, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["dimension", "method", "mean", "ci_low", "ci_high"])
        for row in rows:
            writer.writerow(
                [
                    row.dimension,
                    row.method,
                    format(row.mean_abs_error, ".12g"),
                    format(row.ci_low, ".12g"),
                    format(row.ci_high, ".12g"),
                ]
            )


def format_aggregate_table(rows) -> str:
    """Human-readable table: percent errors, two decimals, bracketed CI."""
    lines = [f"{'dim':>4}  {'method':<8}  mean [ci]"]
    for row in rows:
        lines.append(
            f"{row.dimension:>4}  {row.method:<8}  "
            f"{100 * row.mean_abs_error:.2f} "
            f"[{100 * row.ci_low:.2f},{100 * row.ci_high:.2f}]"
        )
    return "\n".join(lines)
