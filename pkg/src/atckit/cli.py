"""Command line interface.

Subcommands:

* ``estimate``  — point (and optionally bootstrap) accuracy estimates
  for one source/target dump pair.
* ``benchmark`` — the full bootstrap experiment over one or more
  dimensions, emitting runs/aggregate CSVs and a ranking table.
* ``verify``    — order-equivalence checking of the score functions,
  with machine-readable verdicts and counterexample witnesses.
* ``generate``  — synthetic prediction dumps with known accuracy.

Exit codes: 0 success (or verification matched expectations), 1
verification mismatch, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .atc import atc_estimate
from .doc import DocMode, bootstrap_calibration, doc_estimate
from .errors import AtckitError, MissingLabelsError
from .harness import (
    BenchmarkConfig,
    aggregate,
    bootstrap_resample,
    format_aggregate_table,
    pairwise_difference_report,
    rank_methods,
    run_benchmark_suite,
    run_seed,
    write_aggregate_csv,
    write_runs_csv,
)
from .io import load_dump, write_dump
from .ordering import search_counterexample, verify_equivalence_relation, verify_on_sample
from .scores import SCORE_IDS, ScoreFunction
from .simplex import Convention, PredictionSet
from .synth import GeneratorSpec, Shift, generate, make_shift_pair

_EXIT_OK = 0
_EXIT_VERIFY_MISMATCH = 1
_EXIT_INPUT_ERROR = 2


def _pct(x: float) -> str:
    return f"{100.0 * x:.2f}"


def _stable_seed(*parts) -> int:
    import hashlib

    key = ":".join(str(p) for p in parts).encode()
    return int.from_bytes(hashlib.blake2b(key, digest_size=8).digest(), "big")


# ---------------------------------------------------------------- estimate


def _add_estimate_parser(subparsers) -> None:
    p = subparsers.add_parser("estimate", help="estimate target accuracy from a dump pair")
    p.add_argument("--source", required=True, help="labeled source dump (csv/json)")
    p.add_argument("--target", required=True, help="target dump (labels ignored)")
    p.add_argument("--score", default="all", choices=("all",) + SCORE_IDS)
    p.add_argument("--method", default="atc", choices=("atc", "doc", "doc-reg"))
    p.add_argument("--convention", default="accuracy", choices=("accuracy", "error"))
    p.add_argument("--boot", type=int, default=0, help="bootstrap resamples (0 = none)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--calibration-sets", type=int, default=10)
    p.add_argument("--strict-sums", action="store_true", help="disable renormalization")
    p.set_defaults(func=_cmd_estimate)


def _metric_for(args, source: PredictionSet, target: PredictionSet, label: str):
    if label.startswith("atc-"):
        return atc_estimate(source, target, ScoreFunction(label[4:])).target_value
    if label == "doc":
        return doc_estimate(source, target, DocMode.NAIVE)
    calibration = bootstrap_calibration(source, args.calibration_sets, seed=[args.seed, 1])
    return doc_estimate(source, target, DocMode.REGRESSION, calibration=calibration)


def _cmd_estimate(args) -> int:
    source = load_dump(args.source, renormalize=not args.strict_sums)
    target = load_dump(args.target, renormalize=not args.strict_sums)
    if source.labels is None:
        raise MissingLabelsError("estimate needs a labeled source dump")
    convention = Convention(args.convention)

    if args.method == "atc":
        ids = SCORE_IDS if args.score == "all" else (args.score,)
        labels = [f"atc-{i}" for i in ids]
    else:
        labels = [args.method]

    for label in labels:
        point = _metric_for(args, source, target, label).converted(convention).value
        line = f"{label:<10} {_pct(point)}"
        if args.boot > 0:
            values = []
            for i in range(args.boot):
                resample = bootstrap_resample(source, run_seed(args.seed, source.k, i))
                values.append(
                    _metric_for(args, resample, target, label).converted(convention).value
                )
            lo, hi = np.quantile(values, [0.025, 0.975])
            line += f"  boot {_pct(float(np.mean(values)))} [{_pct(float(lo))},{_pct(float(hi))}]"
        print(line)
    return _EXIT_OK


# ---------------------------------------------------------------- benchmark


def _add_benchmark_parser(subparsers) -> None:
    p = subparsers.add_parser("benchmark", help="bootstrap benchmark over dimensions")
    p.add_argument(
        "--pair",
        nargs=2,
        metavar=("SOURCE", "TARGET"),
        action="append",
        help="labeled source/target dump pair (repeat per dimension)",
    )
    p.add_argument("--synthetic", action="store_true", help="generate pairs instead")
    p.add_argument("--k", type=int, nargs="+", default=[6], help="synthetic class counts")
    p.add_argument("--n", type=int, default=2000, help="synthetic examples per set")
    p.add_argument("--accuracy", type=float, default=0.8)
    p.add_argument("--concentration", type=float, default=8.0)
    p.add_argument(
        "--temperature", type=float, default=1.0,
        help="softens (>1) or sharpens (<1) target confidences; 1 = no shift",
    )
    p.add_argument(
        "--methods",
        nargs="+",
        default=list(SCORE_IDS) + ["doc"],
        choices=list(SCORE_IDS) + ["doc", "doc-reg"],
    )
    p.add_argument("--boot", type=int, default=1000)
    p.add_argument("--ci", type=float, default=0.95)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exclude-binary", action="store_true", help="skip k=2 when ranking")
    p.add_argument("--pairwise", action="store_true", help="print pairwise differences")
    p.add_argument("--out-dir", default=".")
    p.set_defaults(func=_cmd_benchmark)


def _synthetic_pairs(args):
    pairs = []
    for k in args.k:
        spec = GeneratorSpec(
            k=k,
            n=args.n,
            target_accuracy=args.accuracy,
            concentration=args.concentration,
            shift=Shift(temperature=args.temperature),
            seed=_stable_seed("gen", args.seed, k),
        )
        pairs.append(make_shift_pair(spec))
    return pairs


def _cmd_benchmark(args) -> int:
    if args.synthetic:
        pairs = _synthetic_pairs(args)
    elif args.pair:
        pairs = []
        for src_path, tgt_path in args.pair:
            source, target = load_dump(src_path), load_dump(tgt_path)
            if source.labels is None or target.labels is None:
                raise MissingLabelsError(
                    f"benchmark pairs need labels on both sides ({src_path}, {tgt_path})"
                )
            pairs.append((source, target))
    else:
        raise AtckitError("benchmark needs --pair dumps or --synthetic")

    config = BenchmarkConfig(
        methods=tuple(args.methods),
        n_boot=args.boot,
        ci_level=args.ci,
        master_seed=args.seed,
        dimensions=tuple(target.k for _, target in pairs),
    )
    records = run_benchmark_suite(pairs, config)
    rows = aggregate(records, ci_level=config.ci_level)

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_runs_csv(records, out_dir / "runs.csv")
    write_aggregate_csv(rows, out_dir / "aggregate.csv")

    print(format_aggregate_table(rows))
    print()
    print("wins per method" + (" (k=2 excluded)" if args.exclude_binary else ""))
    for method, wins in rank_methods(rows, exclude_binary=args.exclude_binary).items():
        print(f"  {method:<8} {wins}")
    if args.pairwise:
        print()
        for d in pairwise_difference_report(records, ci_level=config.ci_level):
            flag = " *" if d.significant else ""
            print(
                f"  k={d.dimension} {d.method_a} vs {d.method_b}: "
                f"{d.mean_diff:+.6f} [{d.ci_low:+.6f},{d.ci_high:+.6f}]{flag}"
            )
    print()
    print(f"wrote {out_dir / 'runs.csv'} and {out_dir / 'aggregate.csv'}")
    return _EXIT_OK


# ------------------------------------------------------------------ verify


def _add_verify_parser(subparsers) -> None:
    p = subparsers.add_parser("verify", help="check order-equivalences between score functions")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--points", type=int, default=1000)
    p.add_argument("--budget", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--eps", type=float, default=1e-12)
    p.add_argument("--pair", help="comma-separated pair of score ids, e.g. l2n,max")
    p.set_defaults(func=_cmd_verify)


def _predicted_consistent(a: ScoreFunction, b: ScoreFunction, k: int) -> bool:
    if a is b or k == 2:
        return True
    return {a, b} == {ScoreFunction.L2_NORM, ScoreFunction.L2_TO_UNIFORM}


def _predicted_classes(k: int) -> set:
    if k == 2:
        return {frozenset(SCORE_IDS)}
    quadratic = frozenset((ScoreFunction.L2_NORM.value, ScoreFunction.L2_TO_UNIFORM.value))
    singles = {
        frozenset((fn.value,))
        for fn in ScoreFunction
        if fn not in (ScoreFunction.L2_NORM, ScoreFunction.L2_TO_UNIFORM)
    }
    return {quadratic} | singles


def _verdict_record(fn_a, fn_b, k, consistent, pairs_checked, eps, witness) -> dict:
    record = {
        "fn_a": fn_a.value,
        "fn_b": fn_b.value,
        "k": k,
        "status": "consistent-on-sample" if consistent else "counterexample",
        "pairs_checked": pairs_checked,
        "eps": eps,
    }
    if witness is not None:
        record["witness"] = {
            "p": [float(x) for x in witness.p],
            "q": [float(x) for x in witness.q],
            "scores_a": [witness.score_a_p, witness.score_a_q],
            "scores_b": [witness.score_b_p, witness.score_b_q],
        }
    return record


def _cmd_verify(args) -> int:
    if args.points > 2000:
        raise AtckitError(
            "--points is capped at 2000 (the pairwise check is quadratic); "
            "raise --budget instead for a deeper counterexample search"
        )
    if args.pair:
        try:
            id_a, id_b = (part.strip() for part in args.pair.split(","))
            fn_a, fn_b = ScoreFunction(id_a), ScoreFunction(id_b)
        except ValueError:
            raise AtckitError(f"--pair must be two of {SCORE_IDS}, got {args.pair!r}") from None
        verdict = verify_on_sample(fn_a, fn_b, args.k, args.points, args.seed, args.eps)
        witness = verdict.witness
        pairs_checked = verdict.pairs_checked
        if verdict.consistent and args.budget > 0 and fn_a is not fn_b:
            witness = search_counterexample(fn_a, fn_b, args.k, args.budget, args.seed, args.eps)
            pairs_checked += args.budget
        consistent = witness is None
        print(json.dumps(_verdict_record(fn_a, fn_b, args.k, consistent, pairs_checked, args.eps, witness)))
        matches = consistent == _predicted_consistent(fn_a, fn_b, args.k)
        print(f"expected-consistency match: {matches}")
        return _EXIT_OK if matches else _EXIT_VERIFY_MISMATCH

    fns = tuple(ScoreFunction)
    report = verify_equivalence_relation(
        fns, args.k, args.points, args.seed, args.eps, search_budget=args.budget
    )
    for (i, j), verdict in sorted(report.verdicts.items()):
        if i == j:
            continue
        print(
            json.dumps(
                _verdict_record(
                    fns[i], fns[j], args.k, verdict.consistent,
                    verdict.pairs_checked, args.eps, verdict.witness,
                )
            )
        )
    classes = {frozenset(fn.value for fn in cls) for cls in report.classes}
    print("classes: " + json.dumps(sorted(sorted(cls) for cls in classes)))
    ok = (
        classes == _predicted_classes(args.k)
        and report.reflexive
        and report.symmetric
        and not report.transitivity_violations
    )
    print(f"expected-classes match: {ok}")
    return _EXIT_OK if ok else _EXIT_VERIFY_MISMATCH


# ---------------------------------------------------------------- generate


def _add_generate_parser(subparsers) -> None:
    p = subparsers.add_parser("generate", help="write a synthetic prediction dump")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--accuracy", type=float, default=0.8)
    p.add_argument("--concentration", type=float, default=8.0)
    p.add_argument("--temperature", type=float, default=1.0)
    p.add_argument("--label-prior", help="comma-separated class prior, e.g. 0.5,0.3,0.2")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.set_defaults(func=_cmd_generate)


def _cmd_generate(args) -> int:
    shift = None
    prior = None
    if args.label_prior:
        try:
            prior = tuple(float(x) for x in args.label_prior.split(","))
        except ValueError:
            raise AtckitError(f"bad --label-prior {args.label_prior!r}") from None
    if args.temperature != 1.0 or prior is not None:
        shift = Shift(temperature=args.temperature, label_prior=prior)
    try:
        spec = GeneratorSpec(
            k=args.k,
            n=args.n,
            target_accuracy=args.accuracy,
            concentration=args.concentration,
            shift=shift,
            seed=args.seed,
        )
        data = generate(spec)
    except ValueError as exc:
        raise AtckitError(str(exc)) from None
    write_dump(data, args.out, fmt=args.format)
    print(f"wrote {args.out} ({args.n} rows, k={args.k})")
    return _EXIT_OK


# -------------------------------------------------------------------- main


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="atckit",
        description="accuracy estimation from softmax dumps via thresholded confidence",
    )
    subparsers = parser.add_subparsers(required=True)
    _add_estimate_parser(subparsers)
    _add_benchmark_parser(subparsers)
    _add_verify_parser(subparsers)
    _add_generate_parser(subparsers)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (AtckitError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
