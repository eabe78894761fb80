"""Prediction-dump file formats.

The canonical dump is a CSV with header ``p0,...,p{k-1}`` and an
optional trailing ``label`` column; a JSON alternative mirrors it as
``{"probs": [[...], ...], "labels": [...] | null}``. Probabilities are
serialized at 12 significant digits, which keeps round-trip error per
component below 1e-9, comfortably inside the ingestion tolerance.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .errors import NotOnSimplexError, ParseError
from .simplex import SUM_TOLERANCE, PredictionSet

#: Sum tolerance applied when renormalization is disabled.
STRICT_SUM_TOLERANCE = 1e-9


def _infer_format(path, fmt: str | None) -> str:
    if fmt is not None:
        return fmt
    return "json" if Path(path).suffix.lower() == ".json" else "csv"


def write_dump(data: PredictionSet, path, fmt: str | None = None) -> None:
    """Serialize a prediction set to ``path`` as CSV (default) or JSON."""
    fmt = _infer_format(path, fmt)
    if fmt == "csv":
        _write_csv(data, path)
    elif fmt == "json":
        _write_json(data, path)
    else:
        raise ValueError(f"unknown dump format {fmt!r}")


def _write_csv(data: PredictionSet, path) -> None:
    header = [f"p{i}" for i in range(data.k)]
    if data.labels is not None:
        header.append("label")
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for i in range(len(data)):
            row = [format(x, ".12g") for x in data.probs[i]]
            if data.labels is not None:
                row.append(int(data.labels[i]))
            writer.writerow(row)


def _write_json(data: PredictionSet, path) -> None:
    payload = {
        "probs": [[float(x) for x in row] for row in data.probs],
        "labels": None if data.labels is None else [int(x) for x in data.labels],
    }
    with open(path, "w") as fh:
        json.dump(payload, fh)
        fh.write("\n")


def load_dump(path, renormalize: bool = True, fmt: str | None = None) -> PredictionSet:
    """Parse and validate a prediction dump.

    With ``renormalize`` (the default) row sums may deviate from 1 by up
    to 1e-6 before being repaired; without it any row whose sum is off
    by more than 1e-9 is a hard error. Parse failures report the
    offending file line.
    """
    fmt = _infer_format(path, fmt)
    if fmt == "csv":
        probs, labels = _read_csv(path)
    elif fmt == "json":
        probs, labels = _read_json(path)
    else:
        raise ValueError(f"unknown dump format {fmt!r}")

    tolerance = SUM_TOLERANCE if renormalize else STRICT_SUM_TOLERANCE
    _check_rows(probs, tolerance, first_line=2 if fmt == "csv" else 1)
    return PredictionSet(probs, labels, tolerance=tolerance)


def _check_rows(probs: np.ndarray, tolerance: float, first_line: int) -> None:
    # row-by-row so diagnostics can name the offending file line
    sums = probs.sum(axis=1)
    bad = np.abs(sums - 1.0) > tolerance
    if np.any(bad):
        i = int(np.argmax(bad))
        raise NotOnSimplexError(
            f"line {first_line + i}: components sum to {sums[i]:.9g}, "
            f"further than {tolerance:g} from 1"
        )
    neg = np.any(probs < -tolerance, axis=1)
    if np.any(neg):
        i = int(np.argmax(neg))
        raise NotOnSimplexError(f"line {first_line + i}: negative component")


def _read_csv(path):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError("empty file") from None
        k, has_label = _parse_header([h.strip() for h in header])
        probs, labels = [], []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != k + has_label:
                raise ParseError(
                    f"line {lineno}: expected {k + has_label} fields, got {len(row)}"
                )
            try:
                probs.append([float(x) for x in row[:k]])
            except ValueError as exc:
                raise ParseError(f"line {lineno}: {exc}") from None
            if has_label:
                try:
                    label = int(row[k])
                except ValueError:
                    raise ParseError(f"line {lineno}: label {row[k]!r} is not an integer") from None
                if not 0 <= label < k:
                    raise ParseError(f"line {lineno}: label {label} outside [0, {k})")
                labels.append(label)
    if not probs:
        raise ParseError("no data rows")
    return np.asarray(probs, dtype=np.float64), (np.asarray(labels) if has_label else None)


def _parse_header(header) -> tuple[int, bool]:
    has_label = bool(header) and header[-1] == "label"
    prob_cols = header[:-1] if has_label else header
    expected = [f"p{i}" for i in range(len(prob_cols))]
    if len(prob_cols) < 2 or prob_cols != expected:
        raise ParseError(
            f"header must be p0..p{{k-1}}[,label] with k >= 2, got {','.join(header)}"
        )
    return len(prob_cols), has_label


def _read_json(path):
    with open(path) as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(payload, dict) or "probs" not in payload:
        raise ParseError('JSON dump must be an object with a "probs" key')
    probs = payload["probs"]
    if not isinstance(probs, list) or not probs:
        raise ParseError('"probs" must be a non-empty list of rows')
    width = len(probs[0]) if isinstance(probs[0], list) else -1
    for i, row in enumerate(probs):
        if not isinstance(row, list) or len(row) != width:
            raise ParseError(f"row {i}: ragged or non-list probability row")
    labels = payload.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or len(labels) != len(probs):
            raise ParseError('"labels" must be null or match "probs" in length')
        for i, label in enumerate(labels):
            if not isinstance(label, int) or isinstance(label, bool):
                raise ParseError(f"row {i}: label {label!r} is not an integer")
        labels = np.asarray(labels)
    try:
        matrix = np.asarray(probs, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"non-numeric probability value: {exc}") from None
    return matrix, labels
