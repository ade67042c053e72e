"""On-disk formats: model JSON, curve CSV, labeled-data CSV, report schema."""
import csv
import io
import json
import math

import numpy as np

from .errors import LdaRocError
from .lda import LabeledDataset, model_from_params
from .roc import RocCurve

SCHEMA_VERSION = "1"
DERIVED_TOL = 1e-9


class DocumentError(LdaRocError, ValueError):
    """Malformed file content; carries the offending location when known."""


def fmt(x):
    """17 significant digits, enough to round-trip any double."""
    return "%.17g" % x


# ---------------------------------------------------------------- models

def model_to_dict(model):
    return {
        "schema_version": SCHEMA_VERSION,
        "mu0": model.mu0.tolist(),
        "mu1": model.mu1.tolist(),
        "sigma": model.sigma.entries.tolist(),
        "p0": model.p0,
        "derived": {
            "alpha": model.alpha.tolist(),
            "beta": model.beta,
            "scale": model.scale,
            "delta": model.delta,
        },
    }


def dumps_model(model):
    return json.dumps(model_to_dict(model), indent=2) + "\n"


def _close(a, b):
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    return a.shape == b.shape and bool(np.all(np.abs(a - b) <= DERIVED_TOL * np.maximum(1.0, np.abs(b))))


def model_from_dict(doc):
    try:
        if str(doc["schema_version"]) != SCHEMA_VERSION:
            raise DocumentError(f"unsupported schema_version {doc['schema_version']!r}")
        model = model_from_params(doc["mu0"], doc["mu1"], doc["sigma"], doc.get("p0", 0.5))
    except (KeyError, TypeError) as exc:
        raise DocumentError(f"model document is missing or mistypes a field: {exc}") from exc
    derived = doc.get("derived")
    if derived is not None:
        expected = {"alpha": model.alpha, "beta": model.beta, "scale": model.scale, "delta": model.delta}
        for key, value in expected.items():
            if key in derived and not _close(derived[key], value):
                raise DocumentError(f"stored derived.{key} disagrees with the recomputed value")
    return model


def loads_model(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"model file is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise DocumentError("model document must be a JSON object")
    return model_from_dict(doc)


# ---------------------------------------------------------------- curves

CURVE_HEADER = ("theta", "fpr", "tpr")


def dumps_curve(curve):
    lines = [",".join(CURVE_HEADER)]
    for t, f, p in zip(curve.theta, curve.fpr, curve.tpr):
        lines.append(f"{fmt(t)},{fmt(f)},{fmt(p)}")
    return "\n".join(lines) + "\n"


def loads_curve(text):
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(c.strip() for c in rows[0]) != CURVE_HEADER:
        raise DocumentError("curve file must start with the header theta,fpr,tpr")
    values = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != 3:
            raise DocumentError(f"line {lineno}: expected 3 fields, got {len(row)}")
        try:
            values.append([float(c) for c in row])
        except ValueError as exc:
            raise DocumentError(f"line {lineno}: {exc}") from exc
    if len(values) < 2:
        raise DocumentError("curve needs at least two rows")
    arr = np.array(values)
    if np.any(np.isnan(arr)) or np.any(np.diff(arr[:, 1]) < 0):
        raise DocumentError("curve rows must be sorted by fpr")
    if np.any((arr[:, 1:] < 0) | (arr[:, 1:] > 1)):
        raise DocumentError("rates must lie in [0, 1]")
    return RocCurve(arr[:, 0], arr[:, 1], arr[:, 2])


# ---------------------------------------------------------------- data

def read_labeled_csv(text, label_column="label"):
    reader = csv.reader(io.StringIO(text))
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise DocumentError("CSV file is empty") from None
    if label_column not in header:
        raise DocumentError(f"label column {label_column!r} not in header {header}")
    li = header.index(label_column)
    feature_cols = [i for i in range(len(header)) if i != li]
    if not feature_cols:
        raise DocumentError("no feature columns")
    feats, labels = [], []
    for row_no, row in enumerate(reader, start=1):
        if not row:
            continue
        if len(row) != len(header):
            raise DocumentError(f"row {row_no}: expected {len(header)} fields, got {len(row)}")
        try:
            feats.append([float(row[i]) for i in feature_cols])
        except ValueError:
            bad = next(i for i in feature_cols if not _is_float(row[i]))
            raise DocumentError(f"row {row_no}, column {header[bad]!r}: cannot parse {row[bad]!r}") from None
        lab = row[li].strip()
        if not _is_float(lab) or float(lab) not in (0.0, 1.0):
            raise DocumentError(f"row {row_no}: label {lab!r} is not 0 or 1")
        labels.append(int(float(lab)))
    if not feats:
        raise DocumentError("CSV file has no data rows")
    x = np.array(feats)
    if not np.all(np.isfinite(x)):
        raise DocumentError("features must be finite")
    return LabeledDataset(x, np.array(labels, dtype=np.int8)), [header[i] for i in feature_cols]


def _is_float(s):
    try:
        float(s)
    except ValueError:
        return False
    return True


def dumps_labeled_csv(data, names=None):
    names = names or [f"x{i}" for i in range(data.dim)]
    out = [",".join(list(names) + ["label"])]
    for row, lab in zip(data.features, data.labels):
        out.append(",".join(fmt(v) for v in row) + f",{int(lab)}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- reports

_PROB = {"type": "number", "minimum": 0, "maximum": 1}
_CELLS = {
    "type": "object",
    "properties": {k: _PROB for k in ("tn", "fp", "fn", "tp")},
    "required": ["tn", "fp", "fn", "tp"],
    "additionalProperties": False,
}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "ldaroc report",
    "type": "object",
    "required": ["schema_version", "model", "theta", "confusion", "rates", "youden", "auc", "monte_carlo"],
    "additionalProperties": False,
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "model": {
            "type": "object",
            "required": ["dim", "p0", "scale", "delta", "degenerate"],
            "properties": {
                "dim": {"type": "integer", "minimum": 1},
                "p0": _PROB,
                "scale": {"type": "number", "minimum": 0},
                "delta": {"type": "number", "minimum": 0},
                "degenerate": {"type": "boolean"},
            },
        },
        "theta": {"type": "number"},
        "confusion": _CELLS,
        "rates": {
            "type": ["object", "null"],
            "required": ["fpr", "tpr"],
            "properties": {"fpr": _PROB, "tpr": _PROB},
        },
        "youden": {
            "type": "object",
            "required": ["theta_star", "fpr", "tpr", "j_max", "degenerate"],
            "properties": {
                "theta_star": {"type": "number"},
                "fpr": _PROB,
                "tpr": _PROB,
                "j_max": _PROB,
                "degenerate": {"type": "boolean"},
            },
        },
        "auc": _PROB,
        "monte_carlo": {
            "oneOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "required": ["samples", "seed", "estimated", "max_abs_gap"],
                    "properties": {
                        "samples": {"type": "integer", "minimum": 1},
                        "seed": {"type": "integer"},
                        "estimated": _CELLS,
                        "max_abs_gap": {"type": "number", "minimum": 0},
                    },
                },
            ]
        },
    },
}


def finite_or_none(x):
    return x if math.isfinite(x) else None
