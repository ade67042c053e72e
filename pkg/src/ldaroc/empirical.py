"""Sample-based counterparts of the analytic quantities.

These are verification oracles: empirical ROC curves from scored data and
Monte Carlo estimates of the confusion distribution.
"""
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DatasetError, DimensionError
from .lda import LabeledDataset, score
from .mvn import STREAM_CLASS, STREAM_FEATURES, standard_normals
from .roc import RocCurve, confusion_at
from .symmat import cholesky


@dataclass(frozen=True, eq=False)
class ScoredSample:
    scores: np.ndarray
    labels: np.ndarray

    def __post_init__(self):
        if self.scores.shape != self.labels.shape or self.scores.ndim != 1:
            raise DimensionError("scores and labels must be 1-D arrays of equal length")


@dataclass(frozen=True)
class VerificationReport:
    theta: float
    analytic: object
    estimated: dict
    max_abs_gap: float
    sample_count: int
    seed: int


def empirical_roc(s):
    """Step ROC curve of a scored sample.

    Each distinct score ``v`` is a threshold, predicting positive for
    ``score > v``; tied scores move the curve in a single step.
    """
    scores = np.asarray(s.scores, dtype=np.float64)
    positive = np.asarray(s.labels) == 1
    n1 = int(np.count_nonzero(positive))
    n0 = positive.shape[0] - n1
    if n0 == 0 or n1 == 0:
        raise DatasetError("empirical ROC needs both classes")
    order = np.argsort(-scores, kind="stable")
    sorted_scores = scores[order]
    tp = np.cumsum(positive[order])
    fp = np.arange(1, positive.shape[0] + 1) - tp
    # Last index of each tie group in descending order.
    ends = np.flatnonzero(np.append(sorted_scores[1:] != sorted_scores[:-1], True))
    # After a group, the threshold becomes the next smaller distinct score.
    next_theta = np.append(sorted_scores[ends[:-1] + 1], -np.inf)
    return RocCurve(
        np.concatenate(([np.inf], next_theta)),
        np.concatenate(([0.0], fp[ends] / n0)),
        np.concatenate(([0.0], tp[ends] / n1)),
    )


def trapezoid_auc(curve):
    f = np.asarray(curve.fpr, dtype=np.float64)
    t = np.asarray(curve.tpr, dtype=np.float64)
    if f.shape[0] < 2:
        raise ValueError("need at least two points")
    return float(np.sum(np.diff(f) * (t[1:] + t[:-1])) / 2.0)


def score_dataset(model, data):
    if data.dim != model.dim:
        raise DimensionError(f"data has {data.dim} features, model expects {model.dim}")
    return ScoredSample(score(model, data.features), data.labels.copy())


def simulate_dataset(model, count, seed):
    """Labeled draws from the model's two-class mixture.

    Row ``i`` uses class uniform ``i`` and normals ``i*n .. i*n+n-1`` of the
    seed's streams, the same draws :func:`mc_confusion` consumes.
    """
    n = model.dim
    labels = _kernels.uniforms(_kernels.stream_key(int(seed), STREAM_CLASS), 0, int(count)) >= model.p0
    z = standard_normals(seed, count * n, stream=STREAM_FEATURES).reshape(count, n)
    means = np.where(labels[:, None], model.mu1, model.mu0)
    x = means + z @ cholesky(model.sigma).l.T
    return LabeledDataset(x, labels.astype(np.int8))


def mc_confusion(model, theta, count, seed):
    if count < 1:
        raise ValueError("count must be at least 1")
    seed = int(seed)
    tally = _kernels.confusion_tally(
        model.mu0, model.mu1, cholesky(model.sigma).l, model.alpha, model.beta,
        model.p0, float(theta), int(count),
        _kernels.stream_key(seed, STREAM_CLASS), _kernels.stream_key(seed, STREAM_FEATURES),
    )
    freq = tally / count
    estimated = {"tn": float(freq[0]), "fp": float(freq[1]), "fn": float(freq[2]), "tp": float(freq[3])}
    analytic = confusion_at(model, theta)
    exact = analytic.as_dict()
    gap = max(abs(exact[k] - estimated[k]) for k in exact)
    return VerificationReport(float(theta), analytic, estimated, gap, int(count), seed)


def mc_auc(model, count, seed):
    """AUC of the empirical ROC of ``count`` simulated, scored points."""
    return trapezoid_auc(empirical_roc(score_dataset(model, simulate_dataset(model, count, seed))))
