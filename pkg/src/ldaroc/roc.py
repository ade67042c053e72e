"""Closed-form operating characteristics of an LDA model.

The classifier at threshold ``theta`` predicts the positive class when
``score(x) > theta``. Within class ``i`` the score is normal with mean
``alpha . mu_i + beta`` and standard deviation ``model.scale``, which is all
the formulas below use.
"""
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DegenerateModelError, DomainError
from .gaussnum import (
    default_rule,
    integrate_gauss_weighted,
    std_normal_cdf,
    std_normal_pdf,
    std_normal_quantile,
)
from .mvn import HalfSpace, halfspace_mass

SAMPLE_RADIUS = 8.0


@dataclass(frozen=True)
class ConfusionDistribution:
    theta: float
    p_tn: float
    p_fp: float
    p_fn: float
    p_tp: float

    def as_dict(self):
        return {"tn": self.p_tn, "fp": self.p_fp, "fn": self.p_fn, "tp": self.p_tp}


class RocPoint(NamedTuple):
    theta: float
    fpr: float
    tpr: float


@dataclass(frozen=True, eq=False)
class RocCurve:
    """Column-oriented ROC curve sorted by increasing ``fpr``.

    The first row is the ``theta = +inf`` limit (0, 0) and the last the
    ``theta = -inf`` limit (1, 1).
    """
    theta: np.ndarray
    fpr: np.ndarray
    tpr: np.ndarray

    def __len__(self):
        return self.fpr.shape[0]

    @property
    def points(self):
        return [RocPoint(float(t), float(f), float(p))
                for t, f, p in zip(self.theta, self.fpr, self.tpr)]


@dataclass(frozen=True)
class YoudenResult:
    theta_star: float
    fpr_at_star: float
    tpr_at_star: float
    j_max: float
    degenerate: bool


def _check_theta(theta):
    theta = float(theta)
    if not math.isfinite(theta):
        raise DomainError("threshold must be finite")
    return theta


def _require_scale(model):
    if model.degenerate:
        raise DegenerateModelError("rates are undefined when the class means coincide")


def _check_open_unit(p, name):
    p = float(p)
    if not (0.0 < p < 1.0):
        raise DomainError(f"{name} must lie in (0, 1), got {p!r}")
    return p


def _class_means(model):
    """Mean score of class 0 and class 1."""
    return float(model.alpha @ model.mu0) + model.beta, float(model.alpha @ model.mu1) + model.beta


def confusion_at(model, theta):
    """Joint law of (true class, prediction) at ``theta``.

    With a degenerate model every point scores ``beta``; the half-space
    masses are then 0 or 1 and the cells reduce to a split of the priors.
    """
    theta = _check_theta(theta)
    cells = []
    for prior, dist in ((model.p0, model.class0), (model.p1, model.class1)):
        if model.degenerate:
            below = 1.0 if model.beta <= theta else 0.0
            above = 1.0 - below
        else:
            negative = HalfSpace(model.alpha, model.beta - theta)
            below = halfspace_mass(dist, negative)
            above = halfspace_mass(dist, negative.complement())
        cells += [prior * below, prior * above]
    return ConfusionDistribution(theta, *cells)


def fpr_at(model, theta):
    _require_scale(model)
    m0, _ = _class_means(model)
    return std_normal_cdf((m0 - _check_theta(theta)) / model.scale)


def tpr_at(model, theta):
    _require_scale(model)
    _, m1 = _class_means(model)
    return std_normal_cdf((m1 - _check_theta(theta)) / model.scale)


def rates_at(model, thetas):
    """Vectorized (fpr, tpr) over an array of thresholds."""
    _require_scale(model)
    m0, m1 = _class_means(model)
    t = np.asarray(thetas, dtype=np.float64)
    return std_normal_cdf((m0 - t) / model.scale), std_normal_cdf((m1 - t) / model.scale)


def _resolve_delta(model, delta):
    if delta is not None:
        return float(delta)
    _require_scale(model)
    return model.delta


def roc_tpr_from_fpr(model, fpr, delta=None):
    """TPR as a function of FPR.

    ``delta`` overrides the model's separation; pass ``model=None`` with an
    explicit ``delta`` to evaluate the bare curve family.
    """
    d = _resolve_delta(model, delta)
    fpr = _check_open_unit(fpr, "fpr")
    # quantile(1 - fpr) == -quantile(fpr), without the cancellation in 1 - fpr.
    q = -std_normal_quantile(fpr)
    return std_normal_cdf(d - q)


def roc_derivatives(model, fpr, delta=None):
    """Slope and curvature of the ROC curve at ``fpr``."""
    d = _resolve_delta(model, delta)
    fpr = _check_open_unit(fpr, "fpr")
    q = -std_normal_quantile(fpr)
    num = std_normal_pdf(q - d)
    den = std_normal_pdf(q)
    slope = num / den
    curvature = -num / (den * den) * d
    return slope, curvature


def sample_roc(model, count, radius=SAMPLE_RADIUS):
    """ROC curve at fpr = Phi(u) for ``count`` equally spaced u in [-radius, radius].

    Spacing is uniform in the quantile domain so points cluster where the
    curve bends. Near fpr = 1 the grid can be finer than double resolution,
    in which case neighbouring fpr values coincide.
    """
    _require_scale(model)
    if count < 2:
        raise ValueError("count must be at least 2")
    u = np.linspace(-radius, radius, int(count))
    # fpr = Phi((m0 - theta) / scale) equals Phi(u) at theta = m0 - scale * u.
    m0, _ = _class_means(model)
    theta = m0 - model.scale * u
    fpr = std_normal_cdf(u)
    tpr = std_normal_cdf(u + model.delta)
    return RocCurve(
        np.concatenate(([math.inf], theta, [-math.inf])),
        np.concatenate(([0.0], fpr, [1.0])),
        np.concatenate(([0.0], tpr, [1.0])),
    )


def auc(model, rule=None):
    """Area under the ROC curve via Gauss-Legendre quadrature.

    Integrates ``1 - Phi(v - delta)`` against the standard normal density.
    """
    if model.degenerate:
        return 0.5
    d = model.delta
    return 1.0 - integrate_gauss_weighted(lambda v: std_normal_cdf(v - d), rule or default_rule())


def youden_index(model, theta):
    fpr, tpr = rates_at(model, theta)
    return tpr - fpr


def youden(model):
    """The J-maximizing operating point, which is always theta = 0."""
    if model.degenerate:
        # Every point scores beta, so both rates jump together at theta = beta.
        rate = 1.0 if model.beta > 0.0 else 0.0
        return YoudenResult(0.0, rate, rate, 0.0, True)
    m0, m1 = _class_means(model)
    fpr = 1.0 - std_normal_cdf(-m0 / model.scale)
    tpr = 1.0 - std_normal_cdf(-m1 / model.scale)
    j_max = std_normal_cdf(-m0 / model.scale) - std_normal_cdf(-m1 / model.scale)
    return YoudenResult(0.0, fpr, tpr, j_max, False)


def threshold_grid(lo, hi, count):
    """Finite stand-in for the real threshold line."""
    if not lo < hi or count < 2:
        raise ValueError("need lo < hi and count >= 2")
    return np.linspace(lo, hi, int(count))
