"""LDA model: parameters, the affine discriminant, and fitting from data."""
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DatasetError, DimensionError, DomainError, NotPositiveDefiniteError
from .mvn import MvnDistribution, log_density, projected_scale
from .symmat import SymMatrix, as_symmatrix, quad_form, solve_spd


@dataclass(frozen=True, eq=False)
class LdaModel:
    """Two Gaussian classes sharing one covariance.

    ``alpha``/``beta`` define the discriminant ``score(x) = alpha . x + beta``.
    ``scale`` is the standard deviation of the score within either class and
    ``delta`` the standardized separation of the class means; both equal the
    Mahalanobis distance between the means.
    """
    mu0: np.ndarray
    mu1: np.ndarray
    sigma: SymMatrix
    p0: float
    alpha: np.ndarray
    beta: float
    scale: float
    delta: float

    @property
    def p1(self):
        return 1.0 - self.p0

    @property
    def dim(self):
        return self.mu0.shape[0]

    @property
    def degenerate(self):
        return self.scale == 0.0

    @property
    def class0(self):
        return MvnDistribution(self.mu0, self.sigma)

    @property
    def class1(self):
        return MvnDistribution(self.mu1, self.sigma)

    def with_prior(self, p0):
        return model_from_params(self.mu0, self.mu1, self.sigma, p0)


def _vector(v, name):
    v = np.array(v, dtype=np.float64)
    if v.ndim == 0:
        v = v.reshape(1)
    if v.ndim != 1:
        raise DimensionError(f"{name} must be a vector")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} must be finite")
    return v


def model_from_params(mu0, mu1, sigma, p0=0.5):
    mu0 = _vector(mu0, "mu0")
    mu1 = _vector(mu1, "mu1")
    sigma = as_symmatrix(sigma)
    if not (mu0.shape == mu1.shape == (sigma.dim,)):
        raise DimensionError(
            f"means of length {mu0.shape[0]} and {mu1.shape[0]} with a {sigma.dim}x{sigma.dim} covariance")
    p0 = float(p0)
    if not (0.0 < p0 < 1.0):
        raise DomainError(f"prior p0 must lie in (0, 1), got {p0!r}")

    alpha = solve_spd(sigma, mu1 - mu0)
    beta = 0.5 * (quad_form(sigma, mu0) - quad_form(sigma, mu1))
    scale = projected_scale(sigma, alpha)
    delta = float(alpha @ (mu1 - mu0)) / scale if scale > 0.0 else 0.0
    if scale == 0.0:
        warnings.warn("class means coincide; the model is degenerate", stacklevel=2)
    for a in (mu0, mu1, alpha):
        a.setflags(write=False)
    return LdaModel(mu0, mu1, sigma, p0, alpha, beta, scale, delta)


@dataclass(frozen=True, eq=False)
class LabeledDataset:
    features: np.ndarray
    labels: np.ndarray

    def __init__(self, features, labels):
        x = np.array(features, dtype=np.float64)
        if x.ndim == 1:
            x = x.reshape(-1, 1)
        y = np.asarray(labels)
        if x.ndim != 2 or y.ndim != 1 or x.shape[0] != y.shape[0]:
            raise DimensionError(f"features {x.shape} and labels {y.shape} do not line up")
        if not np.all(np.isfinite(x)):
            raise ValueError("features must be finite")
        if not np.all((y == 0) | (y == 1)):
            raise DomainError("labels must be 0 or 1")
        object.__setattr__(self, "features", x)
        object.__setattr__(self, "labels", y.astype(np.int8))

    @property
    def size(self):
        return self.features.shape[0]

    @property
    def dim(self):
        return self.features.shape[1]

    def class_counts(self):
        n1 = int(np.count_nonzero(self.labels))
        return self.size - n1, n1


def fit(data):
    """Plug-in model: class means, pooled covariance (denominator m - 2),
    and the empirical class-0 fraction as prior."""
    m, n = data.features.shape
    n0, n1 = data.class_counts()
    if n0 < 2 or n1 < 2:
        raise DatasetError(f"each class needs at least 2 rows, got {n0} and {n1}")
    if m < n + 2:
        raise DatasetError(f"{m} rows cannot determine a {n}x{n} pooled covariance")
    x0 = data.features[data.labels == 0]
    x1 = data.features[data.labels == 1]
    mu0 = x0.mean(axis=0)
    mu1 = x1.mean(axis=0)
    r0 = x0 - mu0
    r1 = x1 - mu1
    pooled = (r0.T @ r0 + r1.T @ r1) / (m - 2)
    try:
        return model_from_params(mu0, mu1, SymMatrix(pooled), n0 / m)
    except NotPositiveDefiniteError as exc:
        raise NotPositiveDefiniteError(f"pooled covariance is not positive definite: {exc}") from exc


def score(model, x):
    """The discriminant ``alpha . x + beta``; rows of a 2-D ``x`` are scored
    independently."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1:] != (model.dim,) and not (model.dim == 1 and x.ndim == 0):
        raise DimensionError(f"input of shape {x.shape} for a {model.dim}-dimensional model")
    if x.ndim == 0:
        x = x.reshape(1)
    s = x @ model.alpha + model.beta
    return float(s) if np.ndim(s) == 0 else s


def log_density_ratio(model, x):
    return log_density(model.class1, x) - log_density(model.class0, x)


def mahalanobis(model):
    return math.sqrt(quad_form(model.sigma, model.mu1 - model.mu0))
