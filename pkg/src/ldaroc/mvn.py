"""Multivariate normal density, half-space mass and seeded sampling."""
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DegenerateHalfSpaceError, DimensionError
from .gaussnum import std_normal_cdf
from .symmat import SymMatrix, as_symmatrix, cholesky, log_det, quad_form, spectral

# Stream identifiers for the counter-based generator.
STREAM_SAMPLE = 0
STREAM_CLASS = 1
STREAM_FEATURES = 2


@dataclass(frozen=True, eq=False)
class MvnDistribution:
    mean: np.ndarray
    cov: SymMatrix

    def __init__(self, mean, cov):
        mean = np.array(mean, dtype=np.float64).reshape(-1)
        cov = as_symmatrix(cov)
        if mean.shape[0] != cov.dim:
            raise DimensionError(f"mean has length {mean.shape[0]}, covariance is {cov.dim}x{cov.dim}")
        cholesky(cov)  # PD check
        mean.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    @property
    def dim(self):
        return self.mean.shape[0]


@dataclass(frozen=True, eq=False)
class HalfSpace:
    """The open region ``normal . x + offset < 0``."""
    normal: np.ndarray
    offset: float

    def __init__(self, normal, offset):
        normal = np.array(normal, dtype=np.float64).reshape(-1)
        if not np.any(normal != 0.0):
            raise DegenerateHalfSpaceError("half-space normal must be nonzero")
        normal.setflags(write=False)
        object.__setattr__(self, "normal", normal)
        object.__setattr__(self, "offset", float(offset))

    def complement(self):
        return HalfSpace(-self.normal, -self.offset)


def _check_point(d, x):
    x = np.asarray(x, dtype=np.float64).reshape(-1)
    if x.shape[0] != d.dim:
        raise DimensionError(f"point of length {x.shape[0]} for a {d.dim}-dimensional distribution")
    return x


def log_density(d, x):
    x = _check_point(d, x)
    r = x - d.mean
    return -0.5 * (d.dim * math.log(2.0 * math.pi) + log_det(d.cov) + quad_form(d.cov, r))


def density(d, x):
    return math.exp(log_density(d, x))


def projected_scale(cov, normal, use_spectral=False):
    """Standard deviation of ``normal . X`` for ``X ~ N(., cov)``.

    The default is ``sqrt(a^T S a)``; ``use_spectral`` evaluates the same
    quantity as ``||sqrt(Lambda) Q^T a||`` from the eigendecomposition.
    """
    cov = as_symmatrix(cov)
    a = np.asarray(normal, dtype=np.float64)
    if use_spectral:
        sd = spectral(cov)
        return float(np.linalg.norm(np.sqrt(sd.lam) * (sd.q.T @ a)))
    return math.sqrt(float(a @ cov.entries @ a))


def halfspace_mass(d, h, use_spectral=False):
    """Probability that ``X ~ d`` lands in ``h``.

    Strict and non-strict inequalities give the same value.
    """
    if h.normal.shape[0] != d.dim:
        raise DimensionError(f"half-space of dimension {h.normal.shape[0]} for a {d.dim}-dimensional distribution")
    s = projected_scale(d.cov, h.normal, use_spectral)
    return std_normal_cdf(-(float(h.normal @ d.mean) + h.offset) / s)


def standard_normals(seed, count, stream=STREAM_SAMPLE, start=0):
    return _kernels.normals(_kernels.stream_key(int(seed), stream), int(start), int(count))


def sample(d, count, seed):
    """``count`` draws from ``d`` as a ``(count, dim)`` array.

    Output row ``i`` depends only on ``(seed, i)``, so shorter requests are
    prefixes of longer ones.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    z = standard_normals(seed, count * d.dim).reshape(count, d.dim)
    return d.mean + z @ cholesky(d.cov).l.T


def mc_halfspace_mass(d, h, count, seed):
    """Monte Carlo estimate of :func:`halfspace_mass`.

    Draws exactly on the boundary hyperplane are counted inside ``h``, the
    negative side, matching the classification rule ``score > theta``.
    """
    key = _kernels.stream_key(int(seed), STREAM_SAMPLE)
    hits = _kernels.count_below(d.mean, cholesky(d.cov).l, h.normal, h.offset, int(count), key)
    return hits / count
