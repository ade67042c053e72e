"""Dense symmetric positive-definite matrices.

A :class:`SymMatrix` is symmetrized once on construction; everything
downstream may assume exact symmetry. Factorizations are cached on the
instance because models reuse the same covariance for every query.
"""
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import DimensionError, NotPositiveDefiniteError

ASYMMETRY_WARN = 1e-8
PD_RELATIVE_TOL = 1e-12
JACOBI_TOL = 1e-15
JACOBI_MAX_SWEEPS = 100


@dataclass(frozen=True)
class SpectralDecomposition:
    q: np.ndarray
    lam: np.ndarray

    def reconstruct(self):
        return (self.q * self.lam) @ self.q.T


@dataclass(frozen=True)
class CholeskyFactor:
    l: np.ndarray  # noqa: E741


class SymMatrix:
    """Symmetric matrix with lazily cached Cholesky and spectral factors."""

    __slots__ = ("entries", "_chol", "_spectral")

    def __init__(self, entries):
        a = np.array(entries, dtype=np.float64)
        if a.ndim == 0:
            a = a.reshape(1, 1)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
            raise DimensionError(f"expected a non-empty square matrix, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise ValueError("matrix entries must be finite")
        asym = float(np.max(np.abs(a - a.T)))
        if asym > ASYMMETRY_WARN:
            warnings.warn(f"matrix asymmetry {asym:.3g} removed by averaging", stacklevel=2)
        a = 0.5 * (a + a.T)
        a.setflags(write=False)
        self.entries = a
        self._chol = None
        self._spectral = None

    @property
    def dim(self):
        return self.entries.shape[0]

    @property
    def pd_tolerance(self):
        return PD_RELATIVE_TOL * float(np.max(np.diag(self.entries)))

    def __array__(self, dtype=None, copy=None):
        return np.array(self.entries, dtype=dtype)

    def __repr__(self):
        return f"SymMatrix({self.entries.tolist()!r})"


def as_symmatrix(m):
    return m if isinstance(m, SymMatrix) else SymMatrix(m)


def spectral(m):
    """Eigendecomposition by cyclic Jacobi rotations.

    Eigenvalues come back in non-increasing order; ties keep input order.
    """
    m = as_symmatrix(m)
    if m._spectral is not None:
        return m._spectral
    w, v, sweeps = _kernels.jacobi_eigh(m.entries, JACOBI_TOL, JACOBI_MAX_SWEEPS)
    if sweeps < 0:
        raise RuntimeError("Jacobi iteration did not converge")
    order = np.argsort(-w, kind="stable")
    w, v = w[order], v[:, order]
    tol = m.pd_tolerance
    if not np.all(w > tol) or tol <= 0:
        raise NotPositiveDefiniteError(
            f"smallest eigenvalue {w.min():.3g} is not above tolerance {tol:.3g}")
    w.setflags(write=False)
    v.setflags(write=False)
    m._spectral = SpectralDecomposition(v, w)
    return m._spectral


def cholesky(m):
    m = as_symmatrix(m)
    if m._chol is not None:
        return m._chol
    tol = m.pd_tolerance
    if tol <= 0:
        raise NotPositiveDefiniteError("largest diagonal entry is not positive")
    low, failed = _kernels.cholesky_lower(m.entries, tol)
    if failed >= 0:
        raise NotPositiveDefiniteError(f"Cholesky pivot {failed} is not above tolerance {tol:.3g}")
    low.setflags(write=False)
    m._chol = CholeskyFactor(low)
    return m._chol


def _as_vector(m, v):
    v = np.asarray(v, dtype=np.float64)
    if v.ndim == 0:
        v = v.reshape(1)
    if v.shape != (m.dim,):
        raise DimensionError(f"vector of shape {v.shape} does not match dimension {m.dim}")
    return v


def _forward(low, b):
    y = np.empty_like(b)
    for i in range(b.shape[0]):
        y[i] = (b[i] - low[i, :i] @ y[:i]) / low[i, i]
    return y


def solve_spd(m, v):
    """Solve ``m u = v`` through the Cholesky factor."""
    m = as_symmatrix(m)
    v = _as_vector(m, v)
    low = cholesky(m).l
    y = _forward(low, v)
    u = np.empty_like(y)
    for i in range(y.shape[0] - 1, -1, -1):
        u[i] = (y[i] - low[i + 1:, i] @ u[i + 1:]) / low[i, i]
    return u


def quad_form(m_inverse_of, v):
    """``v^T M^{-1} v``, computed as the squared norm of ``L^{-1} v``."""
    m = as_symmatrix(m_inverse_of)
    v = _as_vector(m, v)
    y = _forward(cholesky(m).l, v)
    return float(y @ y)


def log_det(m):
    low = cholesky(as_symmatrix(m)).l
    return 2.0 * float(np.sum(np.log(np.diag(low))))
