"""Hot numeric kernels.

Every kernel exists twice: a loop-oriented version compiled with numba
(``nb_*``) and a vectorized numpy version (``np_*``). The public names at the
bottom of the module are bound to one family according to
:data:`ldaroc._accel.USE_NUMBA`. Both families are importable so the benchmark
and the backend-agreement tests can call them side by side.

Random numbers come from a counter-based generator: the 64-bit word at
position ``c`` of a stream is ``mix(key + (c + 1) * GOLDEN)`` where ``mix`` is
the SplitMix64 finalizer. Normal variates use Box-Muller on consecutive
pairs of words, so normal ``j`` depends only on ``(key, j)``.
"""
import math

import numpy as np

from ._accel import USE_NUMBA, njit

GOLDEN = 0x9E3779B97F4A7C15
_MASK64 = (1 << 64) - 1

_G = np.uint64(GOLDEN)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_ONE = np.uint64(1)
_TWO_M53 = 2.0 ** -53
_TWO_PI = 2.0 * math.pi
_INV_SQRT2 = 0.7071067811865476


def mix_int(z):
    """SplitMix64 finalizer on a Python int (used for key derivation)."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def stream_key(seed, stream):
    """Derive the 64-bit key of one named stream under ``seed``."""
    return np.uint64(mix_int((seed & _MASK64) ^ mix_int((stream + 1) * GOLDEN)))


# --------------------------------------------------------------------------
# numba family
# --------------------------------------------------------------------------

@njit(cache=True)
def _nb_bits(key, c):
    z = key + (np.uint64(c) + _ONE) * _G
    z = (z ^ (z >> _S30)) * _M1
    z = (z ^ (z >> _S27)) * _M2
    return z ^ (z >> _S31)


@njit(cache=True)
def _nb_uniform(key, c):
    return float(_nb_bits(key, c) >> _S11) * _TWO_M53


@njit(cache=True)
def _nb_normal(key, j):
    p = j // 2
    u1 = (float(_nb_bits(key, 2 * p) >> _S11) + 1.0) * _TWO_M53
    u2 = float(_nb_bits(key, 2 * p + 1) >> _S11) * _TWO_M53
    r = math.sqrt(-2.0 * math.log(u1))
    if j % 2 == 0:
        return r * math.cos(_TWO_PI * u2)
    return r * math.sin(_TWO_PI * u2)


@njit(cache=True)
def nb_uniforms(key, start, count):
    out = np.empty(count)
    for i in range(count):
        out[i] = _nb_uniform(key, start + i)
    return out


@njit(cache=True)
def nb_normals(key, start, count):
    out = np.empty(count)
    for i in range(count):
        out[i] = _nb_normal(key, start + i)
    return out


@njit(cache=True)
def nb_normal_cdf(x):
    out = np.empty(x.shape[0])
    for i in range(x.shape[0]):
        out[i] = 0.5 * math.erfc(-x[i] * _INV_SQRT2)
    return out


@njit(cache=True)
def nb_jacobi_eigh(a, tol, max_sweeps):
    n = a.shape[0]
    a = a.copy()
    v = np.eye(n)
    total = 0.0
    for i in range(n):
        for j in range(n):
            total += a[i, j] * a[i, j]
    for sweep in range(max_sweeps):
        off = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                off += a[i, j] * a[i, j]
        if off <= tol * tol * total:
            return np.diag(a).copy(), v, sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(tau) > 1e150:
                    t = 0.5 / tau
                else:
                    t = 1.0 / (abs(tau) + math.sqrt(1.0 + tau * tau))
                    if tau < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
    return np.diag(a).copy(), v, -1


@njit(cache=True)
def nb_cholesky(a, pivot_tol):
    n = a.shape[0]
    low = np.zeros((n, n))
    for j in range(n):
        d = a[j, j]
        for k in range(j):
            d -= low[j, k] * low[j, k]
        if not d > pivot_tol:
            return low, j
        ljj = math.sqrt(d)
        low[j, j] = ljj
        for i in range(j + 1, n):
            s = a[i, j]
            for k in range(j):
                s -= low[i, k] * low[j, k]
            low[i, j] = s / ljj
    return low, -1


@njit(cache=True)
def _nb_draw_score(mean, chol, alpha, key, base, z, x):
    n = mean.shape[0]
    for j in range(n):
        z[j] = _nb_normal(key, base + j)
    score = 0.0
    for r in range(n):
        xr = mean[r]
        for k in range(r + 1):
            xr += chol[r, k] * z[k]
        x[r] = xr
        score += alpha[r] * xr
    return score


@njit(cache=True)
def nb_count_below(mean, chol, alpha, beta, count, key):
    n = mean.shape[0]
    z = np.empty(n)
    x = np.empty(n)
    hits = 0
    for i in range(count):
        s = _nb_draw_score(mean, chol, alpha, key, i * n, z, x) + beta
        if s <= 0.0:
            hits += 1
    return hits


@njit(cache=True)
def nb_confusion_tally(mu0, mu1, chol, alpha, beta, p0, theta, count,
                       class_key, feature_key):
    n = mu0.shape[0]
    z = np.empty(n)
    x = np.empty(n)
    tally = np.zeros(4, dtype=np.int64)
    for i in range(count):
        positive_class = _nb_uniform(class_key, i) >= p0
        mean = mu1 if positive_class else mu0
        s = _nb_draw_score(mean, chol, alpha, feature_key, i * n, z, x) + beta
        predicted = s > theta
        tally[2 * int(positive_class) + int(predicted)] += 1
    return tally


# --------------------------------------------------------------------------
# numpy family
# --------------------------------------------------------------------------

_CHUNK = 1 << 16


def _np_bits(key, counters):
    z = key + (counters + _ONE) * _G
    z = (z ^ (z >> _S30)) * _M1
    z = (z ^ (z >> _S27)) * _M2
    return z ^ (z >> _S31)


def np_uniforms(key, start, count):
    c = np.arange(start, start + count, dtype=np.uint64)
    return (_np_bits(key, c) >> _S11).astype(np.float64) * _TWO_M53


def np_normals(key, start, count):
    j = np.arange(start, start + count, dtype=np.uint64)
    p2 = (j >> _ONE) << _ONE
    u1 = ((_np_bits(key, p2) >> _S11).astype(np.float64) + 1.0) * _TWO_M53
    u2 = (_np_bits(key, p2 + _ONE) >> _S11).astype(np.float64) * _TWO_M53
    r = np.sqrt(-2.0 * np.log(u1))
    ang = _TWO_PI * u2
    return np.where((j & _ONE) == 0, r * np.cos(ang), r * np.sin(ang))


_erfc_ufunc = np.frompyfunc(math.erfc, 1, 1)


def np_normal_cdf(x):
    return 0.5 * _erfc_ufunc(-x * _INV_SQRT2).astype(np.float64)


def np_jacobi_eigh(a, tol, max_sweeps):
    n = a.shape[0]
    a = np.array(a, dtype=np.float64)
    v = np.eye(n)
    total = float(np.sum(a * a))
    iu = np.triu_indices(n, 1)
    for sweep in range(max_sweeps):
        if float(np.sum(a[iu] ** 2)) <= tol * tol * total:
            return np.diag(a).copy(), v, sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(tau) > 1e150:
                    t = 0.5 / tau
                else:
                    t = math.copysign(1.0 / (abs(tau) + math.sqrt(1.0 + tau * tau)), tau)
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                cp, cq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                rp, rq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                a[p, q] = a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    return np.diag(a).copy(), v, -1


def np_cholesky(a, pivot_tol):
    n = a.shape[0]
    low = np.zeros((n, n))
    for j in range(n):
        d = a[j, j] - low[j, :j] @ low[j, :j]
        if not d > pivot_tol:
            return low, j
        low[j, j] = math.sqrt(d)
        low[j + 1:, j] = (a[j + 1:, j] - low[j + 1:, :j] @ low[j, :j]) / low[j, j]
    return low, -1


def _np_scores(mean, chol, alpha, key, start, rows):
    n = mean.shape[0]
    z = np_normals(key, start * n, rows * n).reshape(rows, n)
    return (mean + z @ chol.T) @ alpha


def np_count_below(mean, chol, alpha, beta, count, key):
    hits = 0
    for start in range(0, count, _CHUNK):
        rows = min(_CHUNK, count - start)
        s = _np_scores(mean, chol, alpha, key, start, rows) + beta
        hits += int(np.count_nonzero(s <= 0.0))
    return hits


def np_confusion_tally(mu0, mu1, chol, alpha, beta, p0, theta, count,
                       class_key, feature_key):
    n = mu0.shape[0]
    tally = np.zeros(4, dtype=np.int64)
    for start in range(0, count, _CHUNK):
        rows = min(_CHUNK, count - start)
        positive_class = np_uniforms(class_key, start, rows) >= p0
        z = np_normals(feature_key, start * n, rows * n).reshape(rows, n)
        means = np.where(positive_class[:, None], mu1, mu0)
        s = (means + z @ chol.T) @ alpha + beta
        cell = 2 * positive_class.astype(np.int64) + (s > theta).astype(np.int64)
        tally += np.bincount(cell, minlength=4)
    return tally


if USE_NUMBA:
    uniforms = nb_uniforms
    normals = nb_normals
    normal_cdf_array = nb_normal_cdf
    jacobi_eigh = nb_jacobi_eigh
    cholesky_lower = nb_cholesky
    count_below = nb_count_below
    confusion_tally = nb_confusion_tally
else:
    uniforms = np_uniforms
    normals = np_normals
    normal_cdf_array = np_normal_cdf
    jacobi_eigh = np_jacobi_eigh
    cholesky_lower = np_cholesky
    count_below = np_count_below
    confusion_tally = np_confusion_tally
