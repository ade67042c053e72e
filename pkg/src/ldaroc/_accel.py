"""Backend selection for the compiled kernels.

Set ``LDAROC_DISABLE_NUMBA=1`` to force the pure-numpy fallback path. The
flag is read once at import time.
"""
import os

_FALSY = {"", "0", "false", "no", "off"}


def _numba_requested():
    return os.environ.get("LDAROC_DISABLE_NUMBA", "").strip().lower() in _FALSY


try:
    import numba as _numba
except ImportError:  # pragma: no cover - numba is a hard dependency in CI
    _numba = None

HAVE_NUMBA = _numba is not None
USE_NUMBA = HAVE_NUMBA and _numba_requested()


def njit(*args, **kwargs):
    """``numba.njit`` when available, otherwise the identity decorator.

    The decorated function is compiled even when the numpy path is selected,
    so the benchmark can compare both backends in one process.
    """
    if HAVE_NUMBA:
        return _numba.njit(*args, **kwargs)

    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda f: f


def backend_name():
    return "numba" if USE_NUMBA else "numpy"
