import sys

import numpy as np
import pytest

from ldaroc.lda import model_from_params

# Golden 1-D model used throughout: mu0=0, mu1=2, unit variance, equal priors.
GOLDEN = dict(mu0=[0.0], mu1=[2.0], sigma=[[1.0]], p0=0.5)


def random_spd(rng, n, max_cond=1e3):
    """SPD matrix with condition number at most ``max_cond``."""
    q, _ = np.linalg.qr(rng.normal(size=(n, n)))
    lam = np.exp(rng.uniform(0.0, np.log(max_cond), size=n))
    lam *= rng.uniform(0.2, 5.0) / lam.max()
    return (q * lam) @ q.T


def random_model(rng, n=None, p0=None, max_cond=1e3, delta=None):
    """Random non-degenerate model with separation in [0.25, 4] unless given."""
    n = n or int(rng.integers(1, 6))
    sigma = random_spd(rng, n, max_cond)
    mu0 = rng.normal(size=n)
    step = rng.normal(size=n)
    target = delta if delta is not None else rng.uniform(0.25, 4.0)
    step *= target / np.sqrt(step @ np.linalg.solve(sigma, step))
    mu1 = mu0 + step
    return model_from_params(mu0, mu1, sigma, p0 if p0 is not None else rng.uniform(0.1, 0.9))


def random_invertible(rng, n):
    while True:
        a = rng.normal(size=(n, n))
        if abs(np.linalg.det(a)) > 0.1 and np.linalg.cond(a) < 1e3:
            return a


@pytest.fixture
def golden():
    return model_from_params(**GOLDEN)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def make_model(rng):
    return lambda **kw: random_model(rng, **kw)


@pytest.fixture
def make_invertible(rng):
    return lambda n: random_invertible(rng, n)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
