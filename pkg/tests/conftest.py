"""Shared instance builders for the test suite."""

import numpy as np
import pytest

import l1newton as ln


def make_tiny(seed):
    """Small random injective instance with oracle-friendly dimensions.

    Returns the packaged problem together with the raw (K, f, w) arrays so
    reference computations can stay independent of the library.  The
    threshold scaling is the reciprocal smallest eigenvalue of the normal
    matrix, which keeps the Newton iteration convergent from zero on these
    sizes.
    """
    rng = np.random.default_rng(seed)
    n = 4 + seed % 5
    K = rng.standard_normal((n + 2, n)) / np.sqrt(n)
    z = np.zeros(n)
    nz = rng.choice(n, size=max(1, n // 2), replace=False)
    z[nz] = rng.uniform(-1.0, 1.0, size=nz.size)
    f = K @ z + 0.05 * rng.standard_normal(n + 2)
    scale = np.max(np.abs(K.T @ f))
    w = rng.uniform(0.05, 0.25, size=n) * scale
    evals = np.linalg.eigvalsh(K.T @ K)
    p = ln.Problem(K=ln.DenseMap(K), f=f, w=ln.Weights(w), gamma=1.0 / evals[0])
    return p, K, f, w, evals


@pytest.fixture
def tiny():
    p, K, f, w, evals = make_tiny(0)
    return p, K, f, w


@pytest.fixture
def identity_problem():
    """K = I in five dimensions with unit scaling: shrinkage in closed form."""
    f = np.array([2.0, -3.0, 0.4, 0.0, 1.5])
    return ln.Problem(K=ln.identity(5), f=f, w=ln.Weights.constant(1.0, 5), gamma=1.0)
