"""Shared kernel of every solver: soft-thresholding, objective, optimality
residual and active/inactive set computation.

The problem is the weighted-l1 regularized least-squares functional

    Psi(u) = 0.5 * ||K u - f||^2 + sum_k w_k |u_k|

with weights bounded away from zero.  Its unique minimizer is the fixed
point of ``u = S_{gw}(u - g K^T(K u - f))`` for every scaling g > 0, where
``S`` is coordinatewise soft-thresholding; the residual of that equation is
the optimality measure used throughout.

All functions here are pure and safe to call concurrently on a shared
Problem.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .operators import LinearMap

__all__ = [
    "Weights",
    "Problem",
    "ActiveSet",
    "soft_threshold",
    "objective",
    "optimality_residual",
    "active_inactive",
    "shifted_gradient_point",
    "threshold_margin",
]


@dataclass(frozen=True)
class Weights:
    """Per-coordinate penalty weights with a positive documented lower bound."""

    w: np.ndarray
    w0: float = 0.0

    def __post_init__(self):
        w = np.atleast_1d(np.asarray(self.w, dtype=float))
        object.__setattr__(self, "w", w)
        w0 = float(self.w0) if self.w0 > 0.0 else float(w.min(initial=np.inf))
        object.__setattr__(self, "w0", w0)
        if not np.isfinite(w0) or w0 <= 0.0:
            raise ValueError(f"weights must be positive, got lower bound {w0}")
        if np.any(w < w0):
            raise ValueError(f"all weights must be >= w0={w0}, min is {w.min()}")

    @classmethod
    def constant(cls, value: float, n: int) -> "Weights":
        return cls(np.full(n, float(value)))

    def __len__(self) -> int:
        return self.w.shape[0]


@dataclass(frozen=True)
class Problem:
    """One l1-penalized least-squares instance: operator, data, weights, scaling."""

    K: LinearMap
    f: np.ndarray
    w: Weights
    gamma: float

    def __post_init__(self):
        object.__setattr__(self, "f", np.asarray(self.f, dtype=float))
        if self.f.shape != (self.K.range_dim,):
            raise ValueError(
                f"data length {self.f.shape} does not match operator range {self.K.range_dim}"
            )
        if len(self.w) != self.K.domain_dim:
            raise ValueError(
                f"weight length {len(self.w)} does not match operator domain {self.K.domain_dim}"
            )
        if not self.gamma > 0.0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")

    @property
    def n(self) -> int:
        return self.K.domain_dim

    def gradient(self, u: np.ndarray) -> np.ndarray:
        """Gradient of the smooth part, ``K^T (K u - f)``."""
        return self.K.adjoint_apply(self.K.apply(u) - self.f)


@dataclass(frozen=True)
class ActiveSet:
    """Signed index partition of the coordinates.

    ``signs[k]`` is +1 on the positive active set, -1 on the negative active
    set and 0 on the inactive set; ``plus`` and ``minus`` are the sorted
    index arrays of the nonzero signs.
    """

    signs: np.ndarray
    plus: np.ndarray = field(init=False)
    minus: np.ndarray = field(init=False)

    def __post_init__(self):
        signs = np.asarray(self.signs, dtype=int)
        if not np.all(np.isin(signs, (-1, 0, 1))):
            raise ValueError("signs must take values in {-1, 0, +1}")
        object.__setattr__(self, "signs", signs)
        object.__setattr__(self, "plus", np.flatnonzero(signs > 0))
        object.__setattr__(self, "minus", np.flatnonzero(signs < 0))

    @classmethod
    def from_indices(cls, plus, minus, n: int) -> "ActiveSet":
        signs = np.zeros(n, dtype=int)
        signs[np.asarray(plus, dtype=int)] = 1
        minus = np.asarray(minus, dtype=int)
        if np.any(signs[minus] == 1):
            raise ValueError("plus and minus index sets overlap")
        signs[minus] = -1
        return cls(signs)

    @property
    def active(self) -> np.ndarray:
        """Sorted indices of all active coordinates."""
        return np.flatnonzero(self.signs != 0)

    @property
    def inactive(self) -> np.ndarray:
        return np.flatnonzero(self.signs == 0)

    @property
    def size(self) -> int:
        """Number of active coordinates."""
        return int(np.count_nonzero(self.signs))

    def same_signs(self, other: "ActiveSet") -> bool:
        return np.array_equal(self.signs, other.signs)


def soft_threshold(u, thresholds) -> np.ndarray:
    """Coordinatewise shrinkage ``max(0, |u_k| - t_k) * sign(u_k)``.

    Parameters
    ----------
    u : array
        Input vector.
    thresholds : array
        Positive per-coordinate thresholds, same length as `u`.
    """
    u = np.asarray(u, dtype=float)
    t = np.asarray(thresholds, dtype=float)
    if u.shape != t.shape:
        raise ValueError(f"length mismatch: u has shape {u.shape}, thresholds {t.shape}")
    if np.any(t <= 0.0):
        raise ValueError("thresholds must be positive")
    return np.sign(u) * np.maximum(0.0, np.abs(u) - t)


def objective(p: Problem, u) -> float:
    """Value of ``0.5 ||K u - f||^2 + sum_k w_k |u_k|``."""
    u = np.asarray(u, dtype=float)
    if u.shape != (p.n,):
        raise ValueError(f"iterate length {u.shape} does not match problem size {p.n}")
    misfit = p.K.apply(u) - p.f
    return float(0.5 * (misfit @ misfit) + p.w.w @ np.abs(u))


def shifted_gradient_point(p: Problem, u: np.ndarray) -> np.ndarray:
    """The thresholding argument ``v = u - gamma K^T(K u - f)``.

    Both the optimality residual and the active sets are functions of this
    vector; computing it once per iteration avoids repeated operator
    applications.
    """
    return u - p.gamma * p.gradient(u)


def optimality_residual(p: Problem, u) -> np.ndarray:
    """Fixed-point residual ``u - S_{gamma w}(u - gamma K^T(K u - f))``.

    Zero exactly at the unique minimizer, for any gamma > 0.
    """
    u = np.asarray(u, dtype=float)
    if u.shape != (p.n,):
        raise ValueError(f"iterate length {u.shape} does not match problem size {p.n}")
    v = shifted_gradient_point(p, u)
    return u - soft_threshold(v, p.gamma * p.w.w)


def active_inactive(p: Problem, u) -> ActiveSet:
    """Signed active/inactive partition at `u`.

    A coordinate is active where ``|v_k| > gamma w_k`` with
    ``v = u - gamma K^T(K u - f)``, signed by v; the boundary
    ``|v_k| = gamma w_k`` counts as inactive.
    """
    u = np.asarray(u, dtype=float)
    if u.shape != (p.n,):
        raise ValueError(f"iterate length {u.shape} does not match problem size {p.n}")
    v = shifted_gradient_point(p, u)
    return _sets_from_point(v, p.gamma * p.w.w)


def _sets_from_point(v: np.ndarray, thresholds: np.ndarray) -> ActiveSet:
    signs = np.zeros(v.shape[0], dtype=int)
    signs[v > thresholds] = 1
    signs[v < -thresholds] = -1
    return ActiveSet(signs)


def threshold_margin(p: Problem, u) -> float:
    """Smallest distance of ``|v_k|`` to the threshold ``gamma w_k`` at `u`.

    A positive margin means no coordinate of the thresholding argument sits
    on the active/inactive boundary; perturbations of v smaller than the
    margin cannot change the sets.
    """
    u = np.asarray(u, dtype=float)
    v = shifted_gradient_point(p, u)
    return float(np.min(np.abs(np.abs(v) - p.gamma * p.w.w)))
