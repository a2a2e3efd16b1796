"""Generalized derivative of the optimality residual and its inverse action.

The soft-thresholding map is Newton differentiable with a particularly
simple generalized derivative: a diagonal 0/1 mask that is 1 strictly above
the threshold and 0 at or below it.  Composed with the affine inner map of
the fixed-point residual this yields a block-triangular Newton matrix

    [ gamma * M_AA   gamma * M_AI ]        M = K^T K restricted to
    [      0              I_II    ]        active (A) and inactive (I) sets

whose inverse application is one small SPD solve plus a copy.  Only the
active-active block is ever materialized; the active-inactive coupling is
applied matrix-free through K and its adjoint.

The mask convention at the boundary (|u_k| = t_k -> 0) matches the
inactive-set convention, so derivative and set computations never disagree.
Note that in the sequence-space setting the analogous naive 0/1 derivative
of the plain max function is not a generalized derivative; that failure
needs infinitely many nonzero coordinates and has no finite-dimensional
counterpart, so nothing here tests for it.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from .operators import normal_submatrix
from .prox import ActiveSet, Problem

__all__ = [
    "SingularSystemError",
    "soft_threshold_mask",
    "NewtonSystem",
    "build_newton_system",
    "solve_newton_step",
    "inverse_norm_bound",
]

# Cholesky pivots below this fraction of the largest diagonal entry signal a
# rank-deficient active block (violated injectivity on the active columns).
PIVOT_RTOL = 1e-13


class SingularSystemError(Exception):
    """Active-block factorization failed; K restricted to the active columns
    is numerically rank deficient."""


def soft_threshold_mask(u, thresholds) -> np.ndarray:
    """Diagonal 0/1 generalized-derivative mask of soft-thresholding.

    ``mask_k = 1`` where ``|u_k| > t_k`` and 0 otherwise; the boundary
    ``|u_k| = t_k`` maps to 0.
    """
    u = np.asarray(u, dtype=float)
    t = np.asarray(thresholds, dtype=float)
    if u.shape != t.shape:
        raise ValueError(f"length mismatch: u has shape {u.shape}, thresholds {t.shape}")
    return (np.abs(u) > t).astype(float)


class NewtonSystem:
    """Factorized Newton matrix for one active/inactive partition.

    Immutable after construction; the Cholesky factor of the active block is
    computed once, so one system may serve repeated solves.
    """

    def __init__(self, problem: Problem, active: ActiveSet):
        self.active = active
        self.gamma = problem.gamma
        self._kmap = problem.K
        self._n = problem.n
        a = active.active
        self.m_aa = normal_submatrix(problem.K, a, a).materialize()
        self._factor = self._factorize(self.m_aa)

    @staticmethod
    def _factorize(m_aa: np.ndarray):
        if m_aa.shape[0] == 0:
            return None
        try:
            factor = scipy.linalg.cho_factor(m_aa, lower=True, check_finite=False)
        except scipy.linalg.LinAlgError as exc:
            raise SingularSystemError(
                f"active block of size {m_aa.shape[0]} is not positive definite: {exc}"
            ) from None
        pivots = np.diag(factor[0]) ** 2
        floor = PIVOT_RTOL * float(np.max(np.diag(m_aa)))
        if np.min(pivots) < floor:
            raise SingularSystemError(
                f"pivot {np.min(pivots):.3e} below tolerance {floor:.3e} "
                f"in active block of size {m_aa.shape[0]}"
            )
        return factor

    def m_ai_action(self, x_inactive: np.ndarray) -> np.ndarray:
        """Apply the active-inactive normal block to an inactive-indexed vector."""
        z = np.zeros(self._n)
        z[self.active.inactive] = x_inactive
        full = self._kmap.adjoint_apply(self._kmap.apply(z))
        return full[self.active.active]

    def solve_active(self, rhs: np.ndarray) -> np.ndarray:
        """Solve ``M_AA x = rhs`` with one step of iterative refinement."""
        if self._factor is None:
            return rhs.copy()
        x = scipy.linalg.cho_solve(self._factor, rhs, check_finite=False)
        x += scipy.linalg.cho_solve(self._factor, rhs - self.m_aa @ x, check_finite=False)
        return x

    def apply(self, h: np.ndarray) -> np.ndarray:
        """Forward action of the Newton matrix on a full-length vector."""
        full = self._kmap.adjoint_apply(self._kmap.apply(h))
        out = h.copy()
        a = self.active.active
        out[a] = self.gamma * full[a]
        return out

    def condition_number(self) -> float | None:
        """2-norm condition number of the active block; None when empty."""
        if self.m_aa.shape[0] == 0:
            return None
        return float(np.linalg.cond(self.m_aa))


def build_newton_system(p: Problem, a: ActiveSet) -> NewtonSystem:
    """Materialize and factorize the Newton matrix for the partition `a`.

    Raises :class:`SingularSystemError` when the active block cannot be
    factorized, which signals that K is not injective on the active columns.
    """
    return NewtonSystem(p, a)


def solve_newton_step(sys: NewtonSystem, r) -> np.ndarray:
    """Newton update ``du`` with ``G du = -r`` by block back-substitution.

    The inactive part is the plain copy ``du_I = -r_I``; the active part
    solves ``gamma M_AA du_A = -r_A - gamma M_AI du_I``.
    """
    r = np.asarray(r, dtype=float)
    if r.shape != (sys._n,):
        raise ValueError(f"residual length {r.shape} does not match system size {sys._n}")
    du = np.empty_like(r)
    inact = sys.active.inactive
    act = sys.active.active
    du[inact] = -r[inact]
    if act.size:
        rhs = -r[act] / sys.gamma - sys.m_ai_action(du[inact])
        du[act] = sys.solve_active(rhs)
    return du


def inverse_norm_bound(sys: NewtonSystem) -> float:
    """Upper bound ``||M_AA^-1|| (1/gamma + ||M_AI||) + 1`` on the norm of the
    Newton matrix inverse, from dense norms of the materialized blocks.

    Degenerates to 1 for an empty active set.
    """
    if sys.m_aa.shape[0] == 0:
        return 1.0
    lam_min = float(scipy.linalg.eigvalsh(sys.m_aa)[0])
    if lam_min <= 0.0:
        return float("inf")
    m_ai = normal_submatrix(sys._kmap, sys.active.active, sys.active.inactive).materialize()
    m_ai_norm = float(np.linalg.norm(m_ai, 2)) if m_ai.size else 0.0
    return (1.0 / lam_min) * (1.0 / sys.gamma + m_ai_norm) + 1.0
