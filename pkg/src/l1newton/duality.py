"""Dual certificates for the penalized least-squares problem.

The dual program maximizes ``-1/2 ||p||^2 + <p, f>`` over dual vectors p
whose correlations ``K^T p`` stay inside the weight box ``|.| <= w``.  At a
primal minimizer the misfit determines the dual optimum, ``p = f - K u``,
so certificates never solve the dual: they evaluate it at that candidate
and report the gap, the box-constraint margin and the complementarity
residual.  A strictly positive gap at tolerance is proof that u is not
optimal; a tiny gap certifies near-optimality without reference to any
solver internals.

Infinite conjugate values are represented by the explicit
:data:`INFEASIBLE` marker rather than a floating sentinel, so gap
arithmetic never mixes NaNs.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .prox import Problem, Weights, objective, optimality_residual

__all__ = [
    "INFEASIBLE",
    "FEASIBILITY_TOL",
    "penalty_conjugate",
    "datafit_conjugate",
    "DualCertificate",
    "certify",
    "gap_tolerance",
    "maxmin_residual_vector",
    "maxmin_residual_norm",
]

# A dual candidate whose box-constraint margin is above this (negative)
# floor counts as feasible up to roundoff.
FEASIBILITY_TOL = 1e-10


class _Infeasible:
    """Singleton marker for an infinite conjugate value."""

    __slots__ = ()

    def __repr__(self):
        return "INFEASIBLE"


INFEASIBLE = _Infeasible()


def penalty_conjugate(q, w: Weights):
    """Conjugate of the weighted l1 penalty, evaluated at a correlation vector.

    Returns 0.0 when ``|q_k| <= w_k`` for every k (boundary included) and
    :data:`INFEASIBLE` otherwise.
    """
    q = np.asarray(q, dtype=float)
    if q.shape != w.w.shape:
        raise ValueError(f"length mismatch: q has shape {q.shape}, weights {w.w.shape}")
    if np.all(np.abs(q) <= w.w):
        return 0.0
    return INFEASIBLE


def datafit_conjugate(p_vec, f) -> float:
    """Conjugate of the quadratic misfit ``v -> 1/2 ||v - f||^2``:
    ``1/2 ||p||^2 + <p, f>``."""
    p_vec = np.asarray(p_vec, dtype=float)
    f = np.asarray(f, dtype=float)
    if p_vec.shape != f.shape:
        raise ValueError(f"length mismatch: p has shape {p_vec.shape}, f {f.shape}")
    return 0.5 * float(p_vec @ p_vec) + float(p_vec @ f)


@dataclass(frozen=True)
class DualCertificate:
    """Optimality evidence for a candidate solution.

    ``feasibility_margin`` is ``min_k (w_k - |(K^T p)_k|)``; negative means
    the dual candidate leaves the constraint box.  When the margin is below
    the roundoff floor the dual objective is ``-inf`` and the gap ``+inf``.
    ``complementarity_violation`` is the largest coordinatewise product of
    a slack correlation with the matching signed part of u.
    """

    p: np.ndarray
    dual_objective: float
    primal_objective: float
    gap: float
    feasibility_margin: float
    complementarity_violation: float

    def within_tolerance(self) -> bool:
        """Near-optimality test at the standard tolerances."""
        return (
            self.gap <= gap_tolerance(self.primal_objective)
            and self.feasibility_margin >= -FEASIBILITY_TOL
            and self.complementarity_violation <= 1e-8
        )

    def as_dict(self) -> dict:
        def clean(x: float):
            return x if math.isfinite(x) else repr(x)

        return {
            "p": [float(v) for v in self.p],
            "dual_objective": clean(self.dual_objective),
            "primal_objective": clean(self.primal_objective),
            "gap": clean(self.gap),
            "feasibility_margin": clean(self.feasibility_margin),
            "complementarity_violation": clean(self.complementarity_violation),
            "within_tolerance": self.within_tolerance(),
        }

    def to_json(self, indent: int | None = 2) -> str:
        # non-finite values are emitted as strings ("inf", "-inf") so the
        # output stays strict JSON
        return json.dumps(self.as_dict(), indent=indent, allow_nan=False)


def gap_tolerance(primal_objective: float) -> float:
    """Acceptable duality gap for a converged run: absolute floor plus a
    relative part growing with the objective value."""
    return max(1e-8, 1e-6 * (1.0 + abs(primal_objective)))


def certify(p_prob: Problem, u) -> DualCertificate:
    """Build the duality certificate for a candidate solution.

    The dual candidate is the negated misfit ``p = -(K u - f)``, which is
    the exact dual optimum when u minimizes; elsewhere the resulting gap
    measures suboptimality.  Infeasible candidates (margin below the
    roundoff floor) yield ``dual_objective = -inf`` and ``gap = +inf``.
    """
    u = np.asarray(u, dtype=float)
    if u.shape != (p_prob.n,):
        raise ValueError(f"u has shape {u.shape}, expected ({p_prob.n},)")
    p_vec = p_prob.f - p_prob.K.apply(u)
    primal = objective(p_prob, u)
    correlation = p_prob.K.adjoint_apply(p_vec)
    margin = float(np.min(p_prob.w.w - np.abs(correlation)))
    if margin >= -FEASIBILITY_TOL:
        dual = -0.5 * float(p_vec @ p_vec) + float(p_vec @ p_prob.f)
    else:
        dual = float("-inf")
    u_pos = np.maximum(u, 0.0)
    u_neg = np.maximum(-u, 0.0)
    violation = max(
        float(np.max(np.abs((correlation - p_prob.w.w) * u_pos), initial=0.0)),
        float(np.max(np.abs((correlation + p_prob.w.w) * u_neg), initial=0.0)),
    )
    return DualCertificate(
        p=p_vec,
        dual_objective=dual,
        primal_objective=primal,
        gap=primal - dual,
        feasibility_margin=margin,
        complementarity_violation=violation,
    )


def maxmin_residual_vector(p: Problem, u) -> np.ndarray:
    """Optimality residual in its max/min split form.

    Evaluates ``u - max(0, u - gamma (g + w)) - min(0, u - gamma (g - w))``
    with g the misfit gradient.  Algebraically identical to
    :func:`l1newton.prox.optimality_residual`; kept as an independent
    evaluation path so the identity can be checked, not assumed.
    """
    u = np.asarray(u, dtype=float)
    if u.shape != (p.n,):
        raise ValueError(f"u has shape {u.shape}, expected ({p.n},)")
    g = p.gradient(u)
    w = p.w.w
    upper = np.maximum(0.0, u - p.gamma * (g + w))
    lower = np.minimum(0.0, u - p.gamma * (g - w))
    return u - upper - lower


def maxmin_residual_norm(p: Problem, u) -> float:
    """Norm of the max/min-form residual; equals the norm of the prox-form
    residual up to roundoff."""
    return float(np.linalg.norm(maxmin_residual_vector(p, u)))
