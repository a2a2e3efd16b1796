"""Iterative solvers sharing one termination and reporting contract.

Three methods minimize the same penalized least-squares objective:

* :func:`solve_ssn` -- semismooth Newton iteration on the fixed-point
  residual of the thresholding equation.
* :func:`solve_active_set` -- the equivalent active-set reformulation; the
  next iterate depends on the current one only through its signed
  active/inactive partition.
* :func:`solve_ista` -- iterative soft-thresholding (proximal gradient),
  the slow but globally convergent baseline.

All three return a :class:`SolveReport` whose records list one row per
visited iterate, first row included, so ``len(records) - 1`` counts the
updates actually performed; :attr:`SolveReport.iterations` exposes that
number.  Newton-type iterates after the first update vanish exactly (not
approximately) outside the current active set.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field

import numpy as np

from .newton import SingularSystemError, build_newton_system, solve_newton_step
from .operators import LinearMap, normal_submatrix, operator_norm_estimate
from .prox import (
    ActiveSet,
    Problem,
    active_inactive,
    objective,
    optimality_residual,
    soft_threshold,
)

__all__ = [
    "StopRule",
    "SolveStatus",
    "SolveOptions",
    "IterationRecord",
    "SolveReport",
    "solve_ssn",
    "solve_active_set",
    "solve_ista",
    "compute_report_row",
    "default_gamma",
]

# Condition numbers are only recorded for blocks up to this size; beyond it
# the dense SVD would dominate the solve time.
CONDITION_SIZE_LIMIT = 2000


class StopRule(enum.Enum):
    """Which termination tests run at each iterate."""

    RESIDUAL_NORM = "residual_norm"
    SIGN_STABILIZATION = "sign_stabilization"
    BOTH = "both"


class SolveStatus(enum.Enum):
    CONVERGED = "converged"
    MAX_ITERS = "max_iters"
    SINGULAR_SYSTEM = "singular_system"


@dataclass(frozen=True)
class SolveOptions:
    """Termination and reporting knobs shared by all solvers.

    ``residual_tol`` bounds the norm of the fixed-point residual;
    ``stop_rule`` selects which of the two termination tests apply.  The
    sign-stabilization test has no meaning for the proximal-gradient
    baseline, which reads it as an iterate-difference test instead.
    """

    max_iters: int = 100
    residual_tol: float = 1e-10
    stop_rule: StopRule = StopRule.BOTH
    record_condition: bool = False

    def __post_init__(self):
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be >= 1, got {self.max_iters}")
        if not self.residual_tol > 0:
            raise ValueError(f"residual_tol must be positive, got {self.residual_tol}")

    @property
    def checks_residual(self) -> bool:
        return self.stop_rule in (StopRule.RESIDUAL_NORM, StopRule.BOTH)

    @property
    def checks_signs(self) -> bool:
        return self.stop_rule in (StopRule.SIGN_STABILIZATION, StopRule.BOTH)


@dataclass(frozen=True)
class IterationRecord:
    """One table row: iterate label, objective, residual norm, support data."""

    n: int
    objective: float
    residual_norm: float
    active_size: int
    condition_m_aa: float | None = None


@dataclass
class SolveReport:
    """Outcome of a solver run.

    ``solution`` is the last computed iterate regardless of status.
    ``stop_reason`` names the termination test that fired ("residual_norm",
    "sign_stabilization" or "step_norm"); None unless status is Converged.
    """

    solution: np.ndarray
    records: list[IterationRecord]
    status: SolveStatus
    wall_time: float
    solver: str
    stop_reason: str | None = None
    cycling: bool = False
    warnings: list[str] = field(default_factory=list)
    step_size: float | None = None

    @property
    def converged(self) -> bool:
        return self.status is SolveStatus.CONVERGED

    @property
    def iterations(self) -> int:
        """Number of updates performed (0 when the initial point already stops)."""
        return max(0, len(self.records) - 1)

    @property
    def final_residual(self) -> float:
        return self.records[-1].residual_norm if self.records else float("inf")

    @property
    def final_objective(self) -> float:
        return self.records[-1].objective if self.records else float("inf")

    def residual_trace(self) -> np.ndarray:
        return np.array([rec.residual_norm for rec in self.records])

    def objective_trace(self) -> np.ndarray:
        return np.array([rec.objective for rec in self.records])


def _signs_key(sets: ActiveSet) -> bytes:
    return sets.signs.astype(np.int8).tobytes()


def _make_record(p: Problem, u: np.ndarray, sets: ActiveSet, residual_norm: float,
                 opts: SolveOptions, n: int) -> IterationRecord:
    cond = None
    if opts.record_condition and 0 < sets.size <= CONDITION_SIZE_LIMIT:
        a = sets.active
        cond = float(np.linalg.cond(normal_submatrix(p.K, a, a).materialize()))
    return IterationRecord(
        n=n,
        objective=objective(p, u),
        residual_norm=residual_norm,
        active_size=sets.size,
        condition_m_aa=cond,
    )


def compute_report_row(p: Problem, u, opts: SolveOptions | None = None,
                       n: int = 1) -> IterationRecord:
    """Standalone table row for an arbitrary point; used by all solvers.

    The condition number of the active block (dense SVD of the materialized
    block) is filled only when ``opts.record_condition`` is set and the
    active set is nonempty with at most 2000 entries.
    """
    opts = opts or SolveOptions()
    u = np.asarray(u, dtype=float)
    sets = active_inactive(p, u)
    rnorm = float(np.linalg.norm(optimality_residual(p, u)))
    return _make_record(p, u, sets, rnorm, opts, n)


def partition_step(p: Problem, sets: ActiveSet) -> np.ndarray:
    """Direct iterate from a signed partition: zero outside the active set,
    restricted normal solve ``M_AA u_A = (K^T f - s_A w_A)`` on it.

    One Newton sweep from any point with this signed partition lands on
    exactly this vector, so the point iteration and the partition
    iteration interleave the same states.

    Raises
    ------
    SingularSystemError
        If the restricted normal matrix fails its positivity check.
    """
    u = np.zeros(p.n)
    a = sets.active
    if a.size:
        system = build_newton_system(p, sets)
        rhs = p.K.adjoint_apply(p.f)[a] - sets.signs[a] * p.w.w[a]
        u[a] = system.solve_active(rhs)
    return u


def _run_newton_loop(p, opts, u, advance, prev, seen, solver, t_start, warnings):
    records: list[IterationRecord] = []
    status = SolveStatus.MAX_ITERS
    stop_reason = None
    cycling = False
    n = 0
    while True:
        n += 1
        sets = active_inactive(p, u)
        r = optimality_residual(p, u)
        rnorm = float(np.linalg.norm(r))
        records.append(_make_record(p, u, sets, rnorm, opts, n))
        if opts.checks_residual and rnorm <= opts.residual_tol:
            status, stop_reason = SolveStatus.CONVERGED, "residual_norm"
            break
        if opts.checks_signs and prev is not None and sets.same_signs(prev):
            status, stop_reason = SolveStatus.CONVERGED, "sign_stabilization"
            break
        key = _signs_key(sets)
        if key in seen:
            cycling = True
            warnings.append(
                f"sign pattern of iterate {seen[key]} reappeared at iterate {n} "
                "without convergence"
            )
            status = SolveStatus.MAX_ITERS
            break
        seen[key] = n
        if n - 1 >= opts.max_iters:
            status = SolveStatus.MAX_ITERS
            break
        try:
            u_next = advance(u, sets, r)
        except SingularSystemError as exc:
            warnings.append(str(exc))
            status = SolveStatus.SINGULAR_SYSTEM
            break
        prev = sets
        u = u_next
    return SolveReport(
        solution=u,
        records=records,
        status=status,
        wall_time=time.perf_counter() - t_start,
        solver=solver,
        stop_reason=stop_reason,
        cycling=cycling,
        warnings=warnings,
    )


def solve_ssn(p: Problem, u0=None, opts: SolveOptions | None = None) -> SolveReport:
    """Semismooth Newton iteration on the fixed-point residual.

    Each sweep determines the signed active/inactive partition at the
    current iterate, evaluates the residual, stops if a termination test
    fires, and otherwise applies the Newton update from the
    block-triangular generalized derivative.  After every update the
    iterate is exactly zero on the inactive set of the previous sweep.

    Parameters
    ----------
    p : Problem
        Problem instance (operator, data, weights, threshold scaling).
    u0 : array_like, optional
        Starting point; zero vector when omitted.
    opts : SolveOptions, optional

    Returns
    -------
    SolveReport
    """
    opts = opts or SolveOptions()
    if u0 is None:
        u = np.zeros(p.n)
    else:
        u = np.array(u0, dtype=float)
        if u.shape != (p.n,):
            raise ValueError(f"u0 has shape {u.shape}, expected ({p.n},)")
    t0 = time.perf_counter()

    def advance(u_cur, sets, r):
        system = build_newton_system(p, sets)
        return u_cur + solve_newton_step(system, r)

    return _run_newton_loop(p, opts, u, advance, None, {}, "ssn", t0, [])


def solve_active_set(p: Problem, a0: ActiveSet | None = None,
                     opts: SolveOptions | None = None) -> SolveReport:
    """Active-set reformulation of the Newton iteration.

    Starts from a signed partition instead of a point: the first iterate is
    already the restricted solve for ``a0`` (the empty partition gives the
    zero vector).  Signs that repeat between consecutive iterates stop the
    run as converged; a sign pattern that reappears after an excursion
    marks a cycle and stops the run as MaxIters with ``cycling`` set.
    """
    opts = opts or SolveOptions()
    if a0 is None:
        a0 = ActiveSet(np.zeros(p.n, dtype=int))
    if len(a0.signs) != p.n:
        raise ValueError(f"a0 has length {len(a0.signs)}, expected {p.n}")
    t0 = time.perf_counter()
    warnings: list[str] = []
    try:
        u = partition_step(p, a0)
    except SingularSystemError as exc:
        warnings.append(str(exc))
        return SolveReport(
            solution=np.zeros(p.n),
            records=[],
            status=SolveStatus.SINGULAR_SYSTEM,
            wall_time=time.perf_counter() - t0,
            solver="active_set",
            warnings=warnings,
        )

    def advance(u_cur, sets, r):
        return partition_step(p, sets)

    seen = {_signs_key(a0): 0}
    return _run_newton_loop(p, opts, u, advance, a0, seen, "active_set", t0, warnings)


def solve_ista(p: Problem, u0=None, opts: SolveOptions | None = None) -> SolveReport:
    """Iterative soft-thresholding baseline.

    The update is one gradient step followed by shrinkage.  When the
    problem's threshold scaling is too large for the gradient step to be
    stable, the step (and the shrinkage thresholds with it) shrinks to
    ``1.9 / ||K||^2`` and a warning records the change; residuals are still
    measured with the problem's own scaling so reports stay comparable
    across solvers.

    Stops on the residual test, or (under the sign-stabilization rule,
    reinterpreted here) when consecutive iterates differ by at most
    ``residual_tol``.
    """
    opts = opts or SolveOptions()
    if u0 is None:
        u = np.zeros(p.n)
    else:
        u = np.array(u0, dtype=float)
        if u.shape != (p.n,):
            raise ValueError(f"u0 has shape {u.shape}, expected ({p.n},)")
    t0 = time.perf_counter()
    warnings: list[str] = []
    knorm = operator_norm_estimate(p.K)
    step = p.gamma
    if knorm > 0.0:
        limit = 1.9 / knorm**2
        if limit < step:
            step = limit
            warnings.append(
                f"step size reduced from {p.gamma:.6e} to {step:.6e} "
                "to keep the gradient iteration stable"
            )
    thresholds = p.gamma * p.w.w
    step_thresholds = step * p.w.w

    records: list[IterationRecord] = []
    status = SolveStatus.MAX_ITERS
    stop_reason = None
    last_step_norm = None
    n = 0
    while True:
        n += 1
        misfit = p.K.apply(u) - p.f
        grad = p.K.adjoint_apply(misfit)
        v = u - p.gamma * grad
        shrunk = soft_threshold(v, thresholds)
        rnorm = float(np.linalg.norm(u - shrunk))
        obj = 0.5 * float(misfit @ misfit) + float(p.w.w @ np.abs(u))
        active_size = int(np.count_nonzero(np.abs(v) > thresholds))
        records.append(IterationRecord(n, obj, rnorm, active_size, None))
        if opts.checks_residual and rnorm <= opts.residual_tol:
            status, stop_reason = SolveStatus.CONVERGED, "residual_norm"
            break
        if opts.checks_signs and last_step_norm is not None \
                and last_step_norm <= opts.residual_tol:
            status, stop_reason = SolveStatus.CONVERGED, "step_norm"
            break
        if n - 1 >= opts.max_iters:
            break
        if step == p.gamma:
            u_next = shrunk
        else:
            u_next = soft_threshold(u - step * grad, step_thresholds)
        last_step_norm = float(np.linalg.norm(u_next - u))
        u = u_next
    return SolveReport(
        solution=u,
        records=records,
        status=status,
        wall_time=time.perf_counter() - t0,
        solver="ista",
        stop_reason=stop_reason,
        warnings=warnings,
        step_size=step,
    )


def default_gamma(m: LinearMap) -> float:
    """Threshold scaling ``1 / ||K||^2``: large enough to separate the sets,
    small enough that the baseline iteration needs no safeguard."""
    norm = operator_norm_estimate(m)
    if norm == 0.0:
        raise ValueError("cannot pick a scaling for the zero map")
    return 1.0 / norm**2
