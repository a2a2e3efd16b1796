"""Instance generators for the three reference experiments.

Inverse integration (cumulative averaging of a piecewise-constant signal),
deblurring in an orthonormal Haar basis, and compressed sensing with
row-orthonormalized Gaussian measurements.  Everything is a pure function
of an :class:`ExperimentSpec`; one seed fans out into independent streams
for the operator, the signal and the noise, so regenerating any instance
is bit-identical.

The plateau signal is defined on the continuous interval [0, 1]: its
breakpoints and heights come from the seed, the grid size only refines the
sampling.  Growing n therefore discretizes the same underlying signal,
which is what a scaling study over n needs.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy.linalg

from .operators import (
    DenseMap,
    LinearMap,
    compose,
    load_csv_matrix,
    load_csv_vector,
)
from .prox import Problem, Weights

__all__ = [
    "ExperimentKind",
    "ExperimentSpec",
    "GroundTruth",
    "integration_operator",
    "haar_synthesis",
    "lorentzian_blur",
    "cs_operator",
    "plateau_signal",
    "make_instance",
    "l2_reconstruction",
    "save_bundle",
    "load_bundle",
]


class ExperimentKind(enum.Enum):
    INVERSE_INTEGRATION = "inverse-integration"
    HAAR_DEBLUR = "haar-deblur"
    COMPRESSED_SENSING = "compressed-sensing"


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class ExperimentSpec:
    """Parameters pinning one experiment instance.

    ``noise_abs``, when set, overrides ``noise_rel`` and fixes the noise
    norm exactly; ``m`` is the measurement count and only meaningful for
    compressed sensing.
    """

    kind: ExperimentKind
    n: int
    w_value: float
    gamma: float
    seed: int = 0
    m: int | None = None
    noise_rel: float = 0.0
    noise_abs: float | None = None
    blur_width: float = 0.01

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 0.0 <= self.noise_rel < 1.0:
            raise ValueError(f"noise_rel must lie in [0, 1), got {self.noise_rel}")
        if self.noise_abs is not None and self.noise_abs < 0.0:
            raise ValueError(f"noise_abs must be nonnegative, got {self.noise_abs}")
        if self.w_value <= 0.0:
            raise ValueError(f"w_value must be positive, got {self.w_value}")
        if self.gamma <= 0.0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")
        if self.kind is ExperimentKind.HAAR_DEBLUR and not _is_power_of_two(self.n):
            raise ValueError(f"Haar experiment needs n a power of two, got {self.n}")
        if self.kind is ExperimentKind.COMPRESSED_SENSING:
            if self.m is None:
                raise ValueError("compressed sensing needs the measurement count m")
            if not 1 <= self.m < self.n:
                raise ValueError(f"need 1 <= m < n, got m={self.m}, n={self.n}")
        if self.blur_width <= 0.0:
            raise ValueError(f"blur_width must be positive, got {self.blur_width}")


@dataclass(frozen=True)
class GroundTruth:
    """What the instance was generated from: the planted coefficient vector,
    clean and noisy data, and the realized noise norm."""

    u_true: np.ndarray
    f_clean: np.ndarray
    f_noisy: np.ndarray
    noise_norm: float


def integration_operator(n: int) -> DenseMap:
    """Cumulative-averaging map: lower-triangular matrix of 1/n entries.

    Discretizes integration from 0 to x on an n-point grid; the classical
    smoothing (hence ill-posed to invert) model operator.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return DenseMap(np.tril(np.full((n, n), 1.0 / n)))


def _haar_matrix(n: int) -> np.ndarray:
    h = np.array([[1.0]])
    while h.shape[0] < n:
        k = h.shape[0]
        top = np.kron(h, [1.0, 1.0])
        bottom = np.kron(np.eye(k), [1.0, -1.0])
        h = np.vstack([top, bottom])
    return h / np.linalg.norm(h, axis=1, keepdims=True)


def haar_synthesis(n: int) -> DenseMap:
    """Orthonormal Haar synthesis: coefficients in, samples out.

    Columns are the scaling function followed by the wavelets ordered
    coarse to fine; the matrix is orthogonal.
    """
    if not _is_power_of_two(n):
        raise ValueError(f"n must be a power of two, got {n}")
    return DenseMap(_haar_matrix(n).T)


def lorentzian_blur(n: int, width: float) -> DenseMap:
    """Periodic convolution with a discretized Lorentzian kernel.

    Kernel samples ``(1 + (d/width)^2)^-1`` on the periodic grid distance
    d are normalized to sum to one, so every row of the circulant matrix
    sums to one.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if width <= 0.0:
        raise ValueError(f"width must be positive, got {width}")
    x = np.arange(n) / n
    dist = np.minimum(x, 1.0 - x)
    kernel = 1.0 / (1.0 + (dist / width) ** 2)
    kernel /= kernel.sum()
    return DenseMap(scipy.linalg.circulant(kernel))


def cs_operator(m: int, n: int, seed) -> DenseMap:
    """Seeded Gaussian measurement matrix with orthonormalized rows.

    Raises ValueError on a rank-deficient draw (probability zero up to
    floating point).
    """
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got m={m}, n={n}")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((m, n))
    q, r = scipy.linalg.qr(g.T, mode="economic")
    diag = np.abs(np.diag(r))
    if diag.min() < 1e-10 * diag.max():
        raise ValueError("Gaussian draw was numerically rank deficient")
    return DenseMap(np.ascontiguousarray(q.T))


def plateau_signal(n: int, seed) -> np.ndarray:
    """Sample a seeded 4-plateau step function on the midpoint grid.

    Three breakpoints uniform in (0, 1) and four heights uniform in
    [-1, 1] live on the continuous interval; n only sets the sampling
    resolution.
    """
    rng = np.random.default_rng(seed)
    breaks = np.sort(rng.uniform(0.0, 1.0, size=3))
    heights = rng.uniform(-1.0, 1.0, size=4)
    x = (np.arange(n) + 0.5) / n
    return heights[np.searchsorted(breaks, x)]


def _add_noise(f_clean: np.ndarray, rng, noise_rel: float, noise_abs):
    g = rng.standard_normal(f_clean.shape[0])
    gg = float(g @ g)
    if noise_abs is not None:
        if noise_abs == 0.0:
            scale = 0.0
        else:
            if gg == 0.0:
                raise ValueError("degenerate zero noise draw")
            scale = noise_abs / math.sqrt(gg)
    elif noise_rel == 0.0:
        scale = 0.0
    else:
        # solve ||c g|| = rho ||f_clean + c g|| for c >= 0
        rho = noise_rel
        b = float(f_clean @ g)
        ff = float(f_clean @ f_clean)
        if ff == 0.0:
            raise ValueError("relative noise is undefined for zero clean data")
        disc = rho**2 * b**2 + (1.0 - rho**2) * gg * ff
        scale = (rho**2 * b + rho * math.sqrt(disc)) / ((1.0 - rho**2) * gg)
    delta = scale * g
    return f_clean + delta, float(np.linalg.norm(delta))


def make_instance(spec: ExperimentSpec) -> tuple[Problem, GroundTruth]:
    """Build the Problem and its GroundTruth for an experiment spec.

    The seed spawns three independent child streams (operator, signal,
    noise), so changing e.g. only the noise level keeps the same operator
    draw.  For the Haar experiment the unknown is the coefficient vector
    and the forward map is the composition blur after synthesis.
    """
    ss = np.random.SeedSequence(spec.seed)
    op_seed, sig_seed, noise_seed = ss.spawn(3)
    if spec.kind is ExperimentKind.INVERSE_INTEGRATION:
        kmap: LinearMap = integration_operator(spec.n)
        u_true = plateau_signal(spec.n, sig_seed)
    elif spec.kind is ExperimentKind.HAAR_DEBLUR:
        basis = haar_synthesis(spec.n)
        blur = lorentzian_blur(spec.n, spec.blur_width)
        kmap = compose(blur, basis)
        u_true = basis.adjoint_apply(plateau_signal(spec.n, sig_seed))
    else:
        kmap = cs_operator(spec.m, spec.n, op_seed)
        spikes = max(1, round(spec.n / 128))
        rng = np.random.default_rng(sig_seed)
        support = rng.choice(spec.n, size=spikes, replace=False)
        u_true = np.zeros(spec.n)
        u_true[support] = rng.integers(0, 2, size=spikes) * 2 - 1
    f_clean = kmap.apply(u_true)
    f_noisy, noise_norm = _add_noise(
        f_clean, np.random.default_rng(noise_seed), spec.noise_rel, spec.noise_abs
    )
    problem = Problem(
        K=kmap,
        f=f_noisy,
        w=Weights.constant(spec.w_value, spec.n),
        gamma=spec.gamma,
    )
    return problem, GroundTruth(u_true, f_clean, f_noisy, noise_norm)


def l2_reconstruction(p: Problem) -> np.ndarray:
    """Quadratically penalized comparison solve.

    Minimizes the same misfit with ``sum w_k c_k^2`` in place of the l1
    penalty, via the normal equations ``(K^T K + 2 diag(w)) c = K^T f``.
    """
    a = p.K.as_matrix()
    h = a.T @ a + 2.0 * np.diag(p.w.w)
    return scipy.linalg.solve(h, a.T @ p.f, assume_a="pos")


def save_bundle(path, problem: Problem, truth: GroundTruth | None = None) -> None:
    """Write an instance to a directory: CSV arrays plus a JSON manifest.

    Values use 17 significant digits, so a round trip through
    :func:`load_bundle` is bit-identical.
    """
    d = Path(path)
    d.mkdir(parents=True, exist_ok=True)
    np.savetxt(d / "matrix.csv", problem.K.as_matrix(), fmt="%.17g", delimiter=",")
    np.savetxt(d / "f.csv", problem.f, fmt="%.17g")
    np.savetxt(d / "w.csv", problem.w.w, fmt="%.17g")
    meta = {"gamma": problem.gamma}
    if truth is not None:
        np.savetxt(d / "u_true.csv", truth.u_true, fmt="%.17g")
        np.savetxt(d / "f_clean.csv", truth.f_clean, fmt="%.17g")
        meta["noise_norm"] = truth.noise_norm
    (d / "meta.json").write_text(json.dumps(meta, indent=2) + "\n")


def load_bundle(path) -> tuple[Problem, GroundTruth | None]:
    """Read an instance directory written by :func:`save_bundle`."""
    d = Path(path)
    meta = json.loads((d / "meta.json").read_text())
    kmap = load_csv_matrix(d / "matrix.csv")
    f = load_csv_vector(d / "f.csv")
    w = load_csv_vector(d / "w.csv")
    problem = Problem(K=kmap, f=f, w=Weights(w), gamma=float(meta["gamma"]))
    truth = None
    if (d / "u_true.csv").exists():
        u_true = load_csv_vector(d / "u_true.csv")
        f_clean = load_csv_vector(d / "f_clean.csv")
        truth = GroundTruth(
            u_true=u_true,
            f_clean=f_clean,
            f_noisy=f,
            noise_norm=float(meta.get("noise_norm", np.linalg.norm(f - f_clean))),
        )
    return problem, truth
