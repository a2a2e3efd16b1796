"""Linear-operator abstraction used by all solvers and problem generators.

Operators are immutable after construction and all operations are pure, so
maps may be shared freely across threads.  Two realizations are provided: a
dense matrix and a lazy composition of two maps.  The normal matrix K*K is
never formed globally; solvers materialize only the small blocks they need
through :func:`normal_submatrix`.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "LinearMap",
    "DenseMap",
    "CompositionMap",
    "SubmatrixView",
    "identity",
    "compose",
    "normal_submatrix",
    "operator_norm_estimate",
    "load_csv_matrix",
    "load_csv_vector",
]


def _as_vector(x, dim: int, what: str) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.shape[0] != dim:
        raise ValueError(
            f"{what}: expected vector of length {dim}, got shape {x.shape}"
        )
    return x


class LinearMap:
    """A linear map R^domain_dim -> R^range_dim with an adjoint.

    Subclasses must implement :meth:`apply`, :meth:`adjoint_apply` and
    :meth:`columns`; ``apply_block`` has a generic column-loop fallback.
    """

    domain_dim: int
    range_dim: int

    def __init__(self, domain_dim: int, range_dim: int):
        if domain_dim < 1 or range_dim < 1:
            raise ValueError(f"dimensions must be positive, got ({range_dim}, {domain_dim})")
        self.domain_dim = int(domain_dim)
        self.range_dim = int(range_dim)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.range_dim, self.domain_dim)

    def apply(self, x) -> np.ndarray:
        """Forward action ``K x`` for a vector of length ``domain_dim``."""
        raise NotImplementedError

    def adjoint_apply(self, y) -> np.ndarray:
        """Adjoint action ``K^T y`` for a vector of length ``range_dim``."""
        raise NotImplementedError

    def apply_block(self, X: np.ndarray) -> np.ndarray:
        """Forward action on each column of a (domain_dim, k) array."""
        return np.column_stack([self.apply(X[:, j]) for j in range(X.shape[1])])

    def columns(self, idx) -> np.ndarray:
        """Dense columns of the matrix representation, shape (range_dim, len(idx))."""
        raise NotImplementedError

    def as_matrix(self) -> np.ndarray:
        """Dense materialization; intended for diagnostics and small direct solves."""
        return self.columns(np.arange(self.domain_dim))

    def __matmul__(self, other: "LinearMap") -> "CompositionMap":
        return compose(self, other)


class DenseMap(LinearMap):
    """Linear map backed by a dense 2-D array (row-major logical layout)."""

    def __init__(self, matrix):
        matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
        if matrix.ndim != 2:
            raise ValueError(f"matrix must be 2-D, got ndim={matrix.ndim}")
        super().__init__(matrix.shape[1], matrix.shape[0])
        self.matrix = matrix
        self.matrix.setflags(write=False)

    def apply(self, x) -> np.ndarray:
        x = _as_vector(x, self.domain_dim, "apply")
        return self.matrix @ x

    def adjoint_apply(self, y) -> np.ndarray:
        y = _as_vector(y, self.range_dim, "adjoint_apply")
        return self.matrix.T @ y

    def apply_block(self, X: np.ndarray) -> np.ndarray:
        return self.matrix @ X

    def columns(self, idx) -> np.ndarray:
        idx = _check_indices(idx, self.domain_dim)
        return self.matrix[:, idx]

    def as_matrix(self) -> np.ndarray:
        return self.matrix

    def __repr__(self):
        return f"DenseMap({self.range_dim}x{self.domain_dim})"


class CompositionMap(LinearMap):
    """Lazy composition ``outer @ inner``; applies factors sequentially.

    Sequential application is part of the contract: ``apply`` is bit-identical
    to ``outer.apply(inner.apply(x))``, never a materialized product.
    """

    def __init__(self, outer: LinearMap, inner: LinearMap):
        if outer.domain_dim != inner.range_dim:
            raise ValueError(
                f"cannot compose: outer domain {outer.domain_dim} != inner range {inner.range_dim}"
            )
        super().__init__(inner.domain_dim, outer.range_dim)
        self.outer = outer
        self.inner = inner

    def apply(self, x) -> np.ndarray:
        return self.outer.apply(self.inner.apply(x))

    def adjoint_apply(self, y) -> np.ndarray:
        return self.inner.adjoint_apply(self.outer.adjoint_apply(y))

    def apply_block(self, X: np.ndarray) -> np.ndarray:
        return self.outer.apply_block(self.inner.apply_block(X))

    def columns(self, idx) -> np.ndarray:
        return self.outer.apply_block(self.inner.columns(idx))

    def as_matrix(self) -> np.ndarray:
        return self.outer.apply_block(self.inner.as_matrix())

    def __repr__(self):
        return f"CompositionMap({self.outer!r} @ {self.inner!r})"


def identity(n: int) -> DenseMap:
    return DenseMap(np.eye(n))


def compose(outer: LinearMap, inner: LinearMap) -> CompositionMap:
    """Composition ``x -> outer(inner(x))``."""
    return CompositionMap(outer, inner)


def _check_indices(idx, dim: int) -> np.ndarray:
    idx = np.asarray(idx, dtype=int)
    if idx.ndim != 1:
        idx = idx.ravel()
    if idx.size and (idx.min() < 0 or idx.max() >= dim):
        raise IndexError(f"index out of range [0, {dim}): {idx[(idx < 0) | (idx >= dim)]}")
    return idx


class SubmatrixView:
    """Block of the normal matrix K*K selected by row and column index sets.

    Entries are inner products of columns of K, ``entry(i, j) =
    <K e_cols[j], K e_rows[i]>``; the dense block is materialized on demand
    and cached for factorization.
    """

    def __init__(self, kmap: LinearMap, rows, cols):
        self.kmap = kmap
        self.rows = _check_indices(rows, kmap.domain_dim)
        self.cols = _check_indices(cols, kmap.domain_dim)
        self._block: np.ndarray | None = None

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows.size, self.cols.size)

    def materialize(self) -> np.ndarray:
        if self._block is None:
            if self.rows.size == 0 or self.cols.size == 0:
                self._block = np.zeros(self.shape)
            else:
                krows = self.kmap.columns(self.rows)
                if self.cols is self.rows or np.array_equal(self.cols, self.rows):
                    kcols = krows
                else:
                    kcols = self.kmap.columns(self.cols)
                self._block = krows.T @ kcols
        return self._block

    def entry(self, i: int, j: int) -> float:
        if self._block is not None:
            return float(self._block[i, j])
        kr = self.kmap.columns(self.rows[[i]])[:, 0]
        kc = self.kmap.columns(self.cols[[j]])[:, 0]
        return float(kr @ kc)


def normal_submatrix(m: LinearMap, rows, cols) -> SubmatrixView:
    """View of the (rows, cols) block of the normal matrix ``K^T K``."""
    return SubmatrixView(m, rows, cols)


def operator_norm_estimate(m: LinearMap, max_iters: int = 200, rtol: float = 1e-6) -> float:
    """Spectral-norm estimate via power iteration on ``K^T K``.

    Deterministic by construction: the start vector is the normalized
    all-ones vector.  Returns 0.0 for the zero map.
    """
    n = m.domain_dim
    v = np.ones(n) / np.sqrt(n)
    lam = 0.0
    for _ in range(max_iters):
        w = m.adjoint_apply(m.apply(v))
        nw = np.linalg.norm(w)
        if nw == 0.0:
            return 0.0
        lam_new = v @ w
        v = w / nw
        if abs(lam_new - lam) <= rtol * abs(lam_new):
            lam = lam_new
            break
        lam = lam_new
    return float(np.sqrt(max(lam, 0.0)))


def load_csv_matrix(path) -> DenseMap:
    """Dense map from a CSV file, one matrix row per line, comma-separated."""
    data = np.loadtxt(path, delimiter=",", ndmin=2, dtype=float)
    return DenseMap(data)


def load_csv_vector(path) -> np.ndarray:
    """Vector from a CSV file: either one value per line or one comma-separated row."""
    data = np.loadtxt(path, delimiter=",", dtype=float)
    return np.atleast_1d(data).ravel()
