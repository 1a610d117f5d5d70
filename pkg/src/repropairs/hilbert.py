"""Finite model of a Hilbert space, a measure space and measurable vector families.

A continuous measure space (X, mu) is represented by a quadrature grid of
points with positive weights. A weakly measurable function ``phi: X -> H`` is
sampled on that grid, one column of a ``d x N`` complex array per point. The
model Hilbert space is C^d, optionally with a positive diagonal metric so that
weighted spaces such as L^2(R+, r^(n-1) dr) are represented exactly.

Inner products are linear in the first argument::

    <f, g> = sum_k metric_k * f_k * conj(g_k)

All reductions go through numpy/BLAS matrix products in a fixed order
(Hilbert index innermost for analysis, grid index innermost for synthesis);
no operation here is parallelised beyond what BLAS does internally.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

DEFAULT_TOL = 1e-10
# sigma_min below this is reported as an exact zero (cond = inf)
SIGMA_ZERO = 1e-300


def _frozen(a, dtype):
    arr = np.array(a, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class MeasureGrid:
    """Sample points of X with positive quadrature weights for dmu.

    ``points`` has shape (N,) or (N, k) with k in {1, 2}.
    """

    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        points = _frozen(self.points, float)
        weights = _frozen(self.weights, float)
        if points.ndim not in (1, 2):
            raise ValueError(f"points must be 1- or 2-dimensional, got shape {points.shape}")
        if weights.ndim != 1:
            raise ValueError("weights must be a 1-d array")
        n = weights.shape[0]
        if n < 1:
            raise ValueError("a measure grid needs at least one point")
        if points.shape[0] != n:
            raise ValueError(f"{points.shape[0]} points but {n} weights")
        if not np.all(np.isfinite(points)):
            raise ValueError("grid coordinates must be finite")
        if not np.all(np.isfinite(weights)) or np.any(weights <= 0):
            raise ValueError("quadrature weights must be finite and > 0")
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "weights", weights)

    @property
    def size(self) -> int:
        return self.weights.shape[0]

    @classmethod
    def counting(cls, n: int) -> "MeasureGrid":
        """The counting measure on {0, ..., n-1}."""
        return cls(np.arange(n, dtype=float), np.ones(n))

    def compatible(self, other: "MeasureGrid") -> bool:
        return (
            self is other
            or (
                self.points.shape == other.points.shape
                and np.array_equal(self.points, other.points)
                and np.array_equal(self.weights, other.weights)
            )
        )


@dataclass(frozen=True, eq=False)
class VectorFamily:
    """A family phi_x, x in the grid, stored column-wise as a d x N array."""

    grid: MeasureGrid
    vectors: np.ndarray
    metric: np.ndarray = None

    def __post_init__(self):
        vectors = _frozen(self.vectors, complex)
        if vectors.ndim == 1:
            vectors = _frozen(vectors[:, None], complex)
        if vectors.ndim != 2:
            raise ValueError("vectors must be a d x N array")
        if vectors.shape[1] != self.grid.size:
            raise ValueError(
                f"family has {vectors.shape[1]} columns but the grid has {self.grid.size} points"
            )
        if not np.all(np.isfinite(vectors)):
            raise ValueError("family vectors must be finite")
        d = vectors.shape[0]
        if self.metric is None:
            metric = np.ones(d)
        else:
            metric = np.asarray(self.metric, dtype=float)
            if metric.shape != (d,):
                raise ValueError(f"metric must have length {d}, got shape {metric.shape}")
            if not np.all(np.isfinite(metric)) or np.any(metric <= 0):
                raise ValueError("metric entries must be finite and > 0")
        object.__setattr__(self, "vectors", vectors)
        object.__setattr__(self, "metric", _frozen(metric, float))

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    @property
    def size(self) -> int:
        return self.vectors.shape[1]

    @property
    def weights(self) -> np.ndarray:
        return self.grid.weights

    def scaled_array(self) -> np.ndarray:
        """G^(1/2) Phi W^(1/2): the family in orthonormal coordinates on both sides."""
        return np.sqrt(self.metric)[:, None] * self.vectors * np.sqrt(self.weights)[None, :]

    def with_vectors(self, vectors) -> "VectorFamily":
        return VectorFamily(self.grid, vectors, self.metric)


@dataclass(frozen=True, eq=False)
class CoefficientFunction:
    """A complex value per grid point."""

    grid: MeasureGrid
    values: np.ndarray

    def __post_init__(self):
        values = _frozen(self.values, complex)
        if values.shape != (self.grid.size,):
            raise ValueError(
                f"coefficient function has shape {values.shape}, grid has {self.grid.size} points"
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("coefficient values must be finite")
        object.__setattr__(self, "values", values)

    def __add__(self, other):
        _check_grid(self.grid, other.grid)
        return CoefficientFunction(self.grid, self.values + other.values)

    def __sub__(self, other):
        _check_grid(self.grid, other.grid)
        return CoefficientFunction(self.grid, self.values - other.values)

    def __mul__(self, c):
        return CoefficientFunction(self.grid, self.values * c)

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class LinearMap:
    """A d x d operator on the model space; ``metric`` fixes the inner product."""

    matrix: np.ndarray
    metric: np.ndarray = None

    def __post_init__(self):
        m = _frozen(self.matrix, complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"a linear map must be square, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValueError("operator entries must be finite")
        metric = np.ones(m.shape[0]) if self.metric is None else self.metric
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "metric", _frozen(metric, float))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __matmul__(self, other):
        if isinstance(other, LinearMap):
            return LinearMap(self.matrix @ other.matrix, self.metric)
        return self.matrix @ np.asarray(other)

    def adjoint(self) -> "LinearMap":
        """Adjoint with respect to the metric inner product, G^-1 A^H G."""
        g = self.metric
        return LinearMap((self.matrix.conj().T * g[None, :]) / g[:, None], g)

    def inverse(self) -> "LinearMap":
        return LinearMap(np.linalg.inv(self.matrix), self.metric)

    def orthonormal_matrix(self) -> np.ndarray:
        """The matrix in a metric-orthonormal basis, G^(1/2) A G^(-1/2)."""
        s = np.sqrt(self.metric)
        return s[:, None] * self.matrix / s[None, :]

    def singular_values(self) -> np.ndarray:
        return np.linalg.svd(self.orthonormal_matrix(), compute_uv=False)


@dataclass(frozen=True)
class SpectralSummary:
    sigma_min: float
    sigma_max: float
    cond: float

    def to_dict(self):
        return {"sigma_min": self.sigma_min, "sigma_max": self.sigma_max, "cond": self.cond}


def _grid_mismatch(a: MeasureGrid, b: MeasureGrid) -> str:
    if a.size != b.size:
        return f"grid mismatch: {a.size} points vs {b.size} points"
    return f"grid mismatch: both grids have {a.size} points but differ in coordinates or weights"


def _check_grid(a: MeasureGrid, b: MeasureGrid):
    if not a.compatible(b):
        raise ValueError(_grid_mismatch(a, b))


def check_compatible(psi: VectorFamily, phi: VectorFamily):
    """Raise ValueError unless both families live on the same grid and space."""
    if psi.dim != phi.dim:
        raise ValueError(f"dimension mismatch: dim {psi.dim} vs dim {phi.dim}")
    if not psi.grid.compatible(phi.grid):
        raise ValueError(_grid_mismatch(psi.grid, phi.grid))
    if not np.array_equal(psi.metric, phi.metric):
        raise ValueError("metric mismatch between families")


def inner(f, g, metric=None) -> complex:
    """<f, g>, linear in f."""
    f = np.asarray(f)
    g = np.asarray(g)
    if metric is None:
        return complex(np.sum(f * g.conj()))
    return complex(np.sum(metric * f * g.conj()))


def norm(f, metric=None) -> float:
    f = np.asarray(f)
    if metric is None:
        return float(np.linalg.norm(f))
    return float(np.sqrt(np.sum(metric * np.abs(f) ** 2)))


def analyze(family: VectorFamily, f) -> CoefficientFunction:
    """Analysis coefficients (<f, phi_x>)_x; no quadrature weight is applied."""
    f = np.asarray(f, dtype=complex)
    if f.shape != (family.dim,):
        raise ValueError(f"expected a vector of length d={family.dim}, got shape {f.shape}")
    values = family.vectors.conj().T @ (family.metric * f)
    return CoefficientFunction(family.grid, values)


def synthesize(family: VectorFamily, xi) -> np.ndarray:
    """The weak integral sum_x w_x xi(x) phi_x."""
    if isinstance(xi, CoefficientFunction):
        _check_grid(family.grid, xi.grid)
        values = xi.values
    else:
        values = np.asarray(xi, dtype=complex)
        if values.shape != (family.size,):
            raise ValueError(
                f"coefficients have shape {values.shape}, grid has {family.size} points"
            )
    return family.vectors @ (family.weights * values)


def mixed_frame_operator(psi: VectorFamily, phi: VectorFamily) -> LinearMap:
    """S_{psi,phi} f = sum_x w_x <f, psi_x> phi_x."""
    check_compatible(psi, phi)
    mat = (phi.vectors * phi.weights[None, :]) @ psi.vectors.conj().T
    return LinearMap(mat * phi.metric[None, :], phi.metric)


def frame_operator(family: VectorFamily) -> LinearMap:
    return mixed_frame_operator(family, family)


def frame_bounds(family: VectorFamily) -> tuple[float, float]:
    """Optimal lower and upper frame bounds: extreme eigenvalues of S_psi."""
    b = family.scaled_array()
    # G^(1/2) S G^(-1/2) = B B^H, so the eigenvalues are squared singular
    # values of B; this resolves small bounds far below eps * M and gives
    # m = 0 exactly when N < d
    s = np.linalg.svd(b, compute_uv=False)
    m = float(s[-1] ** 2) if s.size == family.dim else 0.0
    return m, float(s[0] ** 2)


def spectral_summary(op: LinearMap) -> SpectralSummary:
    s = op.singular_values()
    smin, smax = float(s[-1]), float(s[0])
    cond = np.inf if smin < SIGMA_ZERO else smax / smin
    return SpectralSummary(smin, smax, float(cond))


def numerical_rank(a: np.ndarray, tol: float = DEFAULT_TOL) -> int:
    s = np.linalg.svd(a, compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > tol * s[0]))


def mu_total(family: VectorFamily, tol: float = DEFAULT_TOL) -> bool:
    """True iff Ker C_phi = {0}: the scaled array has numerical row rank d."""
    if tol <= 0:
        raise ValueError("tol must be > 0")
    return numerical_rank(family.scaled_array(), tol) == family.dim


def mu_independent(family: VectorFamily, tol: float = DEFAULT_TOL) -> tuple[bool, int]:
    """(Ker T_phi == {0}, dim Ker T_phi) at relative tolerance ``tol``."""
    if tol <= 0:
        raise ValueError("tol must be > 0")
    rank = numerical_rank(family.scaled_array(), tol)
    kdim = family.size - rank
    return kdim == 0, kdim


def synthesis_kernel(family: VectorFamily, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal (in L^2(mu)) basis of Ker T_phi, as an N x k array of coefficient vectors."""
    b = family.scaled_array()
    _, s, vh = np.linalg.svd(b)
    rank = int(np.sum(s > tol * s[0])) if s.size and s[0] > 0 else 0
    # rows of vh beyond the rank span Ker(B); undo the sqrt(w) scaling
    null = vh[rank:].conj().T
    return null / np.sqrt(family.weights)[:, None]
