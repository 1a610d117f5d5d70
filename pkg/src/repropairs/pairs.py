"""Reproducing pairs: verification, the spaces V_phi, duality, partners, kernels.

A pair (psi, phi) is a reproducing pair when the mixed operator
S_{psi,phi} f = sum_x w_x <f, psi_x> phi_x is bounded with bounded inverse.
In the finite model boundedness is automatic, so the verdict is a numerical
one: S must be far from singular and its condition number must not exceed
``kappa_max``.

Coefficient functions xi are elements of V_phi modulo Ker T_phi; the V_phi
norm is the norm of the synthesized vector T_phi xi.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .hilbert import (
    DEFAULT_TOL,
    SIGMA_ZERO,
    CoefficientFunction,
    LinearMap,
    MeasureGrid,
    SpectralSummary,
    VectorFamily,
    _check_grid,
    analyze,
    check_compatible,
    frame_bounds,
    mixed_frame_operator,
    mu_independent,
    mu_total,
    norm,
    numerical_rank,
    spectral_summary,
    synthesize,
)

DEFAULT_KAPPA_MAX = 1e8
# relative change per refinement level below which a frame bound counts as stable
DEFAULT_TREND_TOL = 1e-2
DIVERGENCE_FACTOR = 1.5
KERNEL_EIG_TOL = 1e-8
KERNEL_AMBIGUOUS = 0.1

REPRODUCING_PAIR = "reproducing_pair"
SINGULAR = "singular"
ILL_CONDITIONED = "ill_conditioned"


@dataclass(frozen=True, eq=False)
class PairReport:
    S: LinearMap
    summary: SpectralSummary
    kappa_max: float
    verdict: str
    tolerance_used: float

    @property
    def ok(self) -> bool:
        return self.verdict == REPRODUCING_PAIR

    def to_dict(self):
        out = self.summary.to_dict()
        out.update(
            verdict=self.verdict, kappa_max=self.kappa_max, tolerance_used=self.tolerance_used
        )
        return out


@dataclass(frozen=True)
class Classification:
    kind: str
    bounds_per_level: list
    trend: str

    def to_dict(self):
        return {
            "kind": self.kind,
            "bounds_per_level": [list(b) for b in self.bounds_per_level],
            "trend": self.trend,
        }


@dataclass(frozen=True, eq=False)
class PartnerReport:
    psi: VectorFamily | None
    coefficient_norm_rows: np.ndarray
    pointwise_sums: np.ndarray
    feasible: bool
    coefficients: np.ndarray | None = None

    def to_dict(self):
        return {
            "feasible": self.feasible,
            "coefficient_norm_rows": list(map(float, self.coefficient_norm_rows)),
            "pointwise_sums": list(map(float, self.pointwise_sums)),
        }


@dataclass(frozen=True)
class PartnerTrend:
    max_coefficient_norm: list
    max_pointwise_sum: list
    feasible: list
    verdict: str

    def to_dict(self):
        return {
            "max_coefficient_norm": list(self.max_coefficient_norm),
            "max_pointwise_sum": list(self.max_pointwise_sum),
            "feasible": list(self.feasible),
            "verdict": self.verdict,
        }


def check_pair(psi: VectorFamily, phi: VectorFamily, kappa_max: float = DEFAULT_KAPPA_MAX) -> PairReport:
    """Compute S_{psi,phi}, its extreme singular values and a verdict.

    ``singular`` means sigma_min is at the rounding level of sigma_max
    (d * machine epsilon, relative); ``ill_conditioned`` means invertible in
    floating point but with cond > kappa_max.
    """
    if kappa_max < 1:
        raise ValueError("kappa_max must be >= 1")
    S = mixed_frame_operator(psi, phi)
    summary = spectral_summary(S)
    tol = S.dim * np.finfo(float).eps
    if summary.sigma_min < SIGMA_ZERO or summary.sigma_min <= tol * summary.sigma_max:
        verdict = SINGULAR
    elif summary.cond > kappa_max:
        verdict = ILL_CONDITIONED
    else:
        verdict = REPRODUCING_PAIR
    return PairReport(S, summary, float(kappa_max), verdict, float(tol))


def _require_pair(psi, phi, kappa_max=DEFAULT_KAPPA_MAX) -> PairReport:
    report = check_pair(psi, phi, kappa_max)
    if not report.ok:
        raise ValueError(f"not a reproducing pair: verdict {report.verdict}, cond {report.summary.cond:.3g}")
    return report


def _rel_change(a, b):
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0 else abs(b - a) / scale


def classify(family_sequence, tol: float = DEFAULT_TREND_TOL, rank_tol: float = DEFAULT_TOL) -> Classification:
    """Classify a refinement/truncation sequence of families by their frame bounds.

    A bound is stable when its relative change between consecutive levels is
    at most ``tol``; it decays (grows) when it shrinks (increases) by a
    factor of more than 1 + tol at every level.
    """
    seq = list(family_sequence)
    if not seq:
        raise ValueError("classify needs at least one family")
    bounds = [frame_bounds(f) for f in seq]
    total = mu_total(seq[-1], rank_tol)
    if len(seq) == 1:
        if total:
            return Classification("frame", bounds, "stable")
        raise ValueError("a single level cannot separate semi-frames; pass a refinement sequence")

    lower = [b[0] for b in bounds]
    upper = [b[1] for b in bounds]

    def stable(v):
        return all(_rel_change(a, b) <= tol for a, b in zip(v, v[1:]))

    def decaying(v):
        return all(a > (1 + tol) * b for a, b in zip(v, v[1:]))

    def growing(v):
        return all(b > (1 + tol) * a for a, b in zip(v, v[1:]))

    if growing(upper):
        trend = "upper_bound_growing"
    elif decaying(lower):
        trend = "lower_bound_decaying"
    else:
        trend = "stable"

    m_stable, M_stable = stable(lower), stable(upper)
    if M_stable and not total:
        kind = "bessel_not_total"
    elif M_stable and m_stable and total:
        kind = "frame"
    elif M_stable and decaying(lower) and total:
        kind = "upper_semi_frame"
    elif m_stable and growing(upper) and total:
        kind = "lower_semi_frame"
    else:
        kind = "not_total"
    return Classification(kind, bounds, trend)


def v_norm(phi: VectorFamily, xi: CoefficientFunction) -> float:
    """The V_phi norm of the class of xi: the norm of T_phi xi."""
    return norm(synthesize(phi, xi), phi.metric)


def v_inner(phi: VectorFamily, xi: CoefficientFunction, eta: CoefficientFunction) -> complex:
    a = synthesize(phi, xi)
    b = synthesize(phi, eta)
    return complex(np.sum(phi.metric * a * b.conj()))


def quotient_equal(phi: VectorFamily, xi, xi2, tol: float = DEFAULT_TOL) -> bool:
    """True iff xi and xi2 define the same element of V_phi = V/Ker T_phi."""
    return v_norm(phi, xi - xi2) <= tol * max(1.0, v_norm(phi, xi))


def dual_pairing(xi, eta, grid: MeasureGrid | None = None) -> complex:
    """<<xi, eta>> = sum_x w_x xi(x) conj(eta(x))."""
    if grid is None:
        grid = xi.grid
    a = xi.values if isinstance(xi, CoefficientFunction) else np.asarray(xi)
    b = eta.values if isinstance(eta, CoefficientFunction) else np.asarray(eta)
    if a.shape != (grid.size,) or b.shape != (grid.size,):
        raise ValueError("coefficient functions must be aligned with the grid")
    return complex(np.sum(grid.weights * a * b.conj()))


def _range_basis(phi: VectorFamily, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of the closure of Ran T_phi in metric-orthonormal coordinates."""
    u, s, _ = np.linalg.svd(phi.scaled_array(), full_matrices=False)
    rank = int(np.sum(s > tol * s[0])) if s.size and s[0] > 0 else 0
    return u[:, :rank]


def dual_norm(phi: VectorFamily, g, tol: float = DEFAULT_TOL) -> float:
    """Norm of C_phi g in the dual of V_phi: |projection of g onto Ran T_phi|."""
    g = np.asarray(g, dtype=complex)
    u = _range_basis(phi, tol)
    return float(np.linalg.norm(u.conj().T @ (np.sqrt(phi.metric) * g)))


def hat_c_bounds(psi: VectorFamily, phi: VectorFamily) -> tuple[float, float]:
    """Optimal m, M with m|f| <= |[C_psi f]|_phi <= M|f|.

    Since |[C_psi f]|_phi = |S_{psi,phi} f| these are the extreme singular
    values of S_{psi,phi}.
    """
    summary = spectral_summary(mixed_frame_operator(psi, phi))
    return summary.sigma_min, summary.sigma_max


def represent_functional(psi: VectorFamily, phi: VectorFamily, eta: CoefficientFunction,
                         kappa_max: float = DEFAULT_KAPPA_MAX) -> np.ndarray:
    """The vector g with [eta]_psi = [C_phi g]_psi.

    eta defines the functional xi -> <<xi, eta>> on V_phi; testing it on
    xi = C_psi f gives <f, T_psi eta> = <S f, g>, hence g = (S*)^-1 T_psi eta.
    """
    report = _require_pair(psi, phi, kappa_max)
    return np.linalg.solve(report.S.adjoint().matrix, synthesize(psi, eta))


def construct_partner(phi: VectorFamily, basis=None, tol: float = DEFAULT_TOL) -> PartnerReport:
    """Build psi with S_{psi,phi} = I from minimal-norm preimages of a basis.

    For each basis vector e_n, xi_n is the L^2(mu)-minimal solution of
    T_phi xi = e_n, and psi_x = sum_n conj(xi_n(x)) e_n. ``basis`` is a
    d x d unitary whose columns are taken as a metric-orthonormal basis
    (e_n = G^(-1/2) u_n); the standard basis by default.
    """
    d, n = phi.dim, phi.size
    u_basis = np.eye(d, dtype=complex) if basis is None else np.asarray(basis, dtype=complex)
    if u_basis.shape != (d, d):
        raise ValueError(f"basis must be {d} x {d}")
    if not np.allclose(u_basis.conj().T @ u_basis, np.eye(d), atol=1e-10):
        raise ValueError("basis must be unitary")

    b = phi.scaled_array()
    u, s, vh = np.linalg.svd(b, full_matrices=False)
    rank = int(np.sum(s > tol * s[0])) if s.size and s[0] > 0 else 0
    if rank < d:
        return PartnerReport(None, np.zeros(0), np.zeros(0), False)

    # B xi' = u_n with xi' = sqrt(w) xi; minimal |xi'| is pinv(B) u_n
    pinv = (vh.conj().T / s[None, :]) @ u.conj().T
    sw = np.sqrt(phi.weights)
    xi = (pinv @ u_basis) / sw[:, None]          # N x d, column n is xi_n
    e = u_basis / np.sqrt(phi.metric)[:, None]    # metric-orthonormal basis e_n
    psi_vectors = e @ xi.conj().T
    psi = phi.with_vectors(psi_vectors)

    row_norms = np.sqrt(np.sum(phi.weights[:, None] * np.abs(xi) ** 2, axis=0))
    pointwise = np.sum(np.abs(xi) ** 2, axis=1)
    return PartnerReport(psi, row_norms, pointwise, True, xi.T.copy())


def partner_feasibility_trend(phi_sequence, factor: float = DIVERGENCE_FACTOR) -> PartnerTrend:
    """Run construct_partner per level; ``diverging`` if both diagnostics
    grow by at least ``factor`` at every step."""
    norms, sums, feas = [], [], []
    for phi in phi_sequence:
        rep = construct_partner(phi)
        feas.append(rep.feasible)
        if rep.feasible:
            norms.append(float(np.max(rep.coefficient_norm_rows)))
            sums.append(float(np.max(rep.pointwise_sums)))
        else:
            norms.append(float("inf"))
            sums.append(float("inf"))
    if not all(feas):
        verdict = "infeasible"
    elif len(norms) >= 2 and all(
        b >= factor * a for v in (norms, sums) for a, b in zip(v, v[1:])
    ):
        verdict = "diverging"
    else:
        verdict = "stable"
    return PartnerTrend(norms, sums, feas, verdict)


def decompose_partner(theta: VectorFamily, psi: VectorFamily, phi: VectorFamily,
                      kappa_max: float = DEFAULT_KAPPA_MAX):
    """Write theta = A psi + theta0 with [C_theta0 f]_phi = 0.

    Returns (A, theta0, residual) where A = S_{phi,theta} (S_{psi,phi}^-1)*
    and residual is the largest singular value of S_{theta0,phi}.
    """
    s_psi = _require_pair(psi, phi, kappa_max).S
    _require_pair(theta, phi, kappa_max)
    s_phi_theta = mixed_frame_operator(phi, theta)
    a = s_phi_theta @ s_psi.inverse().adjoint()
    theta0 = theta.with_vectors(theta.vectors - a.matrix @ psi.vectors)
    residual = spectral_summary(mixed_frame_operator(theta0, phi)).sigma_max
    return a, theta0, residual


def kernel_projection(psi: VectorFamily, phi: VectorFamily, kappa_max: float = DEFAULT_KAPPA_MAX) -> np.ndarray:
    """K[i, j] = w_j <S^-1 phi_j, psi_i>, i.e. K = C_psi S^-1 T_phi.

    K is an idempotent on coefficient space whose 1-eigenspace is Ran C_psi
    and whose 0-eigenspace is Ker T_phi.
    """
    report = check_pair(psi, phi, kappa_max)
    if report.verdict == SINGULAR:
        raise ValueError("S_{psi,phi} is singular; the reproducing kernel is undefined")
    sinv_phi = np.linalg.solve(report.S.matrix, phi.vectors)
    return (psi.vectors.conj().T * psi.metric[None, :]) @ sinv_phi * phi.weights[None, :]


def kernel_spectrum(k: np.ndarray, tol: float = KERNEL_EIG_TOL) -> dict:
    """Eigenvalues of a reproducing kernel clustered to {0, 1}.

    Raises ValueError if an eigenvalue lies farther than 0.1 from both.
    """
    ev = np.linalg.eigvals(k)
    d0 = np.abs(ev)
    d1 = np.abs(ev - 1)
    if np.any(np.minimum(d0, d1) > KERNEL_AMBIGUOUS):
        bad = ev[np.minimum(d0, d1) > KERNEL_AMBIGUOUS]
        raise ValueError(f"kernel has eigenvalues away from {{0, 1}}: {bad[:5]}")
    ones = d1 < d0
    deviation = float(np.max(np.where(ones, d1, d0))) if ev.size else 0.0
    return {
        "ones": int(np.sum(ones)),
        "zeros": int(np.sum(~ones)),
        "max_deviation": deviation,
        "within_tol": deviation <= tol,
        "idempotence_error": float(np.max(np.abs(k @ k - k))) if k.size else 0.0,
        "trace": complex(np.trace(k)),
    }


def vspace_riesz_map(phi: VectorFamily, psi: VectorFamily, eta: CoefficientFunction) -> CoefficientFunction:
    """x_i -> sum_j w_j eta_j <phi_j, phi_i>, the map V_phi -> V_psi.

    It satisfies <<xi, result>> = <xi, eta>_(phi) for every xi; the result
    equals C_phi T_phi eta.
    """
    check_compatible(psi, phi)
    return analyze(phi, synthesize(phi, eta))


def riesz_representative(phi: VectorFamily, psi: VectorFamily, eta: CoefficientFunction,
                         kappa_max: float = DEFAULT_KAPPA_MAX) -> CoefficientFunction:
    """The V_phi element eta' with <xi, eta'>_(phi) = <<K xi, eta>> for all xi.

    K is the reproducing kernel, so K xi is the representative of [xi]_phi
    inside Ran C_psi, where the pairing with eta is well defined. This is the
    inverse of ``vspace_riesz_map`` on quotient classes; eta is read as an
    element of V_psi and the representative C_psi S^-1 (S*)^-1 T_psi eta is
    returned.
    """
    s = _require_pair(psi, phi, kappa_max).S
    h = np.linalg.solve(s.adjoint().matrix, synthesize(psi, eta))
    return analyze(psi, np.linalg.solve(s.matrix, h))


@dataclass(frozen=True)
class DegeneracyReport:
    complement_dim: int
    phi_kernel_dim: int
    phi_mu_independent: bool
    consistent: bool
    caveat: str = (
        "finite discretizations are always Bessel; the check is structural only"
    )

    def to_dict(self):
        return dict(self.__dict__)


def bessel_degeneracy_check(psi: VectorFamily, phi: VectorFamily, tol: float = DEFAULT_TOL,
                            kappa_max: float = DEFAULT_KAPPA_MAX) -> DegeneracyReport:
    """If (Ran C_psi)^perp is nontrivial then phi must fail to be mu-independent."""
    _require_pair(psi, phi, kappa_max)
    complement = psi.size - numerical_rank(psi.scaled_array(), tol)
    indep, kdim = mu_independent(phi, tol)
    consistent = (complement == 0) or (not indep)
    return DegeneracyReport(complement, kdim, indep, consistent)
