"""Concrete families: bases, weighted systems, finite Gabor systems, 1D wavelets,
affine coherent states, and spherical wavelet symbols.

Quadrature is trapezoidal throughout, applied in the variable that makes the
relevant measure flat: ln(omega) for d omega/|omega|, ln(a) for da/a^2 and
a^-2 for da/a^3.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .hilbert import (
    DEFAULT_TOL,
    CoefficientFunction,
    LinearMap,
    MeasureGrid,
    VectorFamily,
    norm,
    numerical_rank,
)


def trapezoid_weights(t) -> np.ndarray:
    """Trapezoidal weights on a strictly monotone grid."""
    t = np.asarray(t, dtype=float)
    if t.size == 1:
        return np.ones(1)
    dt = np.abs(np.diff(t))
    w = np.zeros_like(t)
    w[:-1] += dt / 2
    w[1:] += dt / 2
    return w


# ---------------------------------------------------------------- discrete systems

def onb(d: int) -> VectorFamily:
    """Standard orthonormal basis of C^d on the counting measure."""
    return VectorFamily(MeasureGrid.counting(d), np.eye(d, dtype=complex))


def riesz(a) -> VectorFamily:
    """Riesz basis r_n = A e_n."""
    mat = a.matrix if isinstance(a, LinearMap) else np.asarray(a, dtype=complex)
    d = mat.shape[0]
    if mat.shape != (d, d) or numerical_rank(mat, DEFAULT_TOL) < d:
        raise ValueError("A must be an invertible square matrix")
    return VectorFamily(MeasureGrid.counting(d), mat)


def weighted(theta: VectorFamily, m) -> VectorFamily:
    """The family {m_n theta_n}."""
    m = np.asarray(m, dtype=complex)
    if m.shape != (theta.size,):
        raise ValueError(f"need {theta.size} multipliers, got shape {m.shape}")
    if np.any(m == 0):
        raise ValueError("multipliers must be nonzero")
    return theta.with_vectors(theta.vectors * m[None, :])


def weighted_sequence_norm(xi, m) -> float:
    """|xi|_{l2_m} = (sum_n |xi_n m_n|^2)^(1/2).

    This is the V_psi norm of psi = {m_n theta_n} for an orthonormal basis
    theta; the square root makes it a norm.
    """
    xi = xi.values if isinstance(xi, CoefficientFunction) else np.asarray(xi)
    return float(np.sqrt(np.sum(np.abs(xi * np.asarray(m)) ** 2)))


def finite_gabor(g, a: int, b: int) -> VectorFamily:
    """Cyclic Gabor system {M_{bm} T_{an} g} on C^d.

    Column (n, m) is exp(2 pi i b m k / d) g[(k - a n) mod d]; n runs over
    d/a translations (outer), m over d/b modulations (inner).
    """
    g = np.asarray(g, dtype=complex)
    d = g.shape[0]
    if a < 1 or b < 1 or d % a or d % b:
        raise ValueError(f"a={a} and b={b} must divide d={d}")
    if not np.any(g):
        raise ValueError("the Gabor window must be nonzero")
    k = np.arange(d)
    shifts = np.arange(0, d, a)
    mods = np.arange(0, d, b)
    cols = []
    points = []
    for s in shifts:
        tg = np.roll(g, s)
        for f in mods:
            cols.append(np.exp(2j * np.pi * f * k / d) * tg)
            points.append((s, f))
    grid = MeasureGrid(np.array(points, dtype=float), np.ones(len(points)))
    return VectorFamily(grid, np.array(cols).T)


# ---------------------------------------------------------------- 1D wavelets

@dataclass(frozen=True, eq=False)
class FrequencyProfile:
    """Samples of a Fourier window on a grid that excludes omega = 0."""

    omega: np.ndarray
    values: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        omega = np.asarray(self.omega, dtype=float)
        values = np.asarray(self.values, dtype=complex)
        weights = np.asarray(self.weights, dtype=float)
        if omega.ndim != 1 or values.shape != omega.shape or weights.shape != omega.shape:
            raise ValueError("omega, values and weights must be 1-d arrays of equal length")
        if np.any(omega == 0):
            raise ValueError("frequency grids must exclude omega = 0")
        if np.any(weights <= 0):
            raise ValueError("quadrature weights must be > 0")
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def on_grid(cls, omega, values) -> "FrequencyProfile":
        """Trapezoidal weights for d omega, computed per side of the origin."""
        omega = np.asarray(omega, dtype=float)
        order = np.argsort(omega)
        omega, values = omega[order], np.asarray(values, dtype=complex)[order]
        w = np.zeros_like(omega)
        for side in (omega < 0, omega > 0):
            if side.any():
                w[side] = trapezoid_weights(omega[side])
        return cls(omega, values, w)

    @classmethod
    def log_grid(cls, fn: Callable, omega_min: float, omega_max: float,
                 points_per_decade: int = 200, symmetric: bool = True) -> "FrequencyProfile":
        """Sample ``fn`` on a geometric grid in [omega_min, omega_max] (and its mirror).

        Weights are trapezoidal in ln|omega| times |omega|, i.e. they integrate
        d omega; the rule is smooth-integrand accurate for d omega/|omega|.
        """
        if not 0 < omega_min < omega_max:
            raise ValueError("need 0 < omega_min < omega_max")
        n = max(2, int(np.ceil(points_per_decade * np.log10(omega_max / omega_min))) + 1)
        t = np.linspace(np.log(omega_min), np.log(omega_max), n)
        pos = np.exp(t)
        wpos = trapezoid_weights(t) * pos
        if symmetric:
            omega = np.concatenate([-pos[::-1], pos])
            w = np.concatenate([wpos[::-1], wpos])
        else:
            omega, w = pos, wpos
        return cls(omega, np.asarray(fn(omega), dtype=complex), w)

    @property
    def omega_min(self) -> float:
        return float(np.min(np.abs(self.omega)))

    def __call__(self, u):
        """Linear interpolation of the samples; zero outside the sampled range."""
        u = np.asarray(u, dtype=float)
        re = np.interp(u, self.omega, self.values.real, left=0.0, right=0.0)
        im = np.interp(u, self.omega, self.values.imag, left=0.0, right=0.0)
        return re + 1j * im


def admissibility(phi_hat: FrequencyProfile) -> float:
    """c_phi = sum_k w_k |phi_hat(omega_k)|^2 / |omega_k|."""
    return float(np.sum(phi_hat.weights * np.abs(phi_hat.values) ** 2 / np.abs(phi_hat.omega)))


def cross_admissibility(psi_hat: FrequencyProfile, phi_hat: FrequencyProfile) -> complex:
    """c_{psi,phi} = sum_k w_k conj(psi_hat_k) phi_hat_k / |omega_k|."""
    if not (np.array_equal(psi_hat.omega, phi_hat.omega) and np.array_equal(psi_hat.weights, phi_hat.weights)):
        raise ValueError("profiles must share the frequency grid")
    integrand = psi_hat.values.conj() * phi_hat.values / np.abs(phi_hat.omega)
    return complex(np.sum(phi_hat.weights * integrand))


def admissibility_divergence(fn: Callable, omega_mins=(1e-1, 1e-2, 1e-3), omega_max: float = 10.0,
                             points_per_decade: int = 200) -> dict:
    """Estimate c_phi with the grid pushed toward omega = 0 and flag divergence.

    The integral is flagged divergent when the estimates increase strictly and
    the last increment is at least half the previous one (log-type growth; a
    convergent tail would shrink its increments geometrically).
    """
    mins = sorted(omega_mins, reverse=True)
    est = [admissibility(FrequencyProfile.log_grid(fn, w, omega_max, points_per_decade)) for w in mins]
    inc = np.diff(est)
    diverging = bool(len(est) >= 3 and np.all(inc > 0) and inc[-1] >= 0.5 * inc[-2])
    return {"omega_min": list(mins), "estimates": est, "increments": inc.tolist(), "diverging": diverging}


def scale_grid(a_min: float, a_max: float, n: int) -> MeasureGrid:
    """Geometric scales with weights for da/a^2 (trapezoid in ln a)."""
    if not 0 < a_min < a_max or n < 2:
        raise ValueError("need 0 < a_min < a_max and n >= 2")
    t = np.linspace(np.log(a_min), np.log(a_max), n)
    a = np.exp(t)
    return MeasureGrid(a, trapezoid_weights(t) / a)


def cwt_family(phi_hat, x_grid, a_grid: MeasureGrid, d: int, reflections: bool = True) -> VectorFamily:
    """Wavelets T_x D_a phi on periodic signals of length d.

    Each atom is defined through its DFT, sqrt(|a|) phi_hat(a nu) exp(-2 pi i nu x)
    with nu = fftfreq(d), and the column is its inverse FFT. ``x_grid`` holds
    integer shifts (weight 1 each); ``a_grid`` holds positive scales with
    weights for da/a^2. With ``reflections`` the scales -a are added as well,
    i.e. the affine group with a in R \\ {0}, so that S_{psi,phi} tends to
    c_{psi,phi} I on every frequency band the scales cover.

    ``phi_hat`` is a callable or a FrequencyProfile (linearly interpolated).
    Columns are ordered by sign, then scale, then shift.
    """
    x = np.asarray(x_grid, dtype=float)
    nu = np.fft.fftfreq(d)
    signs = (1.0, -1.0) if reflections else (1.0,)
    phase = np.exp(-2j * np.pi * np.outer(nu, x))   # d x len(x)
    blocks, pts, wts = [], [], []
    for sgn in signs:
        for a, wa in zip(a_grid.points.ravel(), a_grid.weights):
            hat = np.sqrt(a) * np.asarray(phi_hat(sgn * a * nu), dtype=complex)
            blocks.append(np.fft.ifft(hat[:, None] * phase, axis=0))
            pts.extend((xi, sgn * a) for xi in x)
            wts.append(np.full(x.size, wa))
    grid = MeasureGrid(np.array(pts), np.concatenate(wts))
    return VectorFamily(grid, np.hstack(blocks))


# ---------------------------------------------------------------- affine coherent states

@dataclass(frozen=True, eq=False)
class RadialProfile:
    """psi(r) sampled on a uniform grid in (0, inf), as an element of H_n."""

    r: np.ndarray
    values: np.ndarray
    n: int = 1

    def __post_init__(self):
        r = np.asarray(self.r, dtype=float)
        values = np.asarray(self.values, dtype=complex)
        if r.ndim != 1 or values.shape != r.shape:
            raise ValueError("r and values must be 1-d arrays of equal length")
        if np.any(r <= 0) or np.any(np.diff(r) <= 0):
            raise ValueError("r values must be strictly positive and increasing")
        if int(self.n) != self.n or self.n < 1:
            raise ValueError("n must be a positive integer")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_function(cls, fn: Callable, dr: float, count: int, n: int = 1) -> "RadialProfile":
        r = dr * np.arange(1, count + 1)
        return cls(r, fn(r), n)

    @property
    def dr(self) -> float:
        if self.r.size == 1:
            return float(self.r[0])
        steps = np.diff(self.r)
        if not np.allclose(steps, steps[0], rtol=1e-9, atol=0):
            raise ValueError("the affine coherent-state model needs a uniform r-grid")
        return float(steps[0])

    @property
    def metric(self) -> np.ndarray:
        """Weights of L^2(R+, r^(n-1) dr) on the grid."""
        return self.r ** (self.n - 1) * self.dr

    def symbol(self) -> np.ndarray:
        """s(r) = 2 pi r^(n-1) |psi(r)|^2."""
        return 2 * np.pi * self.r ** (self.n - 1) * np.abs(self.values) ** 2


def gaussian_profile(dr: float, count: int, n: int = 1) -> RadialProfile:
    """Profile with symbol s(r) = exp(-r^2), so sup s = 1 (approached as r -> 0)."""
    return RadialProfile.from_function(
        lambda r: r ** ((1 - n) / 2) * np.exp(-r ** 2 / 2) / np.sqrt(2 * np.pi), dr, count, n
    )


def affine_x_grid(profile: RadialProfile, x_count: int | None = None) -> MeasureGrid:
    """x_j = 2 pi j / (N_x dr), the grid DFT-dual to the r-grid, weights dx."""
    nx = profile.r.size if x_count is None else int(x_count)
    if nx < 1:
        raise ValueError("x_count must be >= 1")
    dx = 2 * np.pi / (nx * profile.dr)
    return MeasureGrid(dx * np.arange(nx), np.full(nx, dx))


def affine_cs_family(profile: RadialProfile, x_count: int | None = None) -> VectorFamily:
    """psi_x(r) = exp(-i x r) psi(r) in C^{N_r} with metric r^(n-1) dr.

    With x_count = N_r the frame operator is exactly the multiplication by
    the symbol s(r_i); a larger x_count oversamples X and gives Ker T_psi of
    dimension x_count - N_r.
    """
    grid = affine_x_grid(profile, x_count)
    vectors = np.exp(-1j * np.outer(profile.r, grid.points)) * profile.values[:, None]
    return VectorFamily(grid, vectors, profile.metric)


def affine_fourier(profile: RadialProfile, xi: CoefficientFunction) -> np.ndarray:
    """xi_hat(r_i) = sum_j dx xi_j exp(-i x_j r_i), evaluated with one FFT."""
    grid = xi.grid
    nx = grid.size
    dr = profile.dr
    dx = grid.weights[0]
    if not np.allclose(grid.points, dx * np.arange(nx), rtol=1e-12, atol=0) or not np.isclose(dx * nx * dr, 2 * np.pi):
        raise ValueError("xi must live on the DFT-dual x-grid of the profile")
    k = profile.r / dr
    base = np.round(k - k[0]).astype(int)
    offset = k[0]
    # exp(-i x_j r_i) = exp(-2 pi i j (base_i + offset) / nx)
    twisted = xi.values * np.exp(-2j * np.pi * np.arange(nx) * offset / nx)
    spec = np.fft.fft(twisted)
    return dx * spec[base % nx]


def affine_vnorm(profile: RadialProfile, xi: CoefficientFunction) -> float:
    """|xi|_psi = | xi_hat psi | in H_n."""
    return norm(affine_fourier(profile, xi) * profile.values, profile.metric)


# ---------------------------------------------------------------- spherical wavelets

def cubic_scale_weights(a) -> np.ndarray:
    """Weights for da/a^3: trapezoid in u = a^-2 (da/a^3 = -du/2).

    Exact for integrands affine in a^-2.
    """
    a = np.asarray(a, dtype=float)
    if np.any(a <= 0) or np.any(np.diff(a) <= 0):
        raise ValueError("scales must be positive and increasing")
    return trapezoid_weights(a ** -2.0) / 2


@dataclass(frozen=True, eq=False)
class SphericalCoefficients:
    """Values of (D_a phi)^(l, n) for l <= L, |n| <= l on an a-grid.

    ``coeffs[l, n + L, k]``; entries with |n| > l must be zero. ``weights``
    integrate da/a^3 (default: ``cubic_scale_weights``).
    """

    a: np.ndarray
    coeffs: np.ndarray
    weights: np.ndarray = None

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float)
        c = np.asarray(self.coeffs, dtype=complex)
        if a.ndim != 1 or np.any(a <= 0):
            raise ValueError("scales must be a 1-d array of positive values")
        if c.ndim != 3 or c.shape[1] != 2 * c.shape[0] - 1 or c.shape[2] != a.size:
            raise ValueError(f"coeffs must have shape (L+1, 2L+1, {a.size}), got {c.shape}")
        L = c.shape[0] - 1
        l_idx = np.arange(L + 1)[:, None]
        n_idx = np.arange(-L, L + 1)[None, :]
        if np.any(c[np.abs(n_idx) > l_idx]):
            raise ValueError("coefficients with |n| > l must vanish")
        w = cubic_scale_weights(a) if self.weights is None else np.asarray(self.weights, dtype=float)
        if w.shape != a.shape or np.any(w < 0):
            raise ValueError("a-weights must be nonnegative and match the a-grid")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "weights", w)

    @property
    def L(self) -> int:
        return self.coeffs.shape[0] - 1

    @classmethod
    def from_degree_values(cls, a, values) -> "SphericalCoefficients":
        """Coefficients equal to values[l, k] for every |n| <= l."""
        values = np.asarray(values, dtype=complex)
        L = values.shape[0] - 1
        c = np.zeros((L + 1, 2 * L + 1, len(a)), dtype=complex)
        for l in range(L + 1):
            c[l, L - l:L + l + 1, :] = values[l]
        return cls(a, c)


def spherical_cross_symbol(cpsi: SphericalCoefficients, cphi: SphericalCoefficients) -> np.ndarray:
    """s_{psi,phi}(l) = 8 pi^2/(2l+1) sum_n int psi_hat conj(phi_hat) da/a^3."""
    if cpsi.coeffs.shape != cphi.coeffs.shape or not np.array_equal(cpsi.a, cphi.a):
        raise ValueError("coefficient grids must match")
    integrand = cpsi.coeffs * cphi.coeffs.conj()
    total = np.einsum("lnk,k->l", integrand, cphi.weights)
    l = np.arange(cphi.L + 1)
    return 8 * np.pi ** 2 / (2 * l + 1) * total


def spherical_symbol(c: SphericalCoefficients) -> np.ndarray:
    return spherical_cross_symbol(c, c).real


def partner_condition(s, m: float, M: float) -> bool:
    """m <= |s(l)| <= M for every computed degree l."""
    s = np.abs(np.asarray(s))
    return bool(np.all(s >= m) and np.all(s <= M))


def scale_truncation_loss(psi_hat: Callable, phi_hat: Callable, a_min: float, a_max: float,
                          nu, reflections: bool = True) -> np.ndarray:
    """|c_{psi,phi} - int_{a_min}^{a_max} conj(psi_hat(a nu)) phi_hat(a nu) da/a| per frequency.

    Continuum reference for how much of the cross-admissibility integral a
    finite scale range misses at frequency nu, by adaptive quadrature in
    ln a (independent of any grid).
    """
    from scipy.integrate import quad

    def integral(v, lo, hi):
        total = 0j
        for sgn in ((1.0, -1.0) if reflections else (1.0,)):
            f = lambda t: np.conj(psi_hat(sgn * np.exp(t) * v)) * phi_hat(sgn * np.exp(t) * v)
            total += quad(lambda t: f(t).real, lo, hi, limit=400)[0]
            total += 1j * quad(lambda t: f(t).imag, lo, hi, limit=400)[0]
        return total

    # the full integral does not depend on nu > 0; with nu = 1 it is c over the sides used
    full = integral(1.0, -60.0, 60.0)
    out = []
    for v in np.atleast_1d(nu):
        if v == 0:
            out.append(abs(full))
        else:
            # reflections make the sign of nu irrelevant
            out.append(abs(full - integral(abs(v) if reflections else v, np.log(a_min), np.log(a_max))))
    return np.array(out)
