"""Named example scenarios with default parameters and their check battery.

Each runner returns ``(result, curves, success)`` where ``success`` states
whether the scenario reproduced its expected behaviour.
"""
from __future__ import annotations

import numpy as np

from . import gallery as gal
from .hilbert import (
    frame_bounds,
    frame_operator,
    mixed_frame_operator,
    mu_independent,
)
from .pairs import (
    DEFAULT_TREND_TOL,
    check_pair,
    classify,
    construct_partner,
    partner_feasibility_trend,
)


def gaussian_hat(u):
    return np.exp(-np.pi * np.asarray(u, dtype=float) ** 2)


def gaussian_partner_hat(u):
    u = np.asarray(u, dtype=float)
    return np.abs(u) * np.exp(-np.pi * u ** 2)


def _max_abs(a):
    return float(np.max(np.abs(a)))


def _identity_error(op):
    return _max_abs(op.matrix - np.eye(op.dim))


def run_onb(dim=5, **_):
    fam = gal.onb(dim)
    m, M = frame_bounds(fam)
    indep, kdim = mu_independent(fam)
    pair = check_pair(fam, fam)
    ok = abs(m - 1) <= 1e-12 and abs(M - 1) <= 1e-12 and indep and pair.ok
    return {"dim": dim, "m": m, "M": M, "mu_independent": indep, "kernel_dim": kdim,
            "pair": pair.to_dict()}, {}, ok


def run_riesz(dim=4, seed=0, **_):
    rng = np.random.default_rng(seed)
    a = np.eye(dim) + 0.3 * (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(dim)
    fam = gal.riesz(a)
    m, M = frame_bounds(fam)
    s = np.linalg.svd(a, compute_uv=False)
    err = max(abs(m - s[-1] ** 2), abs(M - s[0] ** 2))
    return {"dim": dim, "m": m, "M": M, "sigma_min_A_sq": float(s[-1] ** 2),
            "sigma_max_A_sq": float(s[0] ** 2), "bound_error": err}, {}, err <= 1e-10


def run_weighted(dim=8, levels=3, trend_tol=DEFAULT_TREND_TOL, **_):
    dims = [dim * 2 ** k for k in range(levels)]
    fams = [gal.weighted(gal.onb(d), 1.0 / np.arange(1, d + 1)) for d in dims]
    cls = classify(fams, trend_tol)
    lower_ratio = [b[0] * d ** 2 for b, d in zip(cls.bounds_per_level, dims)]
    phi = fams[0]
    m = 1.0 / np.arange(1, dims[0] + 1)
    closed = gal.weighted(gal.onb(dims[0]), 1.0 / np.conj(m))
    closed_err = _identity_error(mixed_frame_operator(closed, phi))
    partner = construct_partner(phi)
    built_err = _identity_error(mixed_frame_operator(partner.psi, phi))
    ok = (cls.kind == "upper_semi_frame" and max(abs(r - 1) for r in lower_ratio) <= 1e-2
          and closed_err <= 1e-10 and built_err <= 1e-8)
    curves = {"lower_bound": list(enumerate(b[0] for b in cls.bounds_per_level)),
              "upper_bound": list(enumerate(b[1] for b in cls.bounds_per_level))}
    return {"dims": dims, "classification": cls.to_dict(), "lower_bound_times_d2": lower_ratio,
            "closed_form_partner_identity_error": closed_err,
            "constructed_partner_identity_error": built_err,
            "partner": {"feasible": partner.feasible,
                        "max_coefficient_norm": float(np.max(partner.coefficient_norm_rows))}}, curves, ok


def run_gabor_finite(dim=4, levels=3, **_):
    e1 = np.zeros(dim)
    e1[0] = 1
    full = gal.finite_gabor(e1, 1, 1)
    m, M = frame_bounds(full)
    ok = abs(m - dim) <= 1e-10 and abs(M - dim) <= 1e-10
    rows, conds = [], []
    for k in range(levels):
        side = 2 ** (k + 1)
        d = side * side
        t = np.arange(d) - d // 2
        g = np.exp(-np.pi * t ** 2 / d)
        fam = gal.finite_gabor(np.roll(g, -d // 2), side, side)
        lo, hi = frame_bounds(fam)
        cond = hi / lo if lo > 0 else float("inf")
        conds.append(cond)
        rows.append({"d": d, "a": side, "b": side, "m": lo, "M": hi, "cond": cond})
    return {"dense_case": {"dim": dim, "N": full.size, "m": m, "M": M},
            "critical_density": rows}, {"critical_cond": list(enumerate(conds))}, ok


def run_cwt_gaussian(dim=256, a_min=2.0 ** -6, a_max=2.0 ** 10, scales=65,
                     omega_min=1e-8, omega_max=6.0, points_per_decade=600, **_):
    c_exact = 2 ** -0.5
    prof_psi = gal.FrequencyProfile.log_grid(gaussian_partner_hat, omega_min, omega_max, points_per_decade)
    prof_phi = gal.FrequencyProfile.log_grid(gaussian_hat, omega_min, omega_max, points_per_decade)
    c = gal.cross_admissibility(prof_psi, prof_phi)
    rel = abs(c - c_exact) / c_exact
    div = gal.admissibility_divergence(gaussian_hat)

    a_grid = gal.scale_grid(a_min, a_max, scales)
    x = np.arange(dim)
    psi = gal.cwt_family(gaussian_partner_hat, x, a_grid, dim)
    phi = gal.cwt_family(gaussian_hat, x, a_grid, dim)
    S = mixed_frame_operator(psi, phi).matrix
    F = np.fft.fft(np.eye(dim), axis=0)
    S_hat = F @ S @ np.linalg.inv(F)
    nu = np.fft.fftfreq(dim)
    loss = gal.scale_truncation_loss(gaussian_partner_hat, gaussian_hat, a_min, a_max, nu)
    band = loss <= 0.5e-2 * c_exact
    block = S_hat[np.ix_(band, band)] - c.real * np.eye(int(band.sum()))
    band_dev = float(np.linalg.norm(block, 2) / c.real) if band.any() else float("inf")
    ok = rel <= 1e-6 and div["diverging"] and band_dev <= 1e-2
    return {
        "c_psi_phi": c, "c_exact": c_exact, "relative_error": rel,
        "grid": {"omega_min": omega_min, "omega_max": omega_max, "points_per_decade": points_per_decade,
                 "points": int(prof_phi.omega.size)},
        "c_phi_divergence": div,
        "cwt": {"dim": dim, "a_min": a_min, "a_max": a_max, "scales": scales, "columns": psi.size,
                "band_bins": sorted(set(int(round(abs(v) * dim)) for v in nu[band])),
                "band_relative_deviation": band_dev},
    }, {"c_phi_estimate": list(enumerate(div["estimates"]))}, ok


def run_affine_cs(levels=4, dr=0.05, n=1, r_start=2.0, **_):
    prof = gal.gaussian_profile(dr, int(round(3.0 / dr)), n)
    fam = gal.affine_cs_family(prof)
    S = frame_operator(fam).matrix
    diag = np.real(np.diag(S))
    off = _max_abs(S - np.diag(np.diag(S))) / np.max(np.abs(diag))
    sym = prof.symbol()
    const = float(np.dot(diag, sym) / np.dot(sym, sym))
    fit_err = float(np.max(np.abs(diag - const * sym)) / np.max(sym))
    over = gal.affine_cs_family(prof, 2 * prof.r.size)
    _, kdim = mu_independent(over)

    radii = [r_start + k for k in range(levels)]
    seq = [gal.affine_cs_family(gal.gaussian_profile(dr, int(round(R / dr)), n)) for R in radii]
    trend = partner_feasibility_trend(seq)
    ok = (off <= 1e-10 and fit_err <= 1e-10 and kdim == prof.r.size and trend.verdict == "diverging")
    curves = {"max_coefficient_norm": list(enumerate(trend.max_coefficient_norm)),
              "max_pointwise_sum": list(enumerate(trend.max_pointwise_sum))}
    return {
        "n": n, "dr": dr,
        "square_model": {"N_r": int(prof.r.size), "offdiag_relative": off,
                         "fitted_constant": const, "fit_relative_error": fit_err,
                         "frame_bounds": list(frame_bounds(fam))},
        "oversampled_model": {"N_x": over.size, "kernel_dim": kdim},
        "truncation_radii": radii, "trend": trend.to_dict(),
    }, curves, ok


def unit_spherical_case():
    a = np.linspace(1.0, 2.0, 9)
    return gal.SphericalCoefficients.from_degree_values(a, np.ones((1, a.size)))


def run_spherical(coeffs=None, m=None, M=None, **_):
    builtin = coeffs is None
    if builtin:
        coeffs = unit_spherical_case()
    s = gal.spherical_symbol(coeffs)
    result = {"L": coeffs.L, "a": coeffs.a, "symbol": s}
    ok = True
    if builtin:
        err = abs(s[0] - 3 * np.pi ** 2) / (3 * np.pi ** 2)
        result["expected_s0"] = 3 * np.pi ** 2
        result["relative_error"] = float(err)
        ok = err <= 1e-8
    if m is not None and M is not None:
        cond = gal.partner_condition(s, m, M)
        result["partner_condition"] = {"m": m, "M": M, "holds": cond}
        ok = ok and cond
    return result, {"symbol": list(enumerate(s))}, ok


SCENARIOS = {
    "onb": run_onb,
    "riesz": run_riesz,
    "weighted": run_weighted,
    "gabor-finite": run_gabor_finite,
    "cwt-gaussian": run_cwt_gaussian,
    "affine-cs": run_affine_cs,
    "spherical": run_spherical,
}
