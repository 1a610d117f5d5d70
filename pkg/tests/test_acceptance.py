"""Acceptance criteria 1-10, one test each; every test prints one PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -s`` to see the lines inline; they are
also collected into the terminal summary of any pytest run.
"""
import time

import numpy as np
from scipy.linalg import null_space, orth, subspace_angles

from repropairs import (
    CoefficientFunction,
    analyze,
    check_pair,
    classify,
    construct_partner,
    decompose_partner,
    dual_norm,
    dual_pairing,
    frame_bounds,
    frame_operator,
    inner,
    kernel_projection,
    kernel_spectrum,
    mixed_frame_operator,
    mu_independent,
    mu_total,
    norm,
    partner_feasibility_trend,
    quotient_equal,
    represent_functional,
    synthesis_kernel,
    synthesize,
)
from repropairs import gallery as gal
from repropairs.cli import main
from repropairs.fileio import write_family
from repropairs.scenarios import SCENARIOS, gaussian_hat, gaussian_partner_hat

from helpers import crandn, random_family, random_metric, rank_deficient_family


def _verified_pair(rng, d, n):
    """A random pair on a random grid and metric that passes check_pair."""
    metric = random_metric(rng, d)
    while True:
        phi = random_family(rng, d, n, metric=metric)
        psi = phi.with_vectors(phi.vectors + 0.5 * crandn(rng, d, n) / np.sqrt(n))
        if check_pair(psi, phi, kappa_max=1e6).ok:
            return psi, phi


def _rel(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


# ---------------------------------------------------------------- 1

def test_criterion_01_operator_identities(record):
    rng = np.random.default_rng(0)
    t0 = time.perf_counter()
    worst = {"adjoint": 0.0, "form": 0.0, "swap": 0.0}
    for _ in range(200):
        d = int(rng.integers(1, 9))
        n = int(rng.integers(1, 33))
        metric = random_metric(rng, d)
        psi = random_family(rng, d, n, metric=metric)
        phi = psi.with_vectors(crandn(rng, d, n))
        w = phi.weights
        xi, f, g = crandn(rng, n), crandn(rng, d), crandn(rng, d)

        lhs = inner(synthesize(phi, xi), g, metric)
        rhs = np.sum(w * xi * analyze(phi, g).values.conj())
        worst["adjoint"] = max(worst["adjoint"], _rel(lhs, rhs))

        S = mixed_frame_operator(psi, phi)
        lhs = inner(S @ f, g, metric)
        # sum_i w_i <f, psi_i><phi_i, g>, with <phi_i, g> = conj(<g, phi_i>)
        rhs = np.sum(w * analyze(psi, f).values * analyze(phi, g).values.conj())
        worst["form"] = max(worst["form"], _rel(lhs, rhs))

        swap = mixed_frame_operator(phi, psi).matrix
        diff = np.max(np.abs(S.adjoint().matrix - swap)) / max(np.max(np.abs(swap)), 1e-300)
        worst["swap"] = max(worst["swap"], diff)
    elapsed = time.perf_counter() - t0
    ok = max(worst.values()) <= 1e-10 and elapsed < 5
    detail = ", ".join(f"{k} {v:.1e}" for k, v in worst.items()) + f", {elapsed:.2f} s"
    assert record("1 operator identities", ok, detail)


# ---------------------------------------------------------------- 2

def test_criterion_02_partner_construction(record):
    rng = np.random.default_rng(0)
    t0 = time.perf_counter()
    worst = 0.0
    feasible_all = True
    for _ in range(50):
        d = int(rng.integers(1, 9))
        n = int(rng.integers(d, 25))
        phi = random_family(rng, d, n, metric=random_metric(rng, d))
        assert mu_total(phi)
        rep = construct_partner(phi)
        feasible_all &= rep.feasible
        if rep.feasible:
            S = mixed_frame_operator(rep.psi, phi).matrix
            worst = max(worst, float(np.max(np.abs(S - np.eye(d)))))
    infeasible = 0
    for _ in range(20):
        d = int(rng.integers(2, 9))
        n = int(rng.integers(1, 25))
        rank = int(rng.integers(1, d))
        fam = rank_deficient_family(rng, d, n, min(rank, n))
        infeasible += not construct_partner(fam).feasible
    elapsed = time.perf_counter() - t0
    ok = feasible_all and worst <= 1e-8 and infeasible == 20 and elapsed < 10
    assert record("2 partner construction", ok,
                  f"max |S - I| {worst:.1e}, infeasible {infeasible}/20, {elapsed:.2f} s")


# ---------------------------------------------------------------- 3

def test_criterion_03_partner_non_uniqueness(record):
    rng = np.random.default_rng(0)
    worst_a, worst_res = 0.0, 0.0
    for _ in range(20):
        d = int(rng.integers(2, 9))
        n = 2 * d + int(rng.integers(0, 8))
        psi, phi = _verified_pair(rng, d, n)
        a = np.eye(d) + 0.4 * crandn(rng, d, d) / np.sqrt(d)
        # theta0^H = Z R with Z spanning Ker T_phi, so S_{theta0,phi} = 0
        z = synthesis_kernel(phi)
        theta0 = (z @ crandn(rng, z.shape[1], d)).conj().T
        theta = psi.with_vectors(a @ psi.vectors + theta0)
        a_rec, theta0_rec, residual = decompose_partner(theta, psi, phi)
        worst_a = max(worst_a, np.linalg.norm(a_rec.matrix - a, 2) / np.linalg.norm(a, 2))
        worst_res = max(worst_res, residual)
        assert np.allclose(theta0_rec.vectors, theta0, atol=1e-8 * np.max(np.abs(theta.vectors)))
    ok = worst_a <= 1e-8 and worst_res <= 1e-8
    assert record("3 partner non-uniqueness", ok, f"|A_rec - A|/|A| {worst_a:.1e}, residual {worst_res:.1e}")


# ---------------------------------------------------------------- 4

def test_criterion_04_reproducing_kernel(record):
    rng = np.random.default_rng(0)
    worst = {"idempotence": 0.0, "eigenvalue": 0.0, "angle_ker": 0.0, "angle_ran": 0.0}
    counts_ok = True
    for _ in range(20):
        d = int(rng.integers(1, 9))
        psi, phi = _verified_pair(rng, d, 2 * d)
        K = kernel_projection(psi, phi)
        spec = kernel_spectrum(K)
        counts_ok &= spec["ones"] == d and spec["zeros"] == d
        worst["idempotence"] = max(worst["idempotence"], spec["idempotence_error"])
        worst["eigenvalue"] = max(worst["eigenvalue"], spec["max_deviation"])
        # 0-eigenspace = Ker T_phi, 1-eigenspace = Ran C_psi
        zero_space = null_space(K, rcond=1e-8)
        one_space = null_space(K - np.eye(2 * d), rcond=1e-8)
        ran_c_psi = orth(psi.vectors.conj().T * psi.metric[None, :])
        worst["angle_ker"] = max(worst["angle_ker"], float(np.max(subspace_angles(zero_space, synthesis_kernel(phi)))))
        worst["angle_ran"] = max(worst["angle_ran"], float(np.max(subspace_angles(one_space, ran_c_psi))))
    ok = (counts_ok and worst["idempotence"] <= 1e-8 and worst["eigenvalue"] <= 1e-8
          and worst["angle_ker"] <= 1e-6 and worst["angle_ran"] <= 1e-6)
    assert record("4 reproducing kernel", ok, ", ".join(f"{k} {v:.1e}" for k, v in worst.items()))


# ---------------------------------------------------------------- 5

def test_criterion_05_duality(record):
    rng = np.random.default_rng(0)
    iso, rep_err, rep_q, pair_err = 0.0, 0.0, True, 0.0
    for _ in range(20):
        d = int(rng.integers(1, 9))
        n = int(rng.integers(d, 25))
        phi = random_family(rng, d, n, metric=random_metric(rng, d))
        for _ in range(5):
            g = crandn(rng, d)
            iso = max(iso, abs(dual_norm(phi, g) - norm(g, phi.metric)) / norm(g, phi.metric))

        psi, phi2 = _verified_pair(rng, d, n)
        g = crandn(rng, d)
        g_rec = represent_functional(psi, phi2, analyze(phi2, g))
        rep_err = max(rep_err, norm(g_rec - g, phi2.metric) / norm(g, phi2.metric))
        eta = CoefficientFunction(phi2.grid, crandn(rng, n))
        rep_q &= quotient_equal(psi, eta, analyze(phi2, represent_functional(psi, phi2, eta)), tol=1e-8)

        dual = construct_partner(phi).psi
        f, h = crandn(rng, d), crandn(rng, d)
        pair_err = max(pair_err, _rel(dual_pairing(analyze(dual, f), analyze(phi, h)), inner(f, h, phi.metric)))
    ok = iso <= 1e-10 and rep_err <= 1e-8 and rep_q and pair_err <= 1e-10
    assert record("5 duality suite", ok,
                  f"isometry {iso:.1e}, representer {rep_err:.1e}, pairing {pair_err:.1e}")


# ---------------------------------------------------------------- 6

def test_criterion_06_discrete_examples(record):
    rng = np.random.default_rng(0)
    onb_err = max(abs(b - 1) for d in range(1, 9) for b in frame_bounds(gal.onb(d)))

    riesz_err = 0.0
    for _ in range(20):
        a = crandn(rng, 5, 5)
        s = np.linalg.svd(a, compute_uv=False)
        fam = gal.riesz(a)
        m, M = frame_bounds(fam)
        # second path: eigenvalues of the assembled frame operator
        ev = np.linalg.eigvalsh(frame_operator(fam).matrix)
        riesz_err = max(riesz_err, abs(m - s[-1] ** 2), abs(M - s[0] ** 2),
                        abs(ev[0] - s[-1] ** 2), abs(ev[-1] - s[0] ** 2))

    dims = [8, 16, 32]
    fams = [gal.weighted(gal.onb(d), 1.0 / np.arange(1, d + 1)) for d in dims]
    cls = classify(fams)
    m_err = max(abs(b[0] * d ** 2 - 1) for b, d in zip(cls.bounds_per_level, dims))
    m = 1.0 / np.arange(1, 9)
    closed = gal.weighted(gal.onb(8), 1.0 / np.conj(m))
    s_err = float(np.max(np.abs(mixed_frame_operator(closed, fams[0]).matrix - np.eye(8))))

    ok = (onb_err <= 1e-12 and riesz_err <= 1e-10 and cls.kind == "upper_semi_frame"
          and m_err <= 1e-2 and s_err <= 1e-10)
    assert record("6 discrete examples", ok,
                  f"onb {onb_err:.1e}, riesz {riesz_err:.1e}, {cls.kind} m*d^2-1 {m_err:.1e}, closed partner {s_err:.1e}")


# ---------------------------------------------------------------- 7

def test_criterion_07_gaussian_wavelet_pair(record):
    t0 = time.perf_counter()
    c_exact = 2 ** -0.5
    psi_hat = gal.FrequencyProfile.log_grid(gaussian_partner_hat, 1e-8, 6.0, 600)
    phi_hat = gal.FrequencyProfile.log_grid(gaussian_hat, 1e-8, 6.0, 600)
    c = gal.cross_admissibility(psi_hat, phi_hat)
    c_rel = abs(c - c_exact) / c_exact

    div = gal.admissibility_divergence(gaussian_hat, (1e-1, 1e-2, 1e-3))
    monotone = bool(np.all(np.diff(div["estimates"]) > 0))

    # scale range wide enough that the truncated scale integral stays within
    # the tolerance on a nontrivial band (a in [1/8, 8] cannot reach 1e-2)
    d, a_min, a_max = 256, 2.0 ** -6, 2.0 ** 10
    a_grid = gal.scale_grid(a_min, a_max, 65)
    x = np.arange(d)
    S = mixed_frame_operator(gal.cwt_family(gaussian_partner_hat, x, a_grid, d),
                             gal.cwt_family(gaussian_hat, x, a_grid, d)).matrix
    S_hat = np.fft.fft(np.fft.ifft(S, axis=1), axis=0)
    nu = np.fft.fftfreq(d)
    band = gal.scale_truncation_loss(gaussian_partner_hat, gaussian_hat, a_min, a_max, nu) <= 0.5e-2 * c_exact
    block = S_hat[np.ix_(band, band)] - c_exact * np.eye(int(band.sum()))
    band_dev = np.linalg.norm(block, 2) / c_exact
    elapsed = time.perf_counter() - t0

    ok = c_rel <= 1e-6 and div["diverging"] and monotone and band.sum() >= 16 and band_dev <= 1e-2 and elapsed < 60
    assert record("7 Gaussian wavelet pair", ok,
                  f"c rel err {c_rel:.1e}, c_phi estimates {np.round(div['estimates'], 3).tolist()}, "
                  f"band {int(band.sum())} bins dev {band_dev:.2e}, {elapsed:.1f} s")


# ---------------------------------------------------------------- 8

def test_criterion_08_affine_coherent_states(record):
    prof = gal.gaussian_profile(0.05, 60, n=1)
    S = frame_operator(gal.affine_cs_family(prof)).matrix
    diag = np.real(np.diag(S))
    off = np.max(np.abs(S - np.diag(np.diag(S)))) / np.max(diag)
    r_pow = prof.r ** (prof.n - 1) * np.abs(prof.values) ** 2
    const = np.dot(diag, r_pow) / np.dot(r_pow, r_pow)
    fit = np.max(np.abs(diag - const * r_pow)) / np.max(diag)

    kdim = mu_independent(gal.affine_cs_family(prof, 2 * prof.r.size))[1]

    dr = 0.05
    seq = [gal.affine_cs_family(gal.gaussian_profile(dr, int(round(R / dr)))) for R in (2.0, 3.0, 4.0, 5.0)]
    trend = partner_feasibility_trend(seq)
    norms = np.array(trend.max_coefficient_norm)
    growth = norms[1:] / norms[:-1]
    # diagonal oracle: |xi_n| = s(r_n)^(-1/2) = exp(R^2 / 2) at the last radius
    oracle = [np.exp((round(R / dr) * dr) ** 2 / 2) for R in (2.0, 3.0, 4.0, 5.0)]
    oracle_err = float(np.max(np.abs(norms / oracle - 1)))

    ok = (off <= 1e-10 and fit <= 1e-10 and kdim == prof.r.size and trend.verdict == "diverging"
          and np.all(growth >= 1.5) and oracle_err <= 1e-8)
    assert record("8 affine coherent states", ok,
                  f"offdiag {off:.1e}, fit {fit:.1e} (constant {const:.6f}), kernel_dim {kdim}/{prof.r.size}, "
                  f"growth {np.round(growth, 2).tolist()}, oracle {oracle_err:.1e}")


# ---------------------------------------------------------------- 9

def test_criterion_09_spherical_symbols(record):
    a = np.linspace(1.0, 2.0, 9)
    s0 = gal.spherical_symbol(gal.SphericalCoefficients.from_degree_values(a, np.ones((1, 9))))[0]
    err = abs(s0 - 3 * np.pi ** 2) / (3 * np.pi ** 2)

    l = np.arange(8)
    vals = np.sqrt((1 + 1 / (l + 1)) / (3 * np.pi ** 2))[:, None] * np.ones((1, 9))
    s = gal.spherical_symbol(gal.SphericalCoefficients.from_degree_values(a, vals))
    case_true = gal.partner_condition(s, 1, 2)
    # same coefficients with the top degree switched off: s(L) = 0
    vals_zero = vals.copy()
    vals_zero[-1] = 0
    s_zero = gal.spherical_symbol(gal.SphericalCoefficients.from_degree_values(a, vals_zero))
    case_false = not any(gal.partner_condition(s_zero, m, 1e6) for m in (1e-12, 1e-3, 1))

    ok = err <= 1e-8 and case_true and case_false
    assert record("9 spherical symbols", ok,
                  f"s(0)/(3 pi^2) - 1 = {err:.1e}, 1 + 1/(l+1) in [1, 2]: {case_true}, s(L) = 0 rejected: {case_false}")


# ---------------------------------------------------------------- 10

def test_criterion_10_cli_contract(record, tmp_path, capsys):
    identical = []
    for name in SCENARIOS:
        outs = []
        for k in range(2):
            out = tmp_path / f"{name}-{k}.json"
            curves = tmp_path / f"{name}-{k}.csv"
            main(["example", name, "--seed", "0", "--out", str(out), "--curves", str(curves)])
            outs.append(out.read_bytes() + curves.read_bytes())
        identical.append(outs[0] == outs[1])

    write_family(gal.onb(4), tmp_path / "onb.json")
    write_family(rank_deficient_family(np.random.default_rng(0), 4, 6, 2), tmp_path / "def.json")
    (tmp_path / "bad.json").write_text("{\"dim\": 4,\n  \"vectors\": [}\n")
    codes = (
        main(["pair-check", "-i", str(tmp_path / "onb.json"), "-i", str(tmp_path / "onb.json")]),
        main(["pair-check", "-i", str(tmp_path / "def.json"), "-i", str(tmp_path / "def.json")]),
        main(["pair-check", "-i", str(tmp_path / "bad.json"), "-i", str(tmp_path / "onb.json")]),
    )
    err = capsys.readouterr().err
    ok = all(identical) and codes == (0, 2, 1) and "bad.json: line 2" in err
    assert record("10 CLI determinism and exit codes", ok,
                  f"{sum(identical)}/{len(identical)} scenarios byte-identical, exit codes {codes}")
