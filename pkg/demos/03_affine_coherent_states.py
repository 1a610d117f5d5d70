"""Affine coherent states psi_x(r) = exp(-i x r) psi(r) on L^2(R+, r^(n-1) dr).

The frame operator is multiplication by s(r) = 2 pi r^(n-1) |psi(r)|^2.
For the Gaussian-type profile s(r) = exp(-r^2) the lower bound vanishes at
large r, and the minimal partner coefficients blow up like s^(-1/2).

Run with ``python demos/03_affine_coherent_states.py``.
"""
# %%
import numpy as np

from repropairs import CoefficientFunction, frame_operator, mu_independent, partner_feasibility_trend, v_norm
from repropairs import gallery as gal

np.set_printoptions(precision=4, suppress=True)
rng = np.random.default_rng(0)

# %% Square model: N_x = N_r, x-grid DFT-dual to the r-grid.
prof = gal.gaussian_profile(dr=0.05, count=60, n=2)
fam = gal.affine_cs_family(prof)
S = frame_operator(fam).matrix
print("max off-diagonal:", np.max(np.abs(S - np.diag(np.diag(S)))))
print("diag / symbol, first entries:", (np.real(np.diag(S)) / prof.symbol())[:4])

# %% Oversampling X exposes Ker T_psi.
for nx in (60, 90, 120):
    print(f"N_x={nx}: mu_independent ->", mu_independent(gal.affine_cs_family(prof, nx)))

# %% The V_psi norm computed through the DFT agrees with the synthesis norm.
xi = CoefficientFunction(fam.grid, rng.standard_normal(60))
print("\naffine_vnorm:", gal.affine_vnorm(prof, xi), " v_norm:", v_norm(fam, xi))

# %% Longer truncations push the minimal partner toward infinity.
radii = [2.0, 3.0, 4.0, 5.0]
seq = [gal.affine_cs_family(gal.gaussian_profile(0.05, int(round(R / 0.05)))) for R in radii]
trend = partner_feasibility_trend(seq)
print("\nverdict:", trend.verdict)
for R, a, b in zip(radii, trend.max_coefficient_norm, trend.max_pointwise_sum):
    print(f"  R={R}: max|xi_n|={a:.4e} (exp(R^2/2)={np.exp(R * R / 2):.4e})  max sum|xi_n(x)|^2={b:.4e}")
