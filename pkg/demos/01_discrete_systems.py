"""Bases, Riesz bases and weighted systems in C^d.

Run with ``python demos/01_discrete_systems.py``.
"""
# %%
import numpy as np

from repropairs import (
    CoefficientFunction, check_pair, classify, construct_partner,
    frame_bounds, mixed_frame_operator, mu_independent, v_norm,
)
from repropairs import gallery as gal

np.set_printoptions(precision=4, suppress=True)
rng = np.random.default_rng(0)

# %% An orthonormal basis is its own reproducing partner and V_e is plain l^2.
e = gal.onb(5)
print("onb bounds:", frame_bounds(e), " independent:", mu_independent(e))
xi = rng.standard_normal(5) + 1j * rng.standard_normal(5)
print("|xi|_e =", v_norm(e, CoefficientFunction(e.grid, xi)), " |xi|_2 =", np.linalg.norm(xi))

# %% A Riesz basis r_n = A e_n has bounds sigma_min(A)^2, sigma_max(A)^2.
A = np.eye(4) + 0.3 * rng.standard_normal((4, 4))
s = np.linalg.svd(A, compute_uv=False)
print("riesz bounds:", frame_bounds(gal.riesz(A)), " sigma(A)^2:", (float(s[-1] ** 2), float(s[0] ** 2)))

# %% Weighting an orthonormal basis by m_n = 1/n: the lower bound 1/d^2
# collapses as the truncation grows, while the upper bound stays at 1.
dims = [8, 16, 32, 64]
seq = [gal.weighted(gal.onb(d), 1.0 / np.arange(1, d + 1)) for d in dims]
cls = classify(seq)
print("\nweighted 1/n:", cls.kind, "/", cls.trend)
for d, (m, M) in zip(dims, cls.bounds_per_level):
    print(f"  d={d:3d}  m={m:.3e}  m*d^2={m * d * d:.4f}  M={M:.3f}")

# %% The closed-form partner theta_n / conj(m_n) reproduces exactly ...
phi = seq[0]
m = 1.0 / np.arange(1, 9)
closed = gal.weighted(gal.onb(8), 1.0 / np.conj(m))
print("\nclosed-form partner:", check_pair(closed, phi).verdict)
print("  |S - I|_max =", np.max(np.abs(mixed_frame_operator(closed, phi).matrix - np.eye(8))))

# ... and the minimal-norm construction finds the same family.
built = construct_partner(phi)
print("constructed partner equals closed form:", np.allclose(built.psi.vectors, closed.vectors))
print("  |xi_n| =", built.coefficient_norm_rows)

# %% Growth m_n = n goes the other way: a lower semi-frame.
grow = [gal.weighted(gal.onb(d), np.arange(1, d + 1, dtype=float)) for d in dims]
print("\nweighted n:", classify(grow).kind)

# %% Finite Gabor systems at critical density a*b = d. With a sampled
# Gaussian window the lower bound sits at rounding level for every d tried:
# at critical density this window does not give a frame in the cyclic model.
print("\nGabor at critical density (a = b = sqrt(d)):")
for side in (2, 4, 8):
    d = side * side
    t = np.arange(d) - d // 2
    g = np.roll(np.exp(-np.pi * t ** 2 / d), -d // 2)
    lo, hi = frame_bounds(gal.finite_gabor(g, side, side))
    print(f"  d={d:3d}  m={lo:.3e}  M={hi:.3f}  cond={hi / lo if lo else np.inf:.3e}")
