"""Multiplier symbols of spherical wavelet systems from sampled coefficients.

Run with ``python demos/04_spherical_symbols.py``.
"""
# %%
import numpy as np

from repropairs import gallery as gal

np.set_printoptions(precision=6, suppress=True)

# %% Unit coefficients on a in [1, 2]: s(0) = 8 pi^2 * 3/8 = 3 pi^2.
a = np.linspace(1, 2, 9)
unit = gal.SphericalCoefficients.from_degree_values(a, np.ones((1, a.size)))
print("s(0) =", gal.spherical_symbol(unit)[0], " 3 pi^2 =", 3 * np.pi ** 2)

# %% The da/a^3 rule is a trapezoid in a^-2, so it does not move under
# refinement when |c|^2 is affine in a^-2.
for n in (3, 5, 17, 65):
    g = np.linspace(1, 3, n)
    c = gal.SphericalCoefficients.from_degree_values(g, np.sqrt(1 + 2 / g ** 2)[None, :])
    print(f"{n:3d} scales: s(0) = {gal.spherical_symbol(c)[0]:.15f}")

# %% A symbol bounded above and below admits a reproducing partner.
L = 10
l = np.arange(L + 1)
vals = np.sqrt((1 + 1 / (l + 1)) / (3 * np.pi ** 2))[:, None] * np.ones((1, a.size))
s = gal.spherical_symbol(gal.SphericalCoefficients.from_degree_values(a, vals))
print("\ns(l) =", s)
print("1 <= s <= 2:", gal.partner_condition(s, 1, 2))
vals[-1] = 0
s = gal.spherical_symbol(gal.SphericalCoefficients.from_degree_values(a, vals))
print("with s(L) = 0:", gal.partner_condition(s, 1e-12, 2))
