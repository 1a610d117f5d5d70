"""A Gaussian wavelet pair: neither window is admissible on its own side,
yet psi_hat = |w| exp(-pi w^2) and phi_hat = exp(-pi w^2) reproduce.

Run with ``python demos/02_wavelet_pair.py`` (a few seconds).
"""
# %%
import numpy as np

from repropairs import mixed_frame_operator
from repropairs import gallery as gal
from repropairs.scenarios import gaussian_hat, gaussian_partner_hat

np.set_printoptions(precision=4, suppress=True)

# %% c_phi diverges logarithmically as the grid approaches omega = 0.
div = gal.admissibility_divergence(gaussian_hat, (1e-1, 1e-2, 1e-3, 1e-4))
for w, c in zip(div["omega_min"], div["estimates"]):
    print(f"c_phi estimate with omega_min={w:.0e}: {c:.4f}")
print("increments:", np.round(div["increments"], 4), " (2 ln 10 =", round(2 * np.log(10), 4), ")")
print("diverging:", div["diverging"])

# %% The cross constant is finite and equals |phi|_2^2 = 2^(-1/2). The
# remaining error does not depend on the point density: it is the piece of
# the integral on |omega| < 1e-8 that the grid leaves out (about 2e-8).
for ppd in (50, 200, 600):
    psi = gal.FrequencyProfile.log_grid(gaussian_partner_hat, 1e-8, 6, ppd)
    phi = gal.FrequencyProfile.log_grid(gaussian_hat, 1e-8, 6, ppd)
    c = gal.cross_admissibility(psi, phi)
    print(f"{ppd:4d} points/decade: c = {c.real:.12f}  rel err {abs(c - 2 ** -0.5) / 2 ** -0.5:.2e}")

# %% On periodic signals of length d the mixed operator is a Fourier
# multiplier; its value at frequency nu is the cross integral restricted to
# the sampled scales, so it equals c only where the scales cover the band.
d = 256
nu = np.fft.fftfreq(d)
for a_min, a_max, n in ((1 / 8, 8, 25), (2.0 ** -6, 2.0 ** 10, 65)):
    a = gal.scale_grid(a_min, a_max, n)
    x = np.arange(d)
    S = mixed_frame_operator(gal.cwt_family(gaussian_partner_hat, x, a, d),
                             gal.cwt_family(gaussian_hat, x, a, d)).matrix
    mult = np.real(np.diag(np.fft.fft(np.fft.ifft(S, axis=1), axis=0)))
    dev = np.abs(mult / 2 ** -0.5 - 1)
    print(f"\na in [{a_min:g}, {a_max:g}]: best relative deviation {dev[1:].min():.2e}")
    print("  bins within 1e-2:", np.flatnonzero(dev[: d // 2] <= 1e-2))
