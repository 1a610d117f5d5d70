"""Two partners of the same family differ by an invertible map plus a part
invisible to the analysis in V_phi; the reproducing kernel sees only the pair.

Run with ``python demos/05_partner_non_uniqueness.py``.
"""
# %%
import numpy as np

from repropairs import (
    MeasureGrid, VectorFamily, analyze, check_pair, construct_partner, decompose_partner,
    kernel_projection, kernel_spectrum, synthesis_kernel,
)

rng = np.random.default_rng(0)
d, n = 4, 10


def crandn(*shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


# %% A random oversampled family and its minimal-norm partner.
phi = VectorFamily(MeasureGrid(np.arange(n, dtype=float), rng.uniform(0.5, 1.5, n)), crandn(d, n))
psi = construct_partner(phi).psi
print("psi, phi:", check_pair(psi, phi).verdict)

# %% Another partner: theta = A psi + theta0 with theta0 built from Ker T_phi.
A = np.eye(d) + 0.3 * crandn(d, d)
theta0 = (synthesis_kernel(phi) @ crandn(n - d, d)).conj().T
theta = psi.with_vectors(A @ psi.vectors + theta0)
print("theta, phi:", check_pair(theta, phi).verdict)

A_rec, theta0_rec, residual = decompose_partner(theta, psi, phi)
print("|A_rec - A| =", np.linalg.norm(A_rec.matrix - A, 2))
print("|theta0_rec - theta0| =", np.max(np.abs(theta0_rec.vectors - theta0)))
print("largest singular value of S_{theta0,phi}:", residual)

# %% The kernel of the pair projects onto Ran C_psi along Ker T_phi.
K = kernel_projection(psi, phi)
spec = kernel_spectrum(K)
print("\nkernel eigenvalues: %d ones, %d zeros, deviation %.1e" % (spec["ones"], spec["zeros"], spec["max_deviation"]))
f = crandn(d)
c = analyze(psi, f).values
print("K C_psi f = C_psi f:", np.allclose(K @ c, c))
print("K on Ker T_phi:", np.max(np.abs(K @ synthesis_kernel(phi))))
