import numpy as np

from repropairs import MeasureGrid, VectorFamily


def crandn(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_grid(rng, n, unit=False):
    w = np.ones(n) if unit else rng.uniform(0.2, 2.0, n)
    return MeasureGrid(np.arange(n, dtype=float), w)


def random_family(rng, d, n, grid=None, metric=None, unit=False):
    grid = random_grid(rng, n, unit) if grid is None else grid
    return VectorFamily(grid, crandn(rng, d, n) / np.sqrt(n), metric)


def random_metric(rng, d):
    return rng.uniform(0.5, 2.0, d)


def brute_inner(f, g, metric):
    total = 0j
    for k in range(len(f)):
        total += metric[k] * f[k] * np.conj(g[k])
    return total


def rank_deficient_family(rng, d, n, rank, grid=None):
    """A family spanning a random subspace of dimension ``rank`` < d."""
    basis = np.linalg.qr(crandn(rng, d, rank))[0]
    grid = random_grid(rng, n) if grid is None else grid
    return VectorFamily(grid, basis @ crandn(rng, rank, n))
