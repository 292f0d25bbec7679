"""Seeded random inputs for verification sweeps.

Every sample gets its own generator spawned from one ``SeedSequence``, so
the inputs depend only on (seed, sample index) and never on how the
samples are scheduled across workers.
"""

from __future__ import annotations

from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

import numpy as np

T = TypeVar("T")


def sample_rngs(seed: int, count: int) -> list[np.random.Generator]:
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(count)]


def run_samples(
    fn: Callable[[np.random.Generator], T], seed: int, count: int, workers: int = 1
) -> list[T]:
    """Evaluate ``fn`` once per derived generator; results are in sample order."""
    rngs = sample_rngs(seed, count)
    if workers <= 1:
        return [fn(r) for r in rngs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, rngs))


def ginibre(rng: np.random.Generator, n: int, k: int | None = None) -> np.ndarray:
    k = n if k is None else k
    return rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))


def random_vector(rng: np.random.Generator, n: int) -> np.ndarray:
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    q, r = np.linalg.qr(ginibre(rng, n))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_density_matrix(rng: np.random.Generator, n: int, rank: int | None = None) -> np.ndarray:
    """G G^dagger / Tr(G G^dagger) with G an n x rank Gaussian matrix (rank 1 = pure)."""
    g = ginibre(rng, n, n if rank is None else rank)
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_mixed_or_pure(rng: np.random.Generator, n: int) -> np.ndarray:
    rank = int(rng.choice([1, max(1, n // 2), n]))
    return random_density_matrix(rng, n, rank)


def random_bipartite_density(rng: np.random.Generator, dims: tuple[int, int]) -> np.ndarray:
    """Cycles through pure, product, separable and full-rank mixed densities."""
    n1, n2 = dims
    kind = int(rng.integers(4))
    if kind == 0:
        return random_density_matrix(rng, n1 * n2, 1)
    if kind == 1:
        return np.kron(random_mixed_or_pure(rng, n1), random_mixed_or_pure(rng, n2))
    if kind == 2:
        weights = rng.dirichlet(np.ones(3))
        return sum(
            w * np.kron(random_mixed_or_pure(rng, n1), random_mixed_or_pure(rng, n2))
            for w in weights
        )
    return random_density_matrix(rng, n1 * n2)


def random_projector_tuple(rng: np.random.Generator, n: int) -> list[np.ndarray]:
    """Rank-1 projectors onto the columns of a random unitary."""
    u = random_unitary(rng, n)
    return [np.outer(u[:, k], u[:, k].conj()) for k in range(n)]
