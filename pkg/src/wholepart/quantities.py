"""Scalar quantities on densities and a harness for checking ubiquity.

A family E = {E_n} is ubiquitous when evaluating it on an embedded input
gives the same answer as evaluating it in the subsystem. The harness
covers three shapes of that statement:

1. scalar quantities, E_n(embed x) = E_m(x);
2. operator-valued quantities, E_n(embed x) = J(E_m(x));
3. parameter families, J(E_m(lam)) = E_n(lam).
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from . import matrixcore as mc
from .embeddings import (
    DensityMatrix,
    ProjectorTuple,
    embed_bipartite_density,
    embed_density,
    embed_projectors,
    nonselective_measure,
)
from .numtheory import check_divides
from .sampling import (
    random_bipartite_density,
    random_mixed_or_pure,
    random_projector_tuple,
    run_samples,
)

NEG_TOL = 1e-9
UBIQUITOUS, VIOLATED = "ubiquitous within tol", "violated"


def _entropy_of_spectrum(w: np.ndarray) -> float:
    if w.size and w.min() < -NEG_TOL:
        raise ValueError(f"eigenvalue {w.min():.3g} is below -{NEG_TOL}")
    w = w[w > 0]
    return float(-np.sum(w * np.log(w)))


def entropy(rho: DensityMatrix) -> float:
    """von Neumann entropy with natural log; 0 ln 0 = 0."""
    return _entropy_of_spectrum(mc.hermitian_eigenvalues(rho.matrix))


def measured_entropy(rho: DensityMatrix, t: ProjectorTuple) -> float:
    return entropy(nonselective_measure(rho, t))


def marginal(rho: DensityMatrix, keep: int) -> DensityMatrix:
    """Reduced density of component ``keep`` (1 or 2)."""
    if len(rho.dims) != 2:
        raise ValueError("marginals need a bipartite density")
    traced = 2 if keep == 1 else 1
    return DensityMatrix((rho.dims[keep - 1],), mc.partial_trace(rho.matrix, rho.dims, traced))


def mutual_information(rho: DensityMatrix) -> float:
    return entropy(marginal(rho, 1)) + entropy(marginal(rho, 2)) - entropy(rho)


def conditional_entropy(rho: DensityMatrix, conditioned: str = "1|2") -> float:
    """S(rho) minus the entropy of the conditioning side; "1|2" conditions on 2."""
    if conditioned not in ("1|2", "2|1"):
        raise ValueError(f"conditioned must be '1|2' or '2|1', got {conditioned!r}")
    side = 2 if conditioned == "1|2" else 1
    return entropy(rho) - entropy(marginal(rho, side))


def negativity(rho: DensityMatrix, which: int = 1) -> float:
    if len(rho.dims) != 2:
        raise ValueError("negativity needs a bipartite density")
    pt = mc.partial_transpose(rho.matrix, rho.dims, which)
    return (mc.trace_norm(pt) - 1.0) / 2.0


# -- ubiquity harness --------------------------------------------------------


@dataclass(frozen=True)
class UbiquityReport:
    quantity: str
    dims: tuple[int, ...]
    category: int
    samples: int
    max_deviation: float
    tolerance: float

    @property
    def verdict(self) -> str:
        return UBIQUITOUS if self.max_deviation <= self.tolerance else VIOLATED

    @property
    def ubiquitous(self) -> bool:
        return self.verdict == UBIQUITOUS

    def to_dict(self) -> dict:
        return {
            "quantity": self.quantity,
            "dims": list(self.dims),
            "category": self.category,
            "samples": self.samples,
            "max_deviation": self.max_deviation,
            "tolerance": self.tolerance,
            "verdict": self.verdict,
        }


def _gap(a, b) -> float:
    diff = np.abs(np.asarray(a) - np.asarray(b))
    return float(diff.max()) if diff.size else 0.0


def ubiquity_harness(
    name: str,
    quantity: Callable,
    embed: Callable,
    sampler: Callable[[np.random.Generator], object],
    dims: tuple[int, ...],
    samples: int = 100,
    tol: float = 1e-9,
    seed: int = 0,
    workers: int = 1,
    category: int = 1,
    embed_out: Callable | None = None,
) -> UbiquityReport:
    """Sample inputs and record the worst violation of the category's equality.

    Category 1 compares quantity(embed(x)) with quantity(x). Category 2
    compares quantity(embed(x)) with embed_out(quantity(x)). Category 3
    treats x as a parameter, dims as (m, n), and compares
    embed(quantity(m, x)) with quantity(n, x).
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    if category == 2 and embed_out is None:
        raise ValueError("category 2 needs embed_out")

    def one(rng: np.random.Generator) -> float:
        x = sampler(rng)
        if category == 1:
            return abs(quantity(embed(x)) - quantity(x))
        if category == 2:
            return _gap(quantity(embed(x)), embed_out(quantity(x)))
        if category == 3:
            m, n = dims
            return _gap(embed(quantity(m, x)), quantity(n, x))
        raise ValueError(f"unknown category {category}")

    devs = run_samples(one, seed, samples, workers)
    return UbiquityReport(name, tuple(dims), category, samples, max(devs), tol)


# -- ready-made sweeps -------------------------------------------------------


def verify_entropy(m, n, samples=100, seed=0, tol=1e-9, workers=1) -> UbiquityReport:
    check_divides(m, n)
    return ubiquity_harness(
        "entropy",
        entropy,
        lambda rho: embed_density(rho, n),
        lambda rng: DensityMatrix((m,), random_mixed_or_pure(rng, m)),
        (m, n),
        samples,
        tol,
        seed,
        workers,
    )


def verify_measured_entropy(m, n, samples=100, seed=0, tol=1e-9, workers=1) -> UbiquityReport:
    check_divides(m, n)

    def sample(rng):
        rho = DensityMatrix((m,), random_mixed_or_pure(rng, m))
        return rho, ProjectorTuple(m, tuple(random_projector_tuple(rng, m)))

    return ubiquity_harness(
        "measured-entropy",
        lambda x: measured_entropy(*x),
        lambda x: (embed_density(x[0], n), embed_projectors(x[1], n)),
        sample,
        (m, n),
        samples,
        tol,
        seed,
        workers,
    )


BIPARTITE_QUANTITIES: dict[str, Callable[[DensityMatrix], float]] = {
    "entropy": entropy,
    "mutual-info": mutual_information,
    "conditional-entropy": conditional_entropy,
    "conditional-entropy-2|1": lambda rho: conditional_entropy(rho, "2|1"),
    "negativity": negativity,
}


def verify_bipartite(
    name: str,
    src: tuple[int, int],
    dst: tuple[int, int],
    samples=100,
    seed=0,
    tol=1e-9,
    workers=1,
) -> UbiquityReport:
    check_divides(src[0], dst[0])
    check_divides(src[1], dst[1])
    return ubiquity_harness(
        name,
        BIPARTITE_QUANTITIES[name],
        lambda rho: embed_bipartite_density(rho, dst),
        lambda rng: DensityMatrix(tuple(src), random_bipartite_density(rng, tuple(src))),
        (*src, *dst),
        samples,
        tol,
        seed,
        workers,
    )


def thermal_family(n: int, lam: float) -> np.ndarray:
    """diag p_n(r; lam) with p_n(r; lam) = lam^r (lam - 1) / (lam^n - 1)."""
    if lam <= 0 or lam == 1:
        raise ValueError("lam must be positive and different from 1")
    r = np.arange(n)
    return np.diag(lam**r * (lam - 1) / (lam**n - 1)).astype(complex)


def nonubiquitous_demo(m=2, n=4, lam=2.0, tol=1e-9) -> UbiquityReport:
    """Category 3 check of the thermal family; it is expected to fail."""
    check_divides(m, n)
    return ubiquity_harness(
        "thermal-family",
        thermal_family,
        lambda a: mc.embed_matrix(a, n),
        lambda rng: lam,
        (m, n),
        samples=1,
        tol=tol,
        category=3,
    )
