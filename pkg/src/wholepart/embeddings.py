"""Embeddings of Sigma(m) into Sigma(n) for m | n.

States go to the multiples of d = n/m in the position basis, densities
and projectors go through the tau-permutation matrix embedding, and the
bipartite versions act componentwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import matrixcore as mc
from .numtheory import check_dim, check_divides, euler_phi
from .qsystem import fourier_matrix, op_D
from .sampling import (
    random_density_matrix,
    random_projector_tuple,
    random_unitary,
    random_vector,
    run_samples,
)

DEFAULT_TOL = 1e-9
POSITION, MOMENTUM = "position", "momentum"


@dataclass(frozen=True, eq=False)
class QState:
    """Amplitudes over |X;r> (or |P;r>); bipartite states use index r1*n2 + r2."""

    dims: tuple[int, ...]
    amplitudes: np.ndarray
    basis: str = POSITION

    def __post_init__(self):
        dims = tuple(check_dim(k) for k in self.dims)
        amps = np.asarray(self.amplitudes, dtype=complex).ravel()
        if amps.size != int(np.prod(dims)):
            raise ValueError(f"{amps.size} amplitudes for dims {dims}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("non-finite amplitudes")
        if self.basis not in (POSITION, MOMENTUM):
            raise ValueError(f"unknown basis {self.basis!r}")
        if self.basis == MOMENTUM and len(dims) != 1:
            raise ValueError("momentum basis is only supported for single systems")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return int(np.prod(self.dims))

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def position_amplitudes(self) -> np.ndarray:
        if self.basis == POSITION:
            return self.amplitudes
        return fourier_matrix(self.dims[0]) @ self.amplitudes

    def in_basis(self, basis: str) -> QState:
        if basis == self.basis:
            return self
        f = self.position_amplitudes()
        if basis == POSITION:
            return QState(self.dims, f, POSITION)
        return QState(self.dims, fourier_matrix(self.dims[0]).conj().T @ f, MOMENTUM)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    dims: tuple[int, ...]
    matrix: np.ndarray

    def __post_init__(self):
        dims = tuple(check_dim(k) for k in self.dims)
        if len(dims) not in (1, 2):
            raise ValueError("only single and bipartite systems are supported")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "matrix", mc.as_cmatrix(self.matrix, int(np.prod(dims))))
        self.validate()

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def validate(self, tol: float = DEFAULT_TOL) -> DensityMatrix:
        """Hermitian, unit trace and positive semidefinite, all within ``tol``."""
        if mc.hermitian_defect(self.matrix) > tol:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(self.matrix) - 1) > tol:
            raise ValueError(f"trace is {np.trace(self.matrix)}, expected 1")
        if mc.hermitian_eigenvalues(self.matrix)[-1] < -tol:
            raise ValueError("density matrix has a negative eigenvalue")
        return self


@dataclass(frozen=True, eq=False)
class ProjectorTuple:
    dim: int
    projectors: tuple[np.ndarray, ...] = field(default_factory=tuple)

    def __post_init__(self):
        check_dim(self.dim)
        projs = tuple(mc.as_cmatrix(p, self.dim) for p in self.projectors)
        if len(projs) != self.dim:
            raise ValueError(f"need {self.dim} projectors, got {len(projs)}")
        object.__setattr__(self, "projectors", projs)
        self.validate()

    def __getitem__(self, s: int) -> np.ndarray:
        return self.projectors[s]

    def __len__(self) -> int:
        return self.dim

    def defect(self) -> float:
        """Worst violation of pi_s pi_q = delta(s,q) pi_s, sum = 1, Hermiticity."""
        worst = float(np.max(np.abs(sum(self.projectors) - np.eye(self.dim))))
        for s, p in enumerate(self.projectors):
            worst = max(worst, mc.hermitian_defect(p))
            for q, r in enumerate(self.projectors):
                target = p if s == q else 0.0
                worst = max(worst, float(np.max(np.abs(p @ r - target))))
        return worst

    def validate(self, tol: float = DEFAULT_TOL) -> ProjectorTuple:
        if self.defect() > tol:
            raise ValueError("not a complete orthogonal projector tuple")
        return self

    @classmethod
    def position(cls, n: int) -> ProjectorTuple:
        return cls(n, tuple(np.diag(np.eye(n)[s]).astype(complex) for s in range(n)))


# -- states ------------------------------------------------------------------


def isometry(m: int, n: int) -> np.ndarray:
    """The n x m matrix of the state embedding: column r is |X_n; d r>."""
    d = check_divides(m, n)
    out = np.zeros((n, m), dtype=complex)
    out[np.arange(m) * d, np.arange(m)] = 1.0
    return out


def embed_position_amplitudes(f: np.ndarray, n: int) -> np.ndarray:
    m = f.size
    d = check_divides(m, n)
    out = np.zeros(n, dtype=complex)
    out[::d] = f
    return out


def embed_momentum_amplitudes(g: np.ndarray, n: int) -> np.ndarray:
    """Momentum picture of the state embedding: g is tiled d times and scaled by d^-1/2."""
    m = g.size
    d = check_divides(m, n)
    return np.tile(np.asarray(g, dtype=complex), d) / np.sqrt(d)


def embed_state(f: QState, n: int) -> QState:
    if len(f.dims) != 1:
        raise ValueError("use embed_bipartite_state for bipartite states")
    out = QState((n,), embed_position_amplitudes(f.position_amplitudes(), n), POSITION)
    return out.in_basis(f.basis)


def adjoint_embed(f: QState, m: int) -> QState:
    """Keep the amplitudes at multiples of d; everything else is dropped."""
    n = f.dims[0]
    d = check_divides(m, n)
    return QState((m,), f.position_amplitudes()[::d].copy(), POSITION)


def partition_dims(n: int) -> tuple[int, int]:
    """(dim H_A, dim H_B): labels shared with some subsystem vs. coprime labels."""
    phi = euler_phi(n)
    return n - phi, phi


def embed_bipartite_state(f: QState, dst: tuple[int, int]) -> QState:
    (m1, m2), (n1, n2) = f.dims, dst
    d1, d2 = check_divides(m1, n1), check_divides(m2, n2)
    out = np.zeros((n1, n2), dtype=complex)
    out[::d1, ::d2] = f.amplitudes.reshape(m1, m2)
    return QState((n1, n2), out.ravel())


# -- densities and projectors ---------------------------------------------


def embed_density(rho: DensityMatrix, n: int) -> DensityMatrix:
    if len(rho.dims) != 1:
        raise ValueError("use embed_bipartite_density for bipartite densities")
    return DensityMatrix((n,), mc.embed_matrix(rho.matrix, n))


def embed_bipartite_density(rho: DensityMatrix, dst: tuple[int, int]) -> DensityMatrix:
    return DensityMatrix(tuple(dst), mc.embed_bitensor(rho.matrix, rho.dims, tuple(dst)))


def _fill_vectors(m: int, n: int, rng: np.random.Generator | None) -> np.ndarray:
    d = n // m
    free = [s for s in range(n) if s % d]
    basis = np.eye(n, dtype=complex)[:, free]
    if rng is None:
        return basis
    return basis @ random_unitary(rng, len(free))


def embed_projectors(t: ProjectorTuple, n: int, rng: np.random.Generator | None = None) -> ProjectorTuple:
    """Slot d*r gets J(pi_r); the other n - m slots span the complement.

    By default the fill projectors are the position projectors on the
    non-multiples of d, in ascending order. Passing ``rng`` fills them with
    rank-1 projectors from a random unitary on the same complement, which
    is how the tests check that nothing depends on that choice.
    """
    m = t.dim
    d = check_divides(m, n)
    slots: list[np.ndarray | None] = [None] * n
    for r in range(m):
        slots[d * r] = mc.embed_matrix(t[r], n)
    vecs = _fill_vectors(m, n, rng)
    free_slots = [s for s in range(n) if s % d]
    for k, s in enumerate(free_slots):
        v = vecs[:, k]
        slots[s] = np.outer(v, v.conj())
    return ProjectorTuple(n, tuple(slots))


def nonselective_measure(rho: DensityMatrix, t: ProjectorTuple) -> DensityMatrix:
    if rho.dim != t.dim:
        raise ValueError("dimension mismatch between density and projectors")
    return DensityMatrix(rho.dims, sum(p @ rho.matrix @ p for p in t.projectors))


# -- compatibility verifiers ---------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    name: str
    max_deviation: float
    passed: bool

    def to_dict(self) -> dict:
        return {"name": self.name, "max_deviation": self.max_deviation, "passed": self.passed}


@dataclass(frozen=True)
class CompatibilityReport:
    suite: str
    dims: tuple[int, ...]
    samples: int
    tolerance: float
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "dims": list(self.dims),
            "samples": self.samples,
            "tolerance": self.tolerance,
            "checks": [c.to_dict() for c in self.checks],
            "passed": self.passed,
        }


def _maxabs(x) -> float:
    x = np.asarray(x)
    return float(np.max(np.abs(x))) if x.size else 0.0


def _check(name: str, devs: list[float], tol: float) -> CheckResult:
    worst = max(devs, default=0.0)
    return CheckResult(name, worst, worst <= tol)


def _chain_sample(m: int, n: int, l: int):
    dml = l // m

    def one(rng: np.random.Generator) -> tuple[float, float, float]:
        f = QState((m,), random_vector(rng, m))
        st = _maxabs(embed_state(embed_state(f, n), l).amplitudes - embed_state(f, l).amplitudes)
        rho = DensityMatrix((m,), random_density_matrix(rng, m))
        dm = _maxabs(embed_density(embed_density(rho, n), l).matrix - embed_density(rho, l).matrix)
        t = ProjectorTuple(m, tuple(random_projector_tuple(rng, m)))
        twice = embed_projectors(embed_projectors(t, n), l)
        once = embed_projectors(t, l)
        # only the slots d*r are determined; the fill slots are a free choice
        pr = max(_maxabs(twice[dml * r] - once[dml * r]) for r in range(m))
        return st, dm, pr

    return one


def verify_chain_compatibility(
    m: int,
    n: int,
    l: int,
    samples: int = 100,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
    workers: int = 1,
) -> CompatibilityReport:
    """A_{nl} o A_{mn} = A_{ml}, and the same for J and P, on random inputs."""
    check_divides(m, n)
    check_divides(n, l)
    devs = run_samples(_chain_sample(m, n, l), seed, samples, workers)
    checks = tuple(
        _check(name, [row[k] for row in devs], tol)
        for k, name in enumerate(("states", "densities", "projectors"))
    )
    return CompatibilityReport("chain", (m, n, l), samples, tol, checks)


DISPLACEMENT_VARIANTS = {
    "(d*alpha, beta, d*gamma)": lambda d, a, b, g: (d * a, b, d * g),
    "(alpha, d*beta, d*gamma)": lambda d, a, b, g: (a, d * b, d * g),
    "(d*alpha, d*beta, d*gamma)": lambda d, a, b, g: (d * a, d * b, d * g),
}


@dataclass(frozen=True)
class DisplacementReport:
    m: int
    n: int
    deviations: dict[str, float]
    tolerance: float

    @property
    def surviving(self) -> list[str]:
        return [k for k, v in self.deviations.items() if v <= self.tolerance]

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "tolerance": self.tolerance,
            "variants": [
                {"map": k, "max_deviation": v, "passed": v <= self.tolerance}
                for k, v in self.deviations.items()
            ],
            "surviving": self.surviving,
        }


def verify_displacement_compat(
    m: int, n: int, variants: list[str] | None = None, tol: float = DEFAULT_TOL
) -> DisplacementReport:
    """Test A D_m(a,b,g) = D_n(image) A exhaustively over Z(m)^3 and all basis states."""
    d = check_divides(m, n)
    if n > 12:
        raise ValueError("exhaustive displacement check is limited to n <= 12")
    names = list(DISPLACEMENT_VARIANTS) if variants is None else variants
    a_mat = isometry(m, n)
    devs = {}
    for name in names:
        image = DISPLACEMENT_VARIANTS[name]
        worst = 0.0
        for a, b, g in product(range(m), repeat=3):
            lhs = a_mat @ op_D(m, a, b, g)
            rhs = op_D(n, *image(d, a, b, g)) @ a_mat
            worst = max(worst, _maxabs(lhs - rhs))
        devs[name] = worst
    return DisplacementReport(m, n, devs, tol)
