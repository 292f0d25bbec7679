"""Wigner and Weyl functions on odd-dimensional systems.

Both are n x n arrays indexed (alpha, beta) in Z(n) x Z(n). The star
products take an explicit normalization constant; the calibrated values
are frozen below and re-derived by the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from . import matrixcore as mc
from .numtheory import check_divides, root_of_unity
from .qsystem import check_odd, displaced_parity, half, op_D_symmetric
from .sampling import ginibre, sample_rngs

WIGNER, WEYL = "wigner", "weyl"
REAL_TOL = 1e-9


def wigner_star_constant(n: int) -> float:
    """Normalization that makes the Wigner star product reproduce W(Theta Phi)."""
    check_odd(n)
    return 1.0 / n**2


def weyl_star_constant(n: int) -> float:
    check_odd(n)
    return 1.0 / n


@dataclass(frozen=True, eq=False)
class PhaseFunction:
    dim: int
    values: np.ndarray
    kind: str = WIGNER

    def __post_init__(self):
        check_odd(self.dim)
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != (self.dim, self.dim):
            raise ValueError(f"expected a {self.dim}x{self.dim} array, got {vals.shape}")
        if self.kind not in (WIGNER, WEYL):
            raise ValueError(f"unknown phase function kind {self.kind!r}")
        object.__setattr__(self, "values", vals)

    def __getitem__(self, ab: tuple[int, int]) -> complex:
        a, b = ab
        return complex(self.values[a % self.dim, b % self.dim])

    def is_real(self, tol: float = REAL_TOL) -> bool:
        return float(np.max(np.abs(self.values.imag))) <= tol

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "kind": self.kind,
            "values": [[[v.real, v.imag] for v in row] for row in self.values.tolist()],
        }


@lru_cache(maxsize=32)
def _parity_family(n: int) -> np.ndarray:
    out = np.array([displaced_parity(n, a, b) for a, b in product(range(n), repeat=2)])
    out.flags.writeable = False
    return out.reshape(n, n, n, n)


@lru_cache(maxsize=32)
def _displacement_family(n: int) -> np.ndarray:
    out = np.array([op_D_symmetric(n, a, b) for a, b in product(range(n), repeat=2)])
    out.flags.writeable = False
    return out.reshape(n, n, n, n)


def _traces(theta: np.ndarray, family: np.ndarray) -> np.ndarray:
    # Tr[theta F] = sum_ij theta_ij F_ji
    return np.einsum("ij,abji->ab", theta, family)


def wigner(theta, n: int) -> PhaseFunction:
    """W(alpha, beta) = Tr[theta P(alpha, beta)] with displaced parities."""
    check_odd(n)
    return PhaseFunction(n, _traces(mc.as_cmatrix(theta, n), _parity_family(n)), WIGNER)


def weyl(theta, n: int) -> PhaseFunction:
    """W^(alpha, beta) = Tr[theta D(alpha, beta, 0)] with symmetric displacements."""
    check_odd(n)
    return PhaseFunction(n, _traces(mc.as_cmatrix(theta, n), _displacement_family(n)), WEYL)


def wigner_inverse(w: PhaseFunction) -> np.ndarray:
    """theta = n^-1 sum W(alpha, beta) P(alpha, beta)."""
    return np.einsum("ab,abij->ij", w.values, _parity_family(w.dim)) / w.dim


def _omega_table(n: int, scale: int) -> np.ndarray:
    xy = np.outer(np.arange(n), np.arange(n)) * scale % n
    return np.array([root_of_unity(n, int(e)) for e in xy.ravel()]).reshape(n, n)


def _same_dim(w1: PhaseFunction, w2: PhaseFunction, kind: str) -> int:
    if w1.dim != w2.dim:
        raise ValueError(f"dimension mismatch: {w1.dim} vs {w2.dim}")
    if w1.kind != kind or w2.kind != kind:
        raise ValueError(f"expected two {kind} functions")
    return w1.dim


def wigner_star(w1: PhaseFunction, w2: PhaseFunction, c: float) -> PhaseFunction:
    """c * sum W1(a+a1, b+b1) W2(a+a2, b+b2) omega(2(a2 b1 - a1 b2)).

    The phase splits as K[a2, b1] * conj(K[a1, b2]) with K[x, y] = omega(2xy),
    so each output point costs two matrix products instead of n^4 terms.
    """
    n = _same_dim(w1, w2, WIGNER)
    k = _omega_table(n, 2)
    out = np.empty((n, n), dtype=complex)
    for a, b in product(range(n), repeat=2):
        s1 = np.roll(w1.values, (-a, -b), axis=(0, 1))
        s2 = np.roll(w2.values, (-a, -b), axis=(0, 1))
        out[a, b] = np.sum(k.conj() * (s1 @ (k.T @ s2)))
    return PhaseFunction(n, c * out, WIGNER)


def weyl_star(w1: PhaseFunction, w2: PhaseFunction, c: float) -> PhaseFunction:
    """c * sum W1(h a + a', h b + b') W2(h a - a', h b - b') omega(h a' b - h a b'), h = 2^-1."""
    n = _same_dim(w1, w2, WEYL)
    h = half(n)
    r = np.arange(n)
    out = np.empty((n, n), dtype=complex)
    for a, b in product(range(n), repeat=2):
        i1, j1 = (h * a + r) % n, (h * b + r) % n
        i2, j2 = (h * a - r) % n, (h * b - r) % n
        phase_a = np.array([root_of_unity(n, h * ap * b) for ap in r])
        phase_b = np.array([root_of_unity(n, -h * a * bp) for bp in r])
        terms = w1.values[np.ix_(i1, j1)] * w2.values[np.ix_(i2, j2)]
        out[a, b] = np.sum(terms * np.outer(phase_a, phase_b))
    return PhaseFunction(n, c * out, WEYL)


def calibrate_star(kind: str, n: int, pairs: int = 10, seed: int = 0) -> float:
    """Least-squares c with c * raw_star = phase function of the product."""
    fn, star = (wigner, wigner_star) if kind == WIGNER else (weyl, weyl_star)
    num = den = 0.0
    for rng in sample_rngs(seed, pairs):
        t, f = ginibre(rng, n), ginibre(rng, n)
        raw = star(fn(t, n), fn(f, n), 1.0).values
        target = fn(t @ f, n).values
        num += np.vdot(raw, target)
        den += np.vdot(raw, raw).real
    c = num / den
    if abs(c.imag) > 1e-9 * abs(c):
        raise ArithmeticError(f"calibration constant is not real: {c}")
    return float(c.real)


# -- ubiquity ------------------------------------------------------------------


INDEX_MAPS = {
    "(d*alpha, beta)": lambda d, a, b: (d * a, b),
    "(alpha, d*beta)": lambda d, a, b: (a, d * b),
    "(d*alpha, d*beta)": lambda d, a, b: (d * a, d * b),
}


@dataclass(frozen=True)
class Candidate:
    name: str
    max_deviation: float
    passed: bool

    def to_dict(self) -> dict:
        return {"map": self.name, "max_deviation": self.max_deviation, "passed": self.passed}


@dataclass(frozen=True)
class PhaseUbiquityReport:
    function: str
    m: int
    n: int
    tolerance: float
    candidates: tuple[Candidate, ...]

    @property
    def surviving(self) -> list[str]:
        return [c.name for c in self.candidates if c.passed]

    @property
    def decisive(self) -> bool:
        """One surviving candidate, or m = n where all of them collapse to the identity."""
        return len(self.surviving) == 1 or (self.m == self.n and len(self.surviving) > 0)

    def to_dict(self) -> dict:
        return {
            "function": self.function,
            "m": self.m,
            "n": self.n,
            "tolerance": self.tolerance,
            "candidates": [c.to_dict() for c in self.candidates],
            "surviving": self.surviving,
            "decisive": self.decisive,
        }


def _unit_operators(m: int):
    for i, j in product(range(m), repeat=2):
        e = np.zeros((m, m), dtype=complex)
        e[i, j] = 1.0
        yield e


def _ubiquity_pairs(fn, m: int, n: int):
    """(values in Sigma(m), values of the embedded operator in Sigma(n)) per basis operator."""
    check_divides(m, n)
    check_odd(m)
    check_odd(n)
    return [(fn(e, m).values, fn(mc.embed_matrix(e, n), n).values) for e in _unit_operators(m)]


def _deviation(pairs, m: int, n: int, index_map, factor) -> float:
    d = n // m
    worst = 0.0
    for small, big in pairs:
        for a, b in product(range(m), repeat=2):
            x, y = index_map(d, a, b)
            got = factor(a, b) * big[x % n, y % n]
            worst = max(worst, float(abs(got - small[a, b])))
    return worst


def verify_wigner_ubiquity(
    m: int, n: int, maps: list[str] | None = None, tol: float = 1e-9
) -> PhaseUbiquityReport:
    """Test W_n(J(theta); map(alpha, beta)) = W_m(theta; alpha, beta) over the unit basis."""
    pairs = _ubiquity_pairs(wigner, m, n)
    names = list(INDEX_MAPS) if maps is None else maps
    cands = []
    for name in names:
        dev = _deviation(pairs, m, n, INDEX_MAPS[name], lambda a, b: 1.0)
        cands.append(Candidate(name, dev, dev <= tol))
    return PhaseUbiquityReport(WIGNER, m, n, tol, tuple(cands))


def weyl_phase_candidates(m: int, n: int) -> dict[str, int]:
    """Phase exponents c for omega_n(c alpha beta): 0 and +-2^-1 d (d - 1) mod n."""
    d = n // m
    c = half(n) * d * (d - 1) % n
    return {"0": 0, "+h*d*(d-1)": c, "-h*d*(d-1)": -c % n}


def verify_weyl_ubiquity(
    m: int, n: int, maps: list[str] | None = None, tol: float = 1e-9
) -> PhaseUbiquityReport:
    """Same protocol for the Weyl function, with extra phase and scale candidates.

    A candidate (map, c, s) compares s * omega_n(c alpha beta) * W^_n(J(theta); map)
    with W^_m(theta; alpha, beta).
    """
    pairs = _ubiquity_pairs(weyl, m, n)
    d = n // m
    names = list(INDEX_MAPS) if maps is None else maps
    cands = []
    seen = set()
    for name in names:
        for pname, c in weyl_phase_candidates(m, n).items():
            for scale in (1, d):
                label = f"{name} phase={pname} scale={scale}"
                if (name, c, scale) in seen:
                    continue
                seen.add((name, c, scale))
                factor = lambda a, b, c=c, s=scale: s * root_of_unity(n, c * a * b)
                dev = _deviation(pairs, m, n, INDEX_MAPS[name], factor)
                cands.append(Candidate(label, dev, dev <= tol))
    return PhaseUbiquityReport(WEYL, m, n, tol, tuple(cands))
