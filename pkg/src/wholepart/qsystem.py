"""The finite quantum system Sigma(n) and its displacement/symplectic groups.

Group elements are exact modular integers; matrices appear only for the
representation on H(n) = C^n with position basis |X_n; r>.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .numtheory import check_dim, check_divides, inverse_mod, root_of_unity


def _omega_vec(n: int, exponents) -> np.ndarray:
    return np.array([root_of_unity(n, int(e)) for e in exponents], dtype=complex)


def fourier_matrix(n: int) -> np.ndarray:
    """F_n[r, s] = n^-1/2 omega_n(rs); column r is the momentum state |P_n; r>."""
    check_dim(n)
    rs = np.outer(np.arange(n), np.arange(n)) % n
    return _omega_vec(n, rs.ravel()).reshape(n, n) / np.sqrt(n)


def op_Z(n: int, alpha: int) -> np.ndarray:
    check_dim(n)
    return np.diag(_omega_vec(n, [r * alpha for r in range(n)]))


def op_X(n: int, beta: int) -> np.ndarray:
    """Cyclic shift |r> -> |r + beta>."""
    check_dim(n)
    out = np.zeros((n, n), dtype=complex)
    r = np.arange(n)
    out[(r + beta) % n, r] = 1.0
    return out


def op_D(n: int, alpha: int, beta: int, gamma: int = 0) -> np.ndarray:
    return op_Z(n, alpha) @ op_X(n, beta) * root_of_unity(n, gamma)


def check_odd(n: int) -> None:
    check_dim(n)
    if n % 2 == 0:
        raise ValueError(f"symmetric displacements need odd n, got {n}")


def half(n: int) -> int:
    """2^-1 in Z(n) for odd n."""
    check_odd(n)
    return inverse_mod(2, n)


def op_D_symmetric(n: int, alpha: int, beta: int, gamma: int = 0) -> np.ndarray:
    """Z(alpha) X(beta) omega_n(gamma - 2^-1 alpha beta), odd n only."""
    return op_Z(n, alpha) @ op_X(n, beta) * root_of_unity(n, gamma - half(n) * alpha * beta)


def parity(n: int) -> np.ndarray:
    check_odd(n)
    out = np.zeros((n, n), dtype=complex)
    r = np.arange(n)
    out[(-r) % n, r] = 1.0
    return out


def displaced_parity(n: int, alpha: int, beta: int) -> np.ndarray:
    d = op_D_symmetric(n, alpha, beta)
    return d @ parity(n) @ d.conj().T


# -- Heisenberg-Weyl group over Z(n) ---------------------------------------


@dataclass(frozen=True)
class HWElement:
    n: int
    alpha: int
    beta: int
    gamma: int

    def __post_init__(self):
        check_dim(self.n)
        for name in ("alpha", "beta", "gamma"):
            object.__setattr__(self, name, getattr(self, name) % self.n)

    def __mul__(self, other: HWElement) -> HWElement:
        return hw_mul(self, other)

    def inverse(self) -> HWElement:
        a, b, g = self.alpha, self.beta, self.gamma
        return HWElement(self.n, -a, -b, -g - a * b)


def hw_mul(a: HWElement, b: HWElement) -> HWElement:
    if a.n != b.n:
        raise ValueError("elements belong to different groups")
    return HWElement(
        a.n, a.alpha + b.alpha, a.beta + b.beta, a.gamma + b.gamma - b.alpha * a.beta
    )


def hw_matrix(a: HWElement) -> np.ndarray:
    """Upper unitriangular 3x3 form [[1, -beta, gamma], [0, 1, alpha], [0, 0, 1]] mod n."""
    return np.array(
        [[1, -a.beta, a.gamma], [0, 1, a.alpha], [0, 0, 1]], dtype=np.int64
    ) % a.n


def hw_operator(a: HWElement) -> np.ndarray:
    return op_D(a.n, a.alpha, a.beta, a.gamma)


def hw_embed(a: HWElement, n: int) -> HWElement:
    """D_m(alpha, beta, gamma) -> D_n(d alpha, beta, d gamma)."""
    d = check_divides(a.n, n)
    return HWElement(n, d * a.alpha, a.beta, d * a.gamma)


def hw_elements(n: int):
    for a, b, g in itertools.product(range(n), repeat=3):
        yield HWElement(n, a, b, g)


@dataclass(frozen=True)
class HomomorphismReport:
    m: int
    n: int
    pairs: int
    holds_beta_mod_n: int
    holds_beta_mod_m: int
    failing_example: tuple | None

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "pairs": self.pairs,
            "holds_beta_mod_n": self.holds_beta_mod_n,
            "holds_beta_mod_m": self.holds_beta_mod_m,
            "failing_example": list(self.failing_example) if self.failing_example else None,
        }


def verify_hw_embed_homomorphism(m: int, n: int) -> HomomorphismReport:
    """Compare embed(a*b) with embed(a)*embed(b) over all pairs of HW[Z(m)].

    The beta component is added mod m on one side and mod n on the other,
    so the report counts agreement under both readings.
    """
    check_divides(m, n)
    elements = list(hw_elements(m))
    pairs = ok_n = ok_m = 0
    failing = None
    for a in elements:
        ea = hw_embed(a, n)
        for b in elements:
            pairs += 1
            lhs = hw_embed(a * b, n)
            rhs = ea * hw_embed(b, n)
            same_ag = lhs.alpha == rhs.alpha and lhs.gamma == rhs.gamma
            if same_ag and lhs.beta == rhs.beta:
                ok_n += 1
            elif failing is None:
                failing = ((a.alpha, a.beta, a.gamma), (b.alpha, b.beta, b.gamma))
            if same_ag and (lhs.beta - rhs.beta) % m == 0:
                ok_m += 1
    return HomomorphismReport(m, n, pairs, ok_n, ok_m, failing)


# -- Sp(2, Z(n)) -------------------------------------------------------------


@dataclass(frozen=True)
class SpElement:
    """s_n(kappa, lambda | mu, nu) with kappa nu - lambda mu = 1 mod n."""

    n: int
    kappa: int
    lam: int
    mu: int
    nu: int

    def __post_init__(self):
        check_dim(self.n)
        for name in ("kappa", "lam", "mu", "nu"):
            object.__setattr__(self, name, getattr(self, name) % self.n)
        if (self.kappa * self.nu - self.lam * self.mu) % self.n != 1:
            raise ValueError(f"determinant is not 1 mod {self.n}")

    def __mul__(self, other: SpElement) -> SpElement:
        return sp_mul(self, other)

    def matrix(self) -> np.ndarray:
        return np.array([[self.kappa, self.lam], [self.mu, self.nu]], dtype=np.int64)


def _mul2(x, y, n):
    (a, b), (c, d) = x
    (e, f), (g, h) = y
    return ((a * e + b * g) % n, (a * f + b * h) % n), ((c * e + d * g) % n, (c * f + d * h) % n)


def sp_mul(a: SpElement, b: SpElement) -> SpElement:
    if a.n != b.n:
        raise ValueError("elements belong to different groups")
    (k, l), (m, v) = _mul2(((a.kappa, a.lam), (a.mu, a.nu)), ((b.kappa, b.lam), (b.mu, b.nu)), a.n)
    return SpElement(a.n, k, l, m, v)


def sp_elements(n: int):
    check_dim(n)
    for k, l, m, v in itertools.product(range(n), repeat=4):
        if (k * v - l * m) % n == 1:
            yield SpElement(n, k, l, m, v)


@dataclass(frozen=True)
class SpCandidate:
    """Raw image of the candidate symplectic embedding; may fail det = 1."""

    n: int
    kappa: int
    lam: int
    mu: int
    nu: int

    @property
    def det(self) -> int:
        return (self.kappa * self.nu - self.lam * self.mu) % self.n

    @property
    def valid(self) -> bool:
        return self.det == 1 % self.n

    def rows(self):
        return ((self.kappa, self.lam), (self.mu, self.nu))


def sp_embed(a: SpElement, n: int) -> SpCandidate:
    """(kappa, lambda | mu, nu) -> (d kappa, lambda | d mu, nu) taken mod n."""
    d = check_divides(a.n, n)
    return SpCandidate(n, d * a.kappa % n, a.lam % n, d * a.mu % n, a.nu % n)


@dataclass(frozen=True)
class SpEmbedReport:
    m: int
    n: int
    group_order: int
    valid_images: int
    image_determinants: tuple[int, ...]
    product_pairs: int
    products_preserved: int
    identity_image_det: int

    @property
    def is_embedding(self) -> bool:
        return self.valid_images == self.group_order and self.products_preserved == self.product_pairs

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "group_order": self.group_order,
            "valid_images": self.valid_images,
            "image_determinants": list(self.image_determinants),
            "product_pairs": self.product_pairs,
            "products_preserved": self.products_preserved,
            "identity_image_det": self.identity_image_det,
            "is_embedding": self.is_embedding,
        }


def verify_sp_embed(m: int, n: int) -> SpEmbedReport:
    """Exhaustive diagnostic of the candidate embedding Sp(2,Z(m)) -> Sp(2,Z(n))."""
    check_divides(m, n)
    if m > 6:
        raise ValueError("exhaustive check is limited to m <= 6")
    group = list(sp_elements(m))
    images = {g: sp_embed(g, n) for g in group}
    dets = sorted({c.det for c in images.values()})
    valid = sum(c.valid for c in images.values())
    preserved = 0
    for a in group:
        for b in group:
            if images[a * b].rows() == _mul2(images[a].rows(), images[b].rows(), n):
                preserved += 1
    ident = sp_embed(SpElement(m, 1, 0, 0, 1), n)
    return SpEmbedReport(m, n, len(group), valid, tuple(dets), len(group) ** 2, preserved, ident.det)
