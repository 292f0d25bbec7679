"""Exact integer arithmetic on dimension indices.

Everything here works on Python ints, so there is no silent overflow.
Dimensions live in {2, 3, ...}; the trivial system n = 1 is excluded.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

# trial division is the supported factorisation strategy
MAX_DIM = 10**6


class DivisibilityError(ValueError):
    """Raised when an operation needs m | n and it does not hold."""


def check_dim(n: int, name: str = "n") -> int:
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"{name} must be an int, got {type(n).__name__}")
    if n < 2:
        raise ValueError(f"{name} must be >= 2, got {n}")
    return n


def check_divides(m: int, n: int) -> int:
    """Validate m | n (both dimensions) and return the cofactor d = n // m."""
    check_dim(m, "m")
    check_dim(n, "n")
    if n % m:
        raise DivisibilityError(f"{m} does not divide {n}")
    return n // m


@lru_cache(maxsize=4096)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorisation of n >= 1 as ((p, e), ...) with p ascending."""
    if n < 1:
        raise ValueError(f"cannot factorise {n}")
    factors = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        factors.append((n, 1))
    return tuple(factors)


def prime_divisors(n: int) -> list[int]:
    return [p for p, _ in factorize(n)]


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == ((n, 1),)


def all_divisors(n: int) -> list[int]:
    """All positive divisors of n, including 1 and n, ascending."""
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def divisors_in_X(n: int) -> list[int]:
    """Divisors of n that are at least 2 (the points of the basic open set at n)."""
    check_dim(n)
    return all_divisors(n)[1:]


def sigma_k(n: int, k: int) -> int:
    """Divisor function: sum of d**k over every divisor d of n."""
    check_dim(n)
    if k < 0:
        raise ValueError("k must be non-negative")
    return sum(d**k for d in all_divisors(n))


def jordan_totient(k: int, n: int) -> int:
    """J_k(n) = n^k * prod_{p|n} (1 - p^-k), computed exactly."""
    check_dim(n)
    if k < 1:
        raise ValueError("k must be >= 1")
    num, den = n**k, 1
    for p in prime_divisors(n):
        num *= p**k - 1
        den *= p**k
    value, rem = divmod(num, den)
    assert rem == 0, f"J_{k}({n}) is not integral"
    return value


def euler_phi(n: int) -> int:
    return jordan_totient(1, n)


def dedekind_psi(n: int) -> int:
    """psi(n) = J_2(n) / phi(n). The division is exact; a remainder means a bug."""
    value, rem = divmod(jordan_totient(2, n), euler_phi(n))
    assert rem == 0, f"J_2({n}) not divisible by phi({n})"
    return value


def sp2_order(n: int) -> int:
    """Order of Sp(2, Z(n)) (= SL(2, Z(n))), n * J_2(n)."""
    return n * jordan_totient(2, n)


@dataclass(frozen=True)
class TauPerm:
    """The permutation of {0..n-1} that sends r < m to r*d.

    Indices r >= m are sent, in order, onto the non-multiples of d.
    """

    n: int
    m: int
    table: tuple[int, ...]

    @property
    def d(self) -> int:
        return self.n // self.m

    def __call__(self, r: int) -> int:
        return self.table[r]

    def __len__(self) -> int:
        return self.n

    def inverse(self) -> tuple[int, ...]:
        inv = [0] * self.n
        for r, s in enumerate(self.table):
            inv[s] = r
        return tuple(inv)


@lru_cache(maxsize=1024)
def tau_perm(n: int, m: int) -> TauPerm:
    d = check_divides(m, n)
    head = [r * d for r in range(m)]
    # (r - m)-th smallest non-multiple of d; closed form r-m + (r-m)//(d-1) + 1
    tail = [r - m + (r - m) // (d - 1) + 1 for r in range(m, n)] if d > 1 else []
    return TauPerm(n, m, tuple(head + tail))


def root_of_unity(n: int, a: int) -> complex:
    """omega_n(a) = exp(2 pi i a / n), with a reduced mod n first."""
    check_dim(n)
    a %= n
    # exact values at the quarter turns keep tests free of 1e-17 noise
    if (4 * a) % n == 0:
        return (1, 1j, -1, -1j)[(4 * a) // n]
    return cmath.exp(2j * math.pi * a / n)


def inverse_mod(a: int, n: int) -> int:
    """Multiplicative inverse of a modulo n; ValueError if gcd(a, n) != 1."""
    return pow(a, -1, n)
