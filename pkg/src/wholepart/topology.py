"""The divisor topology on X = {2, 3, ...} and on X x X.

Open sets are stored by their generators: U(n) is the set of divisors
(>= 2) of n, and a general open set is a finite union of such basics.
The generator set is kept antichain-reduced, so equal sets compare equal.
Closed sets are never materialised; they are queried through membership
and bounded listings.
"""

from __future__ import annotations

import enum
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from math import gcd, lcm

from .numtheory import check_dim, divisors_in_X, is_prime, prime_divisors


class Kind(enum.Enum):
    EMPTY = "empty"
    WHOLE = "whole"
    UNION = "union"


def _reduce_antichain(gens: Iterable[int]) -> frozenset[int]:
    gens = set(gens)
    return frozenset(g for g in gens if not any(h != g and h % g == 0 for h in gens))


@dataclass(frozen=True)
class OpenSet:
    kind: Kind
    basics: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        if (self.kind is Kind.UNION) != bool(self.basics):
            raise ValueError("basics must be non-empty exactly for a union of basics")
        if self.kind is Kind.UNION:
            for g in self.basics:
                check_dim(g, "generator")
            object.__setattr__(self, "basics", _reduce_antichain(self.basics))

    @classmethod
    def from_generators(cls, gens: Iterable[int]) -> OpenSet:
        gens = frozenset(gens)
        return cls(Kind.UNION, gens) if gens else EMPTY

    def __contains__(self, m: int) -> bool:
        return member(m, self)

    def __or__(self, other: OpenSet) -> OpenSet:
        return union(self, other)

    def __and__(self, other: OpenSet) -> OpenSet:
        return intersect(self, other)

    def points(self) -> list[int]:
        """All points of a union of basics, ascending (finite by construction)."""
        if self.kind is Kind.WHOLE:
            raise ValueError("the whole space is infinite")
        pts: set[int] = set()
        for g in self.basics:
            pts.update(divisors_in_X(g))
        return sorted(pts)

    def __str__(self) -> str:
        if self.kind is Kind.EMPTY:
            return "{}"
        if self.kind is Kind.WHOLE:
            return "X"
        return " u ".join(f"U({g})" for g in sorted(self.basics))


EMPTY = OpenSet(Kind.EMPTY)
WHOLE = OpenSet(Kind.WHOLE)


def basic_open(n: int) -> OpenSet:
    return OpenSet(Kind.UNION, frozenset([check_dim(n)]))


def smallest_neighborhood(n: int) -> OpenSet:
    # Alexandrov: every open set containing n contains all divisors of n
    return basic_open(n)


def union(a: OpenSet, b: OpenSet) -> OpenSet:
    if Kind.WHOLE in (a.kind, b.kind):
        return WHOLE
    return OpenSet.from_generators(a.basics | b.basics)


def intersect(a: OpenSet, b: OpenSet) -> OpenSet:
    if a.kind is Kind.WHOLE:
        return b
    if b.kind is Kind.WHOLE:
        return a
    # U(x) & U(y) = U(gcd(x, y)), empty when the gcd is 1
    gens = {gcd(x, y) for x in a.basics for y in b.basics}
    gens.discard(1)
    return OpenSet.from_generators(gens)


def intersect_all(sets: Iterable[OpenSet]) -> OpenSet:
    out = WHOLE
    for s in sets:
        out = intersect(out, s)
    return out


def member(m: int, s: OpenSet) -> bool:
    check_dim(m, "m")
    if s.kind is Kind.WHOLE:
        return True
    return any(g % m == 0 for g in s.basics)


def closure_member(q: int, n: int) -> bool:
    """q lies in the closure of {n} iff q is a multiple of n."""
    check_dim(q, "q")
    check_dim(n)
    return q % n == 0


def closure_list(n: int, limit: int) -> list[int]:
    check_dim(n)
    return list(range(n, limit + 1, n))


def closed_complement_member(q: int, s: OpenSet) -> bool:
    """Membership in the closed set X - s."""
    return not member(q, s)


def t0_witness(a: int, b: int) -> OpenSet:
    """An open set containing exactly one of a, b."""
    check_dim(a, "a")
    check_dim(b, "b")
    if a == b:
        raise ValueError("T0 witness needs two distinct points")
    return basic_open(a) if a % b else basic_open(b)


def t1_fails(a: int, b: int) -> bool:
    """True when no open set can hold the larger point without the smaller one."""
    check_dim(a, "a")
    check_dim(b, "b")
    if a == b:
        raise ValueError("T1 separation needs two distinct points")
    return a % b == 0 or b % a == 0


def primes_dense_check(s: OpenSet) -> bool:
    """Every non-empty open set meets the primes. Empty returns True by convention."""
    if s.kind is Kind.EMPTY:
        return True
    if s.kind is Kind.WHOLE:
        return True
    hit = [p for g in s.basics for p in prime_divisors(g) if member(p, s)]
    assert hit and all(is_prime(p) for p in hit)
    return True


@dataclass(frozen=True)
class ContinuityReport:
    name: str
    window: tuple[int, int]
    pairs_checked: int
    passed: bool
    counterexample: tuple[int, int] | None = None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "window": list(self.window),
            "pairs_checked": self.pairs_checked,
            "passed": self.passed,
            "counterexample": list(self.counterexample) if self.counterexample else None,
        }


def check_monotone_continuity(
    f: Callable[[int], int], window: tuple[int, int], name: str = "f"
) -> ContinuityReport:
    """Check m | n => f(m) | f(n) for all m | n in [lo, hi].

    A monotone map into a subset of X with the induced topology is
    continuous, so a pass certifies continuity on the window.
    """
    lo, hi = window
    check_dim(lo, "window start")
    values = {k: f(k) for k in range(lo, hi + 1)}
    pairs = 0
    for n in range(lo, hi + 1):
        for m in divisors_in_X(n):
            if m < lo:
                continue
            pairs += 1
            if values[n] % values[m]:
                return ContinuityReport(name, (lo, hi), pairs, False, (m, n))
    return ContinuityReport(name, (lo, hi), pairs, True)


# -- X x X with the product topology ---------------------------------------


def _reduce_pairs(gens: Iterable[tuple[int, int]]) -> frozenset[tuple[int, int]]:
    gens = set(gens)
    return frozenset(
        g
        for g in gens
        if not any(h != g and h[0] % g[0] == 0 and h[1] % g[1] == 0 for h in gens)
    )


@dataclass(frozen=True)
class OpenSet2:
    kind: Kind
    basics: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        if (self.kind is Kind.UNION) != bool(self.basics):
            raise ValueError("basics must be non-empty exactly for a union of basics")
        if self.kind is Kind.UNION:
            for g1, g2 in self.basics:
                check_dim(g1)
                check_dim(g2)
            object.__setattr__(self, "basics", _reduce_pairs(self.basics))

    @classmethod
    def from_generators(cls, gens: Iterable[tuple[int, int]]) -> OpenSet2:
        gens = frozenset(gens)
        return cls(Kind.UNION, gens) if gens else EMPTY2

    def __contains__(self, pt: tuple[int, int]) -> bool:
        return member2(pt, self)


EMPTY2 = OpenSet2(Kind.EMPTY)
WHOLE2 = OpenSet2(Kind.WHOLE)


def basic_open2(n1: int, n2: int) -> OpenSet2:
    return OpenSet2(Kind.UNION, frozenset([(check_dim(n1), check_dim(n2))]))


def union2(a: OpenSet2, b: OpenSet2) -> OpenSet2:
    if Kind.WHOLE in (a.kind, b.kind):
        return WHOLE2
    return OpenSet2.from_generators(a.basics | b.basics)


def intersect2(a: OpenSet2, b: OpenSet2) -> OpenSet2:
    if a.kind is Kind.WHOLE:
        return b
    if b.kind is Kind.WHOLE:
        return a
    gens = set()
    for x1, x2 in a.basics:
        for y1, y2 in b.basics:
            g1, g2 = gcd(x1, y1), gcd(x2, y2)
            if g1 > 1 and g2 > 1:
                gens.add((g1, g2))
    return OpenSet2.from_generators(gens)


def member2(pt: tuple[int, int], s: OpenSet2) -> bool:
    m1, m2 = pt
    check_dim(m1)
    check_dim(m2)
    if s.kind is Kind.WHOLE:
        return True
    return any(g1 % m1 == 0 and g2 % m2 == 0 for g1, g2 in s.basics)


def closure_member2(q: tuple[int, int], n: tuple[int, int]) -> bool:
    return closure_member(q[0], n[0]) and closure_member(q[1], n[1])


def t0_witness2(a: tuple[int, int], b: tuple[int, int]) -> OpenSet2:
    if a == b:
        raise ValueError("T0 witness needs two distinct points")
    divides = a[0] % b[0] == 0 and a[1] % b[1] == 0  # b | a
    return basic_open2(*b) if divides else basic_open2(*a)


# -- spaces order-isomorphic to X ------------------------------------------


class LabeledSpace:
    """A poset order-isomorphic to X, carried through a bijection of labels.

    ``label(n)`` names the point for dimension n (e.g. "H(6)"), ``index``
    is its inverse. Every query is answered by transporting to X and back,
    which is exactly the homeomorphism between the two spaces.
    """

    def __init__(self, label: Callable[[int], object], index: Callable[[object], int]):
        self.label = label
        self.index = index

    def basic_open(self, a) -> list:
        return [self.label(m) for m in divisors_in_X(self.index(a))]

    def member(self, a, gens: Iterable) -> bool:
        return member(self.index(a), OpenSet.from_generators(self.index(g) for g in gens))

    def precedes(self, a, b) -> bool:
        return self.index(b) % self.index(a) == 0

    def closure_list(self, a, limit) -> list:
        return [self.label(q) for q in closure_list(self.index(a), self.index(limit))]

    def t0_witness(self, a, b) -> list:
        return [self.label(g) for g in sorted(t0_witness(self.index(a), self.index(b)).basics)]

    def t1_fails(self, a, b) -> bool:
        return t1_fails(self.index(a), self.index(b))

    def supremum(self, points: Iterable):
        return self.label(lcm(*(self.index(p) for p in points)))
