"""Supernatural (Steinitz) numbers ordered by divisibility.

A value is prod p^e_p with e_p in {0, 1, ..., inf}. The representation
keeps finite exponents and infinite ones apart, and has a separate flag
for the top element tau (every exponent infinite). The number 1 is not a
value, so ``inf`` returns None where the meet would be 1.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import reduce

from .numtheory import factorize, is_prime

INF = float("inf")


@dataclass(frozen=True)
class Supernatural:
    finite: tuple[tuple[int, int], ...] = ()
    infinite: frozenset[int] = frozenset()
    top: bool = False

    def __post_init__(self):
        fin = dict(self.finite)
        if len(fin) != len(self.finite):
            raise ValueError("repeated prime in finite exponents")
        for p, e in fin.items():
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            if not isinstance(e, int) or e < 0:
                raise ValueError(f"bad exponent {e!r} for {p}")
        inf_set = frozenset(self.infinite)
        for p in inf_set:
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
        if self.top:
            if fin or inf_set:
                raise ValueError("tau carries no explicit exponents")
        else:
            fin = {p: e for p, e in fin.items() if e > 0}
            if set(fin) & inf_set:
                raise ValueError("a prime cannot have both a finite and an infinite exponent")
            if not fin and not inf_set:
                raise ValueError("1 is not a supernatural number here")
        object.__setattr__(self, "finite", tuple(sorted(fin.items())))
        object.__setattr__(self, "infinite", inf_set)

    @classmethod
    def from_int(cls, n: int) -> Supernatural:
        if n < 2:
            raise ValueError("expected an integer >= 2")
        return cls(tuple(factorize(n)))

    @classmethod
    def from_exponents(cls, exps: Mapping[int, float]) -> Supernatural:
        fin = {p: int(e) for p, e in exps.items() if e != INF and e > 0}
        return cls(tuple(fin.items()), frozenset(p for p, e in exps.items() if e == INF))

    @classmethod
    def tau(cls, primes: Iterable[int] | None = None) -> Supernatural:
        """tau itself, or tau(pi) = prod_{p in pi} p^inf for a finite set of primes."""
        if primes is None:
            return cls(top=True)
        return cls(infinite=frozenset(primes))

    def exponent(self, p: int) -> float:
        if self.top or p in self.infinite:
            return INF
        return dict(self.finite).get(p, 0)

    def support(self) -> frozenset[int]:
        if self.top:
            raise ValueError("tau has every prime in its support")
        return frozenset(dict(self.finite)) | self.infinite

    @property
    def is_natural(self) -> bool:
        return not self.top and not self.infinite

    def to_int(self) -> int:
        if not self.is_natural:
            raise ValueError(f"{self} is not a natural number")
        return reduce(lambda acc, pe: acc * pe[0] ** pe[1], self.finite, 1)

    def format(self, ascii: bool = False) -> str:
        if self.top:
            return "tau" if ascii else "τ"
        star, dot = ("inf", "*") if ascii else ("∞", "·")
        exps = dict(self.finite)
        exps.update({p: INF for p in self.infinite})
        parts = []
        for p in sorted(exps):
            e = exps[p]
            parts.append(f"{p}^{star}" if e == INF else (str(p) if e == 1 else f"{p}^{e}"))
        return dot.join(parts)

    def __str__(self) -> str:
        return self.format()


TAU = Supernatural.tau()

_FACTOR = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+|∞|inf)\s*)?$")
_TAU_SET = re.compile(r"^\s*(?:τ|tau)\s*\(\s*\{([^}]*)\}\s*\)\s*$")


def parse(text: str) -> Supernatural:
    """Read "2^3·5^∞", "12", "τ", "τ({2,3})" or the ASCII forms "2^3*5^inf", "tau"."""
    s = text.strip()
    if s in ("τ", "tau"):
        return TAU
    m = _TAU_SET.match(s)
    if m:
        items = [x.strip() for x in m.group(1).split(",") if x.strip()]
        return Supernatural.tau(int(x) for x in items)
    exps: dict[int, float] = {}
    for piece in re.split(r"[·*.]", s):
        fm = _FACTOR.match(piece)
        if not fm:
            raise ValueError(f"cannot parse {piece!r} in {text!r}")
        base, e = int(fm.group(1)), fm.group(2)
        exp = 1 if e is None else (INF if e in ("∞", "inf") else int(e))
        if base < 2:
            raise ValueError(f"bad factor {base} in {text!r}")
        for p, k in factorize(base):
            exps[p] = exps.get(p, 0) + k * exp
    return Supernatural.from_exponents(exps)


def _primes(values: Iterable[Supernatural]) -> set[int]:
    out: set[int] = set()
    for v in values:
        out |= v.support()
    return out


def divides(a: Supernatural, b: Supernatural) -> bool:
    """Exponentwise a <= b, with inf as the largest exponent."""
    if b.top:
        return True
    if a.top:
        return False
    return all(a.exponent(p) <= b.exponent(p) for p in a.support())


def sup(values: Iterable[Supernatural]) -> Supernatural:
    vals = list(values)
    if not vals:
        raise ValueError("sup of an empty family is not defined")
    if any(v.top for v in vals):
        return TAU
    return Supernatural.from_exponents({p: max(v.exponent(p) for v in vals) for p in _primes(vals)})


def inf(values: Iterable[Supernatural]) -> Supernatural | None:
    """Exponentwise min; None when every exponent would be 0."""
    vals = [v for v in values if not v.top]
    if not vals:
        return TAU
    common = set.intersection(*(set(v.support()) for v in vals))
    exps = {p: min(v.exponent(p) for v in vals) for p in common}
    exps = {p: e for p, e in exps.items() if e > 0}
    return Supernatural.from_exponents(exps) if exps else None


@dataclass(frozen=True)
class GeometricChain:
    """The chain b, b^2, b^3, ... for a base with finite exponents."""

    base: Supernatural

    def __post_init__(self):
        if not self.base.is_natural:
            raise ValueError("chain base must have finite exponents")

    def term(self, k: int) -> Supernatural:
        if k < 1:
            raise ValueError("terms are indexed from 1")
        return Supernatural(tuple((p, e * k) for p, e in self.base.finite))


def chain_sup(c: GeometricChain) -> Supernatural:
    return Supernatural.tau(c.base.support())


def is_dcpo_witness(family: Iterable[Supernatural]) -> Supernatural:
    """Supremum of a finite directed family, checked against every member."""
    vals = list(family)
    if not vals:
        raise ValueError("directed families are non-empty")
    for a in vals:
        for b in vals:
            if not any(divides(a, c) and divides(b, c) for c in vals):
                raise ValueError(f"family is not directed: no member bounds {a} and {b}")
    top = sup(vals)
    if not all(divides(v, top) for v in vals):
        raise AssertionError("supremum does not bound the family")
    return top
