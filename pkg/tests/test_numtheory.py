import random
from math import gcd, lcm

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wholepart import numtheory as nt
from oracles import (
    count_maximal_lines,
    count_primitive_pairs,
    count_sl2,
    phi_by_count,
    tau_by_enumeration,
)


@pytest.mark.parametrize(
    "n, expected", [(6, [2, 3, 6]), (7, [7]), (12, [2, 3, 4, 6, 12])]
)
def test_divisors_in_X(n, expected):
    assert nt.divisors_in_X(n) == expected


def test_sigma_k_values():
    assert nt.sigma_k(6, 0) == 4
    assert len(nt.divisors_in_X(6)) == nt.sigma_k(6, 0) - 1
    assert nt.sigma_k(12, 1) == 28
    for p in (2, 3, 5, 7, 97):
        assert nt.sigma_k(p, 1) == p + 1


def test_sigma_k_big_values_are_exact():
    # arbitrary precision: no wraparound at 2**64
    n = 2 * 3 * 5 * 7
    expected = sum(d**40 for d in range(1, n + 1) if n % d == 0)
    assert nt.sigma_k(n, 40) == expected
    assert nt.sigma_k(n, 40) > 2**64


def test_jordan_totient_k1_is_phi():
    for n in range(2, 51):
        assert nt.jordan_totient(1, n) == phi_by_count(n)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_jordan_totient_at_primes(p, k):
    assert nt.jordan_totient(k, p) == p**k - 1


def test_jordan_J2_matches_pair_count():
    assert count_primitive_pairs(6) == 24
    assert nt.jordan_totient(2, 6) == 24
    for n in range(2, 61):
        assert nt.jordan_totient(2, n) == count_primitive_pairs(n), n


def test_dedekind_psi():
    assert nt.dedekind_psi(6) == 12
    for p in (2, 3, 5, 7, 11):
        assert nt.dedekind_psi(p) == p + 1
    for n in range(2, 13):
        assert nt.dedekind_psi(n) == count_maximal_lines(n), n


@pytest.mark.parametrize("n, expected", [(2, 6), (3, 24), (4, 48)])
def test_sp2_order_small(n, expected):
    assert count_sl2(n) == expected
    assert nt.sp2_order(n) == expected


@pytest.mark.parametrize(
    "n, m, table",
    [(6, 3, [0, 2, 4, 1, 3, 5]), (4, 2, [0, 2, 1, 3]), (5, 5, [0, 1, 2, 3, 4])],
)
def test_tau_perm_examples(n, m, table):
    assert list(nt.tau_perm(n, m).table) == table


def test_tau_perm_identity_when_equal():
    for n in range(2, 30):
        assert nt.tau_perm(n, n).table == tuple(range(n))


def test_tau_perm_is_bijection_exhaustive():
    for n in range(2, 201):
        for m in nt.divisors_in_X(n):
            tau = nt.tau_perm(n, m)
            assert sorted(tau.table) == list(range(n))
            assert list(tau.table) == tau_by_enumeration(n, m)
            d = n // m
            assert all(tau(r) == r * d for r in range(m))
            assert {tau(r) for r in range(m, n)} == {s for s in range(n) if s % d}


def test_tau_perm_rejects_non_divisor():
    with pytest.raises(nt.DivisibilityError):
        nt.tau_perm(7, 3)


def test_tau_inverse():
    tau = nt.tau_perm(12, 4)
    inv = tau.inverse()
    assert all(inv[tau(r)] == r for r in range(12))


def test_root_of_unity():
    assert nt.root_of_unity(4, 1) == 1j
    for n in range(2, 20):
        assert nt.root_of_unity(n, 0) == 1
        assert abs(nt.root_of_unity(n, 7) - nt.root_of_unity(n, 7 + 3 * n)) < 1e-14
        assert abs(abs(nt.root_of_unity(n, 5)) - 1) < 1e-14


def test_root_of_unity_subgroup_pairing():
    rng = random.Random(5)
    for _ in range(200):
        m = rng.randint(2, 12)
        d = rng.randint(1, 6)
        n = m * d
        a, b = rng.randrange(m), rng.randrange(m)
        assert abs(nt.root_of_unity(n, d * a * b) - nt.root_of_unity(m, a * b)) < 1e-12


def test_lcm_is_supremum_in_window():
    window = range(2, 101)
    for r in range(2, 101):
        for s in range(r, 101):
            u = lcm(r, s)
            if u > 100:
                continue
            uppers = [x for x in window if x % r == 0 and x % s == 0]
            assert min(uppers) == u
            assert all(x % u == 0 for x in uppers)


def test_J2_and_psi_are_monotone_under_divisibility():
    for n in range(2, 101):
        for m in nt.divisors_in_X(n):
            assert nt.jordan_totient(2, n) % nt.jordan_totient(2, m) == 0
            assert nt.dedekind_psi(n) % nt.dedekind_psi(m) == 0


@given(st.integers(2, 10**6))
def test_factorize_roundtrip(n):
    prod = 1
    for p, e in nt.factorize(n):
        assert nt.is_prime(p)
        prod *= p**e
    assert prod == n


@given(st.integers(2, 5000), st.integers(1, 4))
def test_jordan_multiplicative(n, k):
    for m in range(2, 30):
        if gcd(m, n) == 1:
            assert nt.jordan_totient(k, m * n) == nt.jordan_totient(k, m) * nt.jordan_totient(k, n)


@pytest.mark.parametrize("bad", [0, 1, -3])
def test_check_dim_rejects(bad):
    with pytest.raises(ValueError):
        nt.divisors_in_X(bad)
