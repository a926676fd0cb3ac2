import math
import random

import gmpy2
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import trial_factor
from wieferich.arith import (
    MR_WITNESSES,
    DomainError,
    divisors,
    factorize,
    is_prime,
    mobius,
    mulmod,
    powmod,
    squarefree_decomposition,
)

M126 = (1 << 126) - 1


def test_mulmod_identities():
    assert mulmod(0, 12345, 99991) == 0
    assert mulmod(1, 12345, 99991) == 12345
    a = (1 << 63) - 1
    assert mulmod(a, a, M126) == int(gmpy2.f_mod(gmpy2.mpz(a) * a, M126))


def test_modulus_domain():
    with pytest.raises(DomainError):
        mulmod(1, 1, 0)
    with pytest.raises(DomainError):
        powmod(2, 3, 0)
    with pytest.raises(DomainError):
        powmod(2, 3, (1 << 126) + 1)


def test_powmod_examples():
    assert powmod(2, 1092, 1093**2) == 1
    assert powmod(17, 0, 1000) == 1
    assert powmod(17, 0, 1) == 0
    r = powmod(2, 1092, 1093**3)
    assert r == int(gmpy2.powmod(2, 1092, 1093**3))
    assert r != 1


def test_mulmod_powmod_random_against_gmp():
    rng = random.Random(1)
    for _ in range(10_000):
        m = rng.randrange(1, 1 << 126)
        a, b = rng.randrange(m), rng.randrange(m)
        e = rng.randrange(1 << 64)
        assert mulmod(a, b, m) == int(gmpy2.f_mod(gmpy2.mpz(a) * b, m))
        assert powmod(a, e, m) == int(gmpy2.powmod(a, e, m))


@pytest.mark.parametrize("n,expected", [(1093, True), (1, False), (0, False), (2, True), (1006003, True), (3279, False)])
def test_is_prime_examples(n, expected):
    assert is_prime(n) is expected


def test_is_prime_strong_pseudoprimes():
    # composites that fool the first few bases; deterministic set must reject them
    for n in [2047, 3215031751, 3825123056546413051, 318665857834031151167461]:
        assert not is_prime(n)
    assert len(MR_WITNESSES) == 12


def test_is_prime_matches_sieve_and_sympy():
    from oracles import eratosthenes

    ps = set(eratosthenes(100_000))
    assert all(is_prime(n) == (n in ps) for n in range(100_000))
    rng = random.Random(2)
    for _ in range(2000):
        n = rng.randrange(1 << 64)
        assert is_prime(n) == sympy.isprime(n)
    for _ in range(200):
        n = rng.randrange(1 << 64, 1 << 96)
        assert is_prime(n) == sympy.isprime(n)


@pytest.mark.parametrize(
    "n,expected",
    [(1092, {2: 2, 3: 1, 7: 1, 13: 1}), (4, {2: 2}), (40486, {2: 1, 31: 1, 653: 1})],
)
def test_factorize_examples(n, expected):
    assert factorize(n).as_dict() == expected == trial_factor(n)


def test_factorize_domain():
    with pytest.raises(DomainError):
        factorize(1)
    with pytest.raises(DomainError):
        factorize(1 << 96)


def _check(n):
    f = factorize(n)
    assert math.prod(p**e for p, e in f) == n
    assert all(is_prime(p) for p, _ in f)
    assert f.primes == sorted(f.primes)


def test_factorize_recomposes_small():
    for n in range(2, 100_001):
        _check(n)


def test_factorize_random_64bit():
    rng = random.Random(3)
    for _ in range(1000):
        _check(rng.randrange(2, 1 << 64))


def test_factorize_hard_96bit():
    p, q = 4294967311, (1 << 61) - 1
    assert factorize(p * q).as_dict() == {p: 1, q: 1}
    assert factorize(1000003**4).as_dict() == {1000003: 4}


@settings(max_examples=300, deadline=None)
@given(st.integers(2, 10**12))
def test_factorize_matches_sympy(n):
    assert factorize(n).as_dict() == sympy.factorint(n)


def test_fermat_euler_random():
    from oracles import brute_phi

    rng = random.Random(4)
    done = 0
    while done < 1000:
        m = rng.randrange(2, 5000)
        a = rng.randrange(1, m)
        if math.gcd(a, m) != 1:
            continue
        assert powmod(a, brute_phi(m), m) == 1
        done += 1


def test_divisors_and_mobius():
    assert divisors(1) == [1]
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert [mobius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]


@pytest.mark.parametrize(
    "v,expected",
    [(5, (5, 1, 1)), (6, (6, 1, 1)), (8, (1, 2, 3)), (12, (3, 2, 2)), (16, (1, 2, 4)), (24, (3, 2, 3)), (72, (2, 6, 2))],
)
def test_squarefree_decomposition(v, expected):
    a, b, k = squarefree_decomposition(v)
    assert (a, b, k) == expected
    assert a * b**k == v
    assert mobius(a) != 0
