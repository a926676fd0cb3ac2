"""Integer and modular arithmetic: mulmod/powmod, Miller-Rabin, factorization."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

MAX_MODULUS = 1 << 126
MAX_FACTOR_INPUT = 1 << 96

# First twelve primes as Miller-Rabin witnesses: deterministic for every
# n < 3.317e24, which covers all 64-bit inputs.
MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
MR_EXTRA_ROUNDS = 16
MR_SEED = 0x5EED

TRIAL_BOUND = 1000
_SMALL_PRIMES = [p for p in range(2, TRIAL_BOUND) if all(p % d for d in range(2, math.isqrt(p) + 1))]


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


def _check_modulus(m: int) -> None:
    if m < 1:
        raise DomainError(f"modulus must be >= 1, got {m}")
    if m > MAX_MODULUS:
        raise DomainError(f"modulus {m} exceeds 2^126")


def mulmod(a: int, b: int, m: int) -> int:
    _check_modulus(m)
    return (a * b) % m


def powmod(b: int, e: int, m: int) -> int:
    """b**e mod m for e >= 0; ``powmod(b, 0, m) == 1 % m``."""
    _check_modulus(m)
    if e < 0:
        raise DomainError("negative exponent")
    # CPython's three-argument pow is left-to-right square-and-multiply
    # (sliding window for large exponents).
    return pow(b, e, m)


def _mr_round(n: int, a: int, d: int, s: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Miller-Rabin primality test.

    Deterministic for n < 2**64 using :data:`MR_WITNESSES`.  Above that the
    twelve fixed witnesses are followed by :data:`MR_EXTRA_ROUNDS` random
    bases drawn from ``random.Random(MR_SEED)``, so results are reproducible.
    """
    if n < 2:
        return False
    for p in MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if not all(_mr_round(n, a, d, s) for a in MR_WITNESSES):
        return False
    if n < 1 << 64:
        return True
    rng = random.Random(MR_SEED)
    return all(_mr_round(n, rng.randrange(2, n - 1), d, s) for _ in range(MR_EXTRA_ROUNDS))


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 0
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError(f"malformed factorization {self.factors}")
            last = p
            prod *= p**e
        if prod != self.n:
            raise ValueError(f"factors {self.factors} do not recompose {self.n}")

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def __iter__(self):
        return iter(self.factors)


def _brent(n: int, seed: int) -> int:
    """Return a nontrivial factor of composite odd n (Brent's rho variant)."""
    rng = random.Random(seed)
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split(n: int, out: dict[int, int]) -> None:
    stack = [n]
    seed = 1
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        d = _brent(m, seed)
        seed += 1
        stack += [d, m // d]


def factorize(n: int) -> Factorization:
    """Complete factorization of 2 <= n < 2**96.

    Trial division by primes below :data:`TRIAL_BOUND`, then Brent-Pollard rho
    on the cofactor; every reported prime is certified by :func:`is_prime`.
    """
    if n < 2:
        raise DomainError(f"factorize needs n >= 2, got {n}")
    if n >= MAX_FACTOR_INPUT:
        raise DomainError(f"{n} exceeds the 2^96 factorization limit")
    found: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            found[p] = e
    if n > 1:
        _split(n, found)
    return Factorization(math.prod(p**e for p, e in found.items()), tuple(sorted(found.items())))


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n) if n > 1 else ():
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def mobius(n: int) -> int:
    if n == 1:
        return 1
    f = factorize(n)
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f.factors) % 2 else 1


def squarefree_decomposition(v: int) -> tuple[int, int, int]:
    """Write v = a * b**k with a squarefree and k maximal; returns (a, b, k).

    Squarefree v gives (v, 1, 1).  Otherwise k is the largest exponent such
    that every prime multiplicity e of v satisfies e % k in {0, 1}; perfect
    powers therefore come out with a == 1.
    """
    if v < 2:
        raise DomainError(f"base must be >= 2, got {v}")
    fac = factorize(v).factors
    top = max(e for _, e in fac)
    for k in range(top, 1, -1):
        if all(e % k <= 1 for _, e in fac):
            a = math.prod(p for p, e in fac if e % k)
            b = math.prod(p ** (e // k) for p, e in fac)
            return a, b, k
    return v, 1, 1
