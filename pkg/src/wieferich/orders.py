"""Totients, multiplicative orders and primitive roots."""

from __future__ import annotations

import math

import numpy as np
from dataclasses import dataclass

from .arith import DomainError, Factorization, factorize, is_prime


def _fac(n: int | Factorization) -> Factorization | tuple:
    if isinstance(n, Factorization):
        return n
    return factorize(n) if n > 1 else ()


def euler_phi(n: int | Factorization) -> int:
    f = _fac(n)
    out = 1
    for p, e in f:
        out *= (p - 1) * p ** (e - 1)
    return out


def carmichael_lambda(n: int | Factorization) -> int:
    out = 1
    for p, e in _fac(n):
        if p == 2 and e >= 3:
            lam = 1 << (e - 2)
        else:
            lam = (p - 1) * p ** (e - 1)
        out = math.lcm(out, lam)
    return out


@dataclass(frozen=True)
class OrderProfile:
    n: int
    v: int
    phi: int
    lam: int
    xi: int
    ord: int
    index: int

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "v": self.v,
            "phi": self.phi,
            "lambda": self.lam,
            "xi": self.xi,
            "ord": self.ord,
            "index": self.index,
        }


def order_from_multiple(v: int, n: int, m: int, m_fac: Factorization | tuple) -> int:
    """Order of v mod n given a multiple m of it and the factorization of m."""
    order = m
    for q, e in m_fac:
        for _ in range(e):
            if pow(v, order // q, n) != 1:
                break
            order //= q
    return order


def mult_order(v: int, n: int) -> OrderProfile:
    """Order of v in (Z/nZ)^x, packaged with phi, lambda and the index.

    Starts from lambda(n) and strips each prime factor while v still
    reaches 1, so the cost is O(log^2 n) modular powers.
    """
    if n < 2:
        raise DomainError(f"modulus must be >= 2, got {n}")
    if math.gcd(v, n) != 1:
        raise DomainError(f"gcd({v}, {n}) != 1")
    nf = factorize(n)
    phi = euler_phi(nf)
    lam = carmichael_lambda(nf)
    xi, rem = divmod(phi, lam)
    assert rem == 0
    order = order_from_multiple(v % n, n, lam, _fac(lam))
    return OrderProfile(n, v, phi, lam, xi, order, lam // order)


def _require_odd_prime(p: int) -> None:
    if p < 3 or not is_prime(p):
        raise DomainError(f"{p} is not an odd prime")


def is_primitive_root(a: int, p: int, k: int = 1) -> bool:
    """Is a a generator of (Z/p^k Z)^x for odd prime p?

    k = 1 tests a^((p-1)/q) != 1 mod p for each prime q | p - 1.  For k >= 2
    a primitive root mod p lifts to every p^k exactly when
    a^(p-1) != 1 mod p^2.
    """
    _require_odd_prime(p)
    if k < 1:
        raise DomainError("k must be >= 1")
    if a % p == 0:
        raise DomainError(f"{p} divides {a}")
    for q in factorize(p - 1).primes:
        if pow(a, (p - 1) // q, p) == 1:
            return False
    if k >= 2:
        return pow(a, p - 1, p * p) != 1
    return True


def least_primitive_root(p: int, k: int = 1) -> int:
    """g(p) for k = 1, h(p^2) for k = 2."""
    _require_odd_prime(p)
    a = 2
    while a % p == 0 or not is_primitive_root(a, p, k):
        a += 1
    return a


def primitive_root_mod_prime_power(p: int, k: int) -> int:
    """Some generator of (Z/p^k Z)^x (the least one)."""
    return least_primitive_root(p, min(k, 2))


def _vec_powmod(base: np.ndarray, e: int, n: int) -> np.ndarray:
    result = np.ones_like(base)
    b = base
    while e:
        if e & 1:
            result = result * b % n
        b = b * b % n
        e >>= 1
    return result


def orders_table(n: int) -> np.ndarray:
    """ord_n(v) for every v in [0, n), with 0 where gcd(v, n) > 1.

    Batch form of :func:`mult_order` for n < 3e9: for each q^e exactly
    dividing lambda(n), the q-part of the order is the number of q-th powers
    needed to bring v^(lambda/q^e) to 1.
    """
    if n < 2:
        raise DomainError(f"modulus must be >= 2, got {n}")
    if n >= 3_000_000_000:
        raise DomainError("orders_table needs n^2 to fit in int64")
    v = np.arange(n, dtype=np.int64)
    units = np.gcd(v, n) == 1
    vs = v[units]
    lam = carmichael_lambda(n)
    order = np.ones(vs.shape, dtype=np.int64)
    for q, e in (factorize(lam) if lam > 1 else ()):
        w = _vec_powmod(vs, lam // q**e, n)
        for _ in range(e):
            pending = w != 1
            if not pending.any():
                break
            order[pending] *= q
            w = _vec_powmod(w, q, n)
    out = np.zeros(n, dtype=np.int64)
    out[units] = order
    return out
