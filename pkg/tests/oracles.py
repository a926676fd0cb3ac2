"""Slow, independent reference implementations used only by the tests."""

import math

import numba
import numpy as np


def eratosthenes(limit):
    """Plain bytearray sieve, independent of the numpy implementation."""
    if limit < 2:
        return []
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
    return [i for i, f in enumerate(flags) if f]


def trial_factor(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def naive_order(v, n):
    if n == 1:
        return 1
    x, k = v % n, 1
    while x != 1:
        x = x * v % n
        k += 1
    return k


def brute_phi(n):
    return sum(1 for a in range(1, n + 1) if math.gcd(a, n) == 1)


def brute_lambda(n):
    """Exponent of (Z/nZ)^x as the lcm of all element orders."""
    out = 1
    for a in range(1, n + 1):
        if math.gcd(a, n) == 1:
            out = math.lcm(out, naive_order(a, n))
    return out


@numba.njit(cache=True)
def _walk_orders(n):
    # Power iteration from each unvisited unit; the powers of a cyclic walk of
    # length m get orders m / gcd(j, m).
    out = np.zeros(n, dtype=np.int64)
    for v in range(1, n):
        a, b = v, n
        while b:
            a, b = b, a % b
        if a != 1 or out[v]:
            continue
        m = 1
        x = v % n
        while x != 1:
            x = x * v % n
            m += 1
        x = 1
        for j in range(m):
            a, b = j, m
            while b:
                a, b = b, a % b
            o = m // a
            if out[x] == 0:
                out[x] = o
            x = x * v % n
    if n == 2:
        out[1] = 1
    return out


def walk_orders(n):
    return _walk_orders(n)
