"""Segmented sieve of Eratosthenes over half-open ranges [lo, hi)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .arith import DomainError

MAX_HI = 1 << 63
DEFAULT_SEGMENT = 1 << 20
MIN_SEGMENT = 1 << 10


@dataclass(frozen=True)
class PrimeRange:
    lo: int
    hi: int
    segment_size: int = DEFAULT_SEGMENT

    def __post_init__(self):
        if self.lo < 0 or self.hi <= self.lo:
            raise DomainError(f"invalid range [{self.lo}, {self.hi})")
        if self.hi > MAX_HI:
            raise DomainError(f"hi={self.hi} exceeds 2^63")
        if self.segment_size < MIN_SEGMENT:
            raise DomainError(f"segment_size must be >= {MIN_SEGMENT}")

    @classmethod
    def closed(cls, x: int, y: int, **kw) -> PrimeRange:
        """The closed interval [x, y] as a half-open range."""
        return cls(x, y + 1, **kw)


def simple_sieve(limit: int) -> np.ndarray:
    """All primes <= limit (monolithic sieve)."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    is_p = np.ones(limit + 1, dtype=bool)
    is_p[:2] = False
    is_p[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if is_p[p]:
            is_p[p * p :: 2 * p] = False
    return np.flatnonzero(is_p).astype(np.int64)


@lru_cache(maxsize=8)
def _base_primes(limit: int) -> np.ndarray:
    return simple_sieve(limit)[1:]  # odd primes only


def prime_segments(rng: PrimeRange) -> Iterator[np.ndarray]:
    """Yield int64 arrays of the primes in rng, one array per segment, ascending."""
    lo, hi = rng.lo, rng.hi
    if lo <= 2 < hi:
        yield np.array([2], dtype=np.int64)
    base = _base_primes(math.isqrt(hi - 1))
    # odd-only windows: index i <-> lo_odd + 2 i
    start = max(lo, 3) | 1
    span = 2 * (rng.segment_size // 2)
    while start < hi:
        stop = min(start + span, hi)
        n = (stop - start + 1) // 2
        mask = np.ones(n, dtype=bool)
        last = start + 2 * (n - 1)
        for p in base[: np.searchsorted(base, math.isqrt(last), side="right")]:
            p = int(p)
            first = max(p * p, -(-start // p) * p)
            if first % 2 == 0:
                first += p
            if first <= last:
                mask[(first - start) // 2 :: p] = False
        if start == 1:
            mask[0] = False
        idx = np.flatnonzero(mask)
        if idx.size:
            yield start + 2 * idx.astype(np.int64)
        start = stop if stop % 2 else stop + 1


def primes_in(rng: PrimeRange) -> Iterator[int]:
    """Stream the primes p with rng.lo <= p < rng.hi in ascending order."""
    for seg in prime_segments(rng):
        yield from seg.tolist()


def primes_array(lo: int, hi: int, segment_size: int = DEFAULT_SEGMENT) -> np.ndarray:
    if hi <= lo:
        return np.zeros(0, dtype=np.int64)
    segs = list(prime_segments(PrimeRange(lo, hi, segment_size)))
    return np.concatenate(segs) if segs else np.zeros(0, dtype=np.int64)


def prime_count(x: int) -> tuple[int, float]:
    """pi(x) by exhaustive sieving, with the x/log x estimate for comparison."""
    if x < 2:
        return 0, 0.0
    total = sum(seg.size for seg in prime_segments(PrimeRange(0, x + 1)))
    return total, x / math.log(x)
