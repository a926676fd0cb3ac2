"""Wieferich-type congruence detectors and chunked interval scans."""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable, Iterable

import numpy as np

from .arith import DomainError
from .orders import carmichael_lambda, is_primitive_root, mult_order
from .primes import DEFAULT_SEGMENT, PrimeRange, prime_count, primes_array, simple_sieve


@dataclass(frozen=True)
class WieferichHit:
    base: int
    prime: int
    power: int = 2
    quotient: int = 0
    balanced: bool = False

    def as_record(self) -> dict:
        return {"v": self.base, "p": self.prime, "k": self.power, "q": self.quotient, "balanced": self.balanced}

    @classmethod
    def from_record(cls, rec: dict) -> WieferichHit:
        return cls(rec["v"], rec["p"], rec["k"], rec["q"], rec["balanced"])


@dataclass(frozen=True)
class ScanJob:
    base: int
    range: PrimeRange
    power: int = 2
    chunk: int = DEFAULT_SEGMENT
    workers: int = 1

    def __post_init__(self):
        if self.base < 2:
            raise DomainError(f"base must be >= 2, got {self.base}")
        if self.power < 2:
            raise DomainError(f"power must be >= 2, got {self.power}")
        if self.chunk < 1 or self.workers < 1:
            raise DomainError("chunk and workers must be positive")

    def chunks(self) -> list[tuple[int, int]]:
        lo, hi = self.range.lo, self.range.hi
        return [(a, min(a + self.chunk, hi)) for a in range(lo, hi, self.chunk)]

    def with_lo(self, lo: int) -> ScanJob:
        return replace(self, range=replace(self.range, lo=lo))


def fermat_quotient(v: int, p: int) -> int:
    """q_v(p) = (v^(p-1) - 1) / p reduced mod p."""
    if v % p == 0:
        raise DomainError(f"{p} divides {v}")
    r = pow(v, p - 1, p * p)
    t, rem = divmod(r - 1, p)
    assert rem == 0, "Fermat's little theorem violated: p not prime?"
    return t % p


def is_wieferich(v: int, p: int, k: int = 2) -> bool:
    """v^(p-1) == 1 mod p^k; primes dividing v are never hits."""
    if v % p == 0:
        return False
    return pow(v, p - 1, p**k) == 1


def is_super(v: int, p: int, k: int = 3) -> bool:
    """Solution of v^(p-1) == 1 mod p^3 (or a higher power k)."""
    return is_wieferich(v, p, k)


def is_lifted_wieferich(v: int, p: int, n: int) -> bool:
    """v^(p^n (p-1)) == 1 mod p^(n+3)."""
    if v % p == 0:
        return False
    return pow(v, p**n * (p - 1), p ** (n + 3)) == 1


def _require_coprime_odd(v: int, p: int) -> None:
    if p < 3:
        raise DomainError(f"{p} is not an odd prime")
    if v % p == 0:
        raise DomainError(f"{p} divides {v}")


def is_balanced(v: int, p: int) -> bool:
    """ord_{p^2}(v) == p - 1."""
    _require_coprime_odd(v, p)
    return mult_order(v, p * p).ord == p - 1


def is_nilpotent_proot(v: int, p: int) -> bool:
    """v is a primitive root mod p that fails to lift to p^2."""
    _require_coprime_odd(v, p)
    return is_primitive_root(v, p, 1) and is_wieferich(v, p, 2)


def make_hit(v: int, p: int, k: int) -> WieferichHit:
    return WieferichHit(v, p, k, fermat_quotient(v, p), mult_order(v, p * p).ord == p - 1)


def scan_chunk(v: int, k: int, lo: int, hi: int) -> list[WieferichHit]:
    """All hits with lo <= p < hi.  Pure; runs inside worker processes."""
    hits = []
    for p in primes_array(lo, hi).tolist():
        if v % p and pow(v, p - 1, p**k) == 1:
            hits.append(make_hit(v, p, k))
    return hits


def _scan_chunk_args(args):
    return scan_chunk(*args)


ChunkCallback = Callable[[int, list[WieferichHit]], None]


def iter_chunks(job: ScanJob) -> Iterable[tuple[int, list[WieferichHit]]]:
    """Yield (chunk_hi, hits) in chunk order regardless of worker count."""
    tasks = [(job.base, job.power, a, b) for a, b in job.chunks()]
    if job.workers == 1 or len(tasks) <= 1:
        for t in tasks:
            yield t[3], scan_chunk(*t)
        return
    with ProcessPoolExecutor(max_workers=job.workers) as pool:
        # map() returns results in submission order
        for t, hits in zip(tasks, pool.map(_scan_chunk_args, tasks)):
            yield t[3], hits


def scan(job: ScanJob, on_chunk: ChunkCallback | None = None) -> list[WieferichHit]:
    """All hits in job.range, ascending by prime.

    ``on_chunk(chunk_hi, hits)`` fires after each chunk completes, in order;
    the store module uses it for hit logging and checkpoints.
    """
    out: list[WieferichHit] = []
    for chunk_hi, hits in iter_chunks(job):
        out.extend(hits)
        if on_chunk is not None:
            on_chunk(chunk_hi, hits)
    return out


def count_bound(v: int, x: float) -> float:
    """Upper bound 4 v log log x on W_v(x)."""
    return 4 * v * math.log(math.log(x))


def count(v: int, x: int, k: int = 2, workers: int = 1) -> int:
    """W_v(x): number of primes p <= x with v^(p-1) == 1 mod p^k."""
    if x < 2:
        return 0
    return len(scan(ScanJob(v, PrimeRange(2, x + 1), k, workers=workers)))


def nonwieferich_count(v: int, x: int, k: int = 2) -> int:
    return prime_count(x)[0] - count(v, x, k)


def is_wieferich_pair(p: int, q: int) -> bool:
    """p^(q-1) == 1 mod q^2 and q^(p-1) == 1 mod p^2."""
    return p != q and pow(p, q - 1, q * q) == 1 and pow(q, p - 1, p * p) == 1


_pair_kernel = None


def _get_pair_kernel():
    global _pair_kernel
    if _pair_kernel is None:
        import numba

        @numba.njit(cache=True)
        def kernel(p, g, qg, limit, isprime, out):
            # Walk cur = g^i mod p^2; lifting cur by p*(cur*i*qg mod p) lands on
            # the unique x == cur (mod p) with x^(p-1) == 1 mod p^2.
            n = 0
            pp = p * p
            cur = 1
            s = 0
            for _ in range(p - 1):
                r = cur % p
                x = (cur + p * ((r * s) % p)) % pp
                while x < limit:
                    if x > p and isprime[x]:
                        out[n] = x
                        n += 1
                    x += pp
                cur = (cur * g) % pp
                s += qg
                if s >= p:
                    s -= p
            return n

        _pair_kernel = kernel
    return _pair_kernel


def pair_candidates(p: int, limit: int, isprime: np.ndarray, buf: np.ndarray) -> list[int]:
    """Primes q in (p, limit] with q^(p-1) == 1 mod p^2 (odd p).

    These are the lifts of (Z/pZ)^x into the order-(p-1) subgroup of
    (Z/p^2 Z)^x, enumerated with O(p) word operations.
    """
    from .orders import least_primitive_root

    g = least_primitive_root(p)
    qg = fermat_quotient(g, p)
    n = _get_pair_kernel()(p, g, qg, limit + 1, isprime, buf)
    return sorted(buf[:n].tolist())


def pair_scan(limit: int) -> list[tuple[int, int]]:
    """All Wieferich pairs p < q <= limit.

    Cost grows like the sum of primes below limit (about 10 minutes of one
    core at limit = 10**6).
    """
    if limit > 10**6:
        raise DomainError("pair_scan is limited to 10^6")
    ps = simple_sieve(limit)
    isprime = np.zeros(limit + 1, dtype=np.bool_)
    isprime[ps] = True
    pairs = []
    # p = 2: q^1 == 1 mod 4 and 2^(q-1) == 1 mod q^2
    for q in ps[1:].tolist():
        if q % 4 == 1 and pow(2, q - 1, q * q) == 1:
            pairs.append((2, q))
    buf = np.zeros(limit + 1, dtype=np.int64)
    for p in ps[1:].tolist():
        for q in pair_candidates(p, limit, isprime, buf):
            if pow(p, q - 1, q * q) == 1:
                pairs.append((p, q))
    return sorted(pairs)


def lambda_table(limit: int) -> np.ndarray:
    """carmichael_lambda(n) for 0 <= n <= limit via a smallest-prime-factor sieve."""
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in simple_sieve(math.isqrt(limit)).tolist():
        sl = spf[p * p :: p]
        sl[sl == 0] = p
    lam = np.ones(limit + 1, dtype=object)
    for n in range(2, limit + 1):
        p = int(spf[n]) or n
        m, pe = n, 1
        while m % p == 0:
            m //= p
            pe *= p
        lam[n] = math.lcm(lam[m], carmichael_lambda(pe) if p == 2 else pe // p * (p - 1))
    return lam


def _abel_chunk(v: int, lo: int, hi: int, lam: list[int]) -> list[int]:
    return [n for n in range(lo, hi) if math.gcd(v, n) == 1 and pow(v, lam[n - lo], n * n) == 1]


def _abel_chunk_args(args):
    return _abel_chunk(*args)


def abel_scan(v: int, limit: int, workers: int = 1, chunk: int = 1 << 14) -> list[int]:
    """All n in [2, limit] with gcd(v, n) = 1 and v^lambda(n) == 1 mod n^2."""
    if limit > 10**5:
        raise DomainError("abel_scan is limited to 10^5")
    if limit < 2:
        return []
    lam = lambda_table(limit).tolist()
    tasks = [(v, a, min(a + chunk, limit + 1), lam[a : a + chunk]) for a in range(2, limit + 1, chunk)]
    if workers == 1:
        parts = map(_abel_chunk_args, tasks)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_abel_chunk_args, tasks))
    return [n for part in parts for n in part]


def default_workers() -> int:
    env = os.environ.get("WIEFERICH_WORKERS")
    return int(env) if env else (os.cpu_count() or 1)
