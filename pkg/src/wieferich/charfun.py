"""Exponential-sum indicator functions for element orders mod p^k.

The sums are evaluated exactly as written: the inner sum over m tests
whether the *integer* difference tau^(...) - v is divisible by phi(p^k),
not whether the two residues agree mod p^k.  Every evaluation is compared
with the order computed directly, and disagreements are flagged rather than
corrected.
"""

from __future__ import annotations

import cmath
import csv
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, TextIO

import numpy as np

from .arith import DomainError, divisors, is_prime, mobius
from .orders import euler_phi, is_primitive_root, least_primitive_root, mult_order

MAX_P = 101
ROUND_TOL = 1e-6


@dataclass(frozen=True)
class IndicatorEval:
    p: int
    v: int
    tau: int
    value: float
    imag: float
    direct: bool
    kind: str = "equal"

    @property
    def rounded(self) -> int:
        return round(self.value)

    @property
    def integral(self) -> bool:
        return abs(self.value - self.rounded) < ROUND_TOL and abs(self.imag) < ROUND_TOL

    @property
    def discrepancy(self) -> bool:
        return self.rounded != int(self.direct)


@lru_cache(maxsize=1 << 16)
def _unit_sum(residue: int, modulus: int) -> tuple[float, float]:
    # (1/N) sum_{0<=m<N} exp(2 pi i r m / N); r*m is reduced exactly before exp
    m = np.arange(modulus, dtype=np.int64)
    ang = (2 * np.pi / modulus) * ((residue * m) % modulus)
    return math.fsum(np.cos(ang)) / modulus, math.fsum(np.sin(ang)) / modulus


def _check(v: int, p: int, tau: int, k: int) -> int:
    if p < 3 or p > MAX_P or not is_prime(p):
        raise DomainError(f"p must be an odd prime <= {MAX_P}, got {p}")
    if v % p == 0:
        raise DomainError(f"{p} divides {v}")
    if tau % p == 0 or not is_primitive_root(tau, p, 2):
        raise DomainError(f"{tau} is not a primitive root mod {p}^{k}")
    return p**k


def _accumulate(diffs: Iterable[int], modulus: int) -> tuple[float, float]:
    re, im = [], []
    for diff in diffs:
        a, b = _unit_sum(diff % modulus, modulus)
        re.append(a)
        im.append(b)
    return math.fsum(re), math.fsum(im)


def indicator_order_equal(v: int, p: int, tau: int | None = None, k: int = 2) -> IndicatorEval:
    """Sum over n < p-1 coprime to p-1 detecting ord_{p^k}(v) == p - 1."""
    if tau is None:
        tau = least_primitive_root(p, 2)
    pk = _check(v, p, tau, k)
    phi = euler_phi(pk)
    vr = v % pk
    step = p ** (k - 1)
    diffs = (pow(tau, step * n, pk) - vr for n in range(1, p - 1) if math.gcd(n, p - 1) == 1)
    re, im = _accumulate(diffs, phi)
    return IndicatorEval(p, v, tau, re, im, mult_order(v, pk).ord == p - 1, "equal")


def indicator_order_divides(v: int, p: int, tau: int | None = None, reduced_range: bool = False) -> IndicatorEval:
    """Triple sum over d | p-1 and n coprime to (p-1)/d detecting ord_{p^2}(v) | p - 1.

    By default n runs over 1 <= n < p - 1 as written, which counts the
    elements of order (p-1)/d several times when d > 1.  ``reduced_range``
    restricts n to 1 <= n <= (p-1)/d so each element is visited once.
    """
    if tau is None:
        tau = least_primitive_root(p, 2)
    pk = _check(v, p, tau, 2)
    phi = p * (p - 1)
    vr = v % pk

    def diffs():
        for d in divisors(p - 1):
            m = (p - 1) // d
            top = m + 1 if reduced_range else p - 1
            for n in range(1, top):
                if math.gcd(n, m) == 1:
                    yield pow(tau, d * p * n, pk) - vr

    re, im = _accumulate(diffs(), phi)
    kind = "divides-reduced" if reduced_range else "divides"
    return IndicatorEval(p, v, tau, re, im, pow(v, p - 1, pk) == 1, kind)


@dataclass(frozen=True)
class GeometricSum:
    t: int
    p: int
    d: int
    direct: complex
    closed_form: complex
    as_printed: complex
    bound: float

    @property
    def agrees(self) -> bool:
        return abs(self.direct - self.closed_form) < 1e-9

    @property
    def within_bound(self) -> bool:
        return abs(self.direct) <= self.bound

    @property
    def printed_error(self) -> float:
        return abs(self.direct - self.as_printed)


def geometric_coprime_sum(t: int, p: int, d: int) -> GeometricSum:
    """sum_{n <= (p-1)/d, gcd(n, (p-1)/d) = 1} w^(t n), w = exp(2 pi i / p).

    ``closed_form`` is the Moebius inclusion-exclusion over e | (p-1)/d with
    each inner geometric series summed exactly.  ``as_printed`` keeps the
    literal variant that lets e run over all e <= (p-1)/d with upper exponent
    e t ((p-1)/d + 1); it does not match the direct sum in general and is
    returned only for comparison.
    """
    if not is_prime(p) or not 1 <= t <= p - 1 or (p - 1) % d:
        raise DomainError(f"need prime p, 1 <= t <= p-1 and d | p-1; got {(t, p, d)}")
    m = (p - 1) // d

    def w(k: int) -> complex:
        return cmath.exp(2j * math.pi * (k % p) / p)

    direct = sum(w(t * n) for n in range(1, m + 1) if math.gcd(n, m) == 1)

    def geo(e: int, top: int) -> complex:
        if (e * t) % p == 0:
            raise DomainError(f"degenerate denominator at e={e}, t={t}, p={p}")
        return (w(e * t) - w(e * t * (top + 1))) / (1 - w(e * t))

    closed = sum(mobius(e) * geo(e, m // e) for e in divisors(m))
    printed = sum(mobius(e) * geo(e, m) for e in range(1, m + 1))
    bound = 2 * p * math.log(p) / (math.pi * t)
    return GeometricSum(t, p, d, complex(direct), complex(closed), complex(printed), bound)


def oracle_grid(pmax: int, kinds=("equal", "divides")) -> list[IndicatorEval]:
    """Evaluate the indicators for every odd p <= pmax and every v in [1, p^2) prime to p."""
    rows = []
    for p in range(3, pmax + 1):
        if not is_prime(p):
            continue
        tau = least_primitive_root(p, 2)
        for v in range(1, p * p):
            if v % p == 0:
                continue
            for kind in kinds:
                if kind == "equal":
                    rows.append(indicator_order_equal(v, p, tau))
                else:
                    rows.append(indicator_order_divides(v, p, tau, reduced_range=kind == "divides-reduced"))
    return rows


def write_discrepancy_csv(rows: Iterable[IndicatorEval], out: TextIO) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["p", "v", "kind", "tau", "indicator", "direct", "discrepancy"])
    for r in rows:
        w.writerow([r.p, r.v, r.kind, r.tau, f"{r.value if abs(r.value) >= 5e-10 else 0.0:.9f}", int(r.direct), int(r.discrepancy)])


def summarize(rows: Iterable[IndicatorEval]) -> dict[str, dict[str, int]]:
    out: dict[str, dict[str, int]] = {}
    for r in rows:
        s = out.setdefault(r.kind, {"evaluations": 0, "non_integral": 0, "outside_01": 0, "discrepancies": 0})
        s["evaluations"] += 1
        s["non_integral"] += not r.integral
        s["outside_01"] += r.rounded not in (0, 1)
        s["discrepancies"] += r.discrepancy
    return out
