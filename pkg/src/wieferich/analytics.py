"""Constants, counting models, series bounds and next-prime predictions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import Decimal, getcontext
from typing import Sequence

import mpmath
import numpy as np
from scipy import integrate

from .arith import DomainError, is_prime, squarefree_decomposition
from .orders import mult_order, order_from_multiple
from .primes import PrimeRange, primes_array
from .search import ScanJob, WieferichHit, scan, count_bound

getcontext().prec = 50

# Meissel-Mertens constant: sum_{p<=x} 1/p - log log x -> B0.  Cross-checked
# against fit_mertens_b0() in the tests.
MERTENS_B0 = 0.26149721284764278376
EULER_GAMMA = 0.57721566490153286061
# a_0 as printed next to the balanced-subset prediction; the product itself
# evaluates to 0.3739558136...
PRINTED_A0 = 0.37399581

DIGITS = 16


def _dec(x) -> Decimal:
    if isinstance(x, Decimal):
        return x
    if isinstance(x, mpmath.mpf):
        return Decimal(mpmath.nstr(x, 40, strip_zeros=False))
    return Decimal(repr(float(x)))


@dataclass(frozen=True)
class Component:
    label: str
    value: Decimal
    provenance: str


@dataclass
class SeriesReport:
    name: str
    partial_sum: Decimal
    terms: int
    tail_bound: Decimal
    tail_formula: str
    components: list[Component] = field(default_factory=list)

    @property
    def total_bound(self) -> Decimal:
        return self.partial_sum + self.tail_bound

    def component(self, label: str) -> Decimal:
        for c in self.components:
            if c.label == label:
                return c.value
        raise KeyError(label)

    def as_dict(self, digits: int = DIGITS) -> dict:
        fmt = lambda d: _fmt(d, digits)
        return {
            "name": self.name,
            "partial_sum": fmt(self.partial_sum),
            "terms": self.terms,
            "tail_bound": fmt(self.tail_bound),
            "tail_formula": self.tail_formula,
            "total_bound": fmt(self.total_bound),
            "provenance": [{"label": c.label, "value": fmt(c.value), "source": c.provenance} for c in self.components],
        }


def _fmt(d: Decimal, digits: int) -> str:
    return format(d, f".{digits}g") if d else "0"


# ---------------------------------------------------------------- Mertens


@dataclass(frozen=True)
class MertensSum:
    x: float
    value: float
    asymptotic: float
    bound: float

    @property
    def error(self) -> float:
        return self.value - self.asymptotic

    @property
    def bound_holds(self) -> bool:
        return abs(self.error) < self.bound


def mertens_bound(x: float) -> float:
    L = math.log(x)
    return 1 / (10 * L * L) + 4 / (15 * L**3)


def mertens_sum(x: float, b0: float = MERTENS_B0) -> MertensSum:
    """sum_{p<=x} 1/p against log log x + b0 and the explicit error bound.

    The bound is only claimed for x >= 10400; ``bound_holds`` is reported for
    any x but is meaningful only there.
    """
    if x > 1e8:
        raise DomainError("mertens_sum is limited to x <= 1e8")
    ps = primes_array(0, int(x) + 1)
    s = math.fsum((1.0 / ps).tolist())
    return MertensSum(x, s, math.log(math.log(x)) + b0, mertens_bound(x))


@dataclass(frozen=True)
class MertensProduct:
    x: float
    value: float
    main: float
    lower: float
    upper: float

    @property
    def ratio(self) -> float:
        return self.value / self.main

    @property
    def bound_holds(self) -> bool:
        return self.lower < self.value < self.upper


def product_bounds(x: float) -> tuple[float, float, float]:
    L = math.log(x)
    main = 1 / (math.exp(EULER_GAMMA) * L)
    return main, main * (1 - 0.2 / L**2), main * (1 + 0.2 / L**2)


def mertens_product(x: float) -> MertensProduct:
    if not 2 <= x <= 1e8:
        raise DomainError("mertens_product needs 2 <= x <= 1e8")
    ps = primes_array(0, int(x) + 1)
    value = math.exp(math.fsum(np.log1p(-1.0 / ps).tolist()))
    return MertensProduct(x, value, *product_bounds(x))


def mertens_curves(xs: Sequence[float]) -> tuple[list[MertensSum], list[MertensProduct]]:
    """Both Mertens statistics at many cut-offs from a single sieve."""
    xs = sorted(float(x) for x in xs)
    ps = primes_array(0, int(xs[-1]) + 1)
    csum = np.cumsum(1.0 / ps)
    clog = np.cumsum(np.log1p(-1.0 / ps))
    sums, prods = [], []
    for x in xs:
        i = int(np.searchsorted(ps, x, side="right")) - 1
        s = float(csum[i]) if i >= 0 else 0.0
        sums.append(MertensSum(x, s, math.log(math.log(x)) + MERTENS_B0, mertens_bound(x)))
        prods.append(MertensProduct(x, math.exp(clog[i]) if i >= 0 else 1.0, *product_bounds(x)))
    return sums, prods


def fit_mertens_b0(x: float = 1e8) -> float:
    return mertens_sum(x, 0.0).error


# ---------------------------------------------------------------- Artin-type constant


@dataclass(frozen=True)
class ArtinConstant:
    cutoff: int
    value: float
    remainder: float  # relative: the full product lies in [value (1 - remainder), value]


def artin_constant(P: int) -> ArtinConstant:
    """Partial product over p <= P of 1 - 1/(p(p-1)); the omitted tail is below 1/P."""
    if P < 2:
        raise DomainError("cutoff must be >= 2")
    ps = primes_array(0, P + 1).astype(float)
    value = math.exp(math.fsum(np.log1p(-1.0 / (ps * (ps - 1))).tolist()))
    return ArtinConstant(P, value, 1.0 / P)


def log_integral(x: float) -> float:
    """li(x) with the integral taken from 2."""
    if x <= 2:
        return 0.0
    val, _ = integrate.quad(lambda t: 1.0 / math.log(t), 2, x, limit=500, epsabs=1e-10, epsrel=1e-12)
    return val


def totient_table(n: int) -> np.ndarray:
    phi = np.arange(n + 1, dtype=np.int64)
    for p in primes_array(0, n + 1).tolist():
        phi[p::p] -= phi[p::p] // p
    return phi


@dataclass(frozen=True)
class PhiRatioSum:
    x: float
    value: float
    li: float
    model: float  # a_0 li(x), a_0 from artin_constant

    @property
    def ratio(self) -> float:
        return self.value / self.li


def phi_ratio_prime_sum(x: int, a0: float | None = None) -> PhiRatioSum:
    """sum_{p<=x} phi(p-1)/(p-1) next to the model a_0 li(x)."""
    if x > 10**7:
        raise DomainError("phi_ratio_prime_sum is limited to 10^7")
    ps = primes_array(0, x + 1)
    phi = totient_table(max(int(x), 2))
    terms = phi[ps - 1] / (ps - 1)
    li = log_integral(x)
    if a0 is None:
        a0 = artin_constant(max(x, 2)).value
    return PhiRatioSum(x, math.fsum(terms.tolist()), li, a0 * li)


# ---------------------------------------------------------------- correction factor


@dataclass
class CorrectionFactor:
    v: int
    a: int
    b: int
    k: int
    truncation: int
    value: float
    corrected: float
    cauchy: float
    corrected_cauchy: float
    terms: list[tuple[int, int, float]] = field(default_factory=list, repr=False)

    def as_dict(self, digits: int = DIGITS) -> dict:
        g = lambda x: format(x, f".{digits}g")
        return {
            "v": self.v,
            "a": self.a,
            "b": self.b,
            "k": self.k,
            "truncation": self.truncation,
            "plain": g(self.value),
            "corrected": g(self.corrected),
            "plain_cauchy": g(self.cauchy),
            "corrected_cauchy": g(self.corrected_cauchy),
        }


def _mobius_spf(n: int) -> tuple[np.ndarray, np.ndarray]:
    spf = np.zeros(n + 1, dtype=np.int64)
    for p in primes_array(0, n + 1).tolist():
        sl = spf[p::p]
        sl[sl == 0] = p
    mu = np.ones(n + 1, dtype=np.int64)
    for p in primes_array(0, n + 1).tolist():
        mu[p::p] *= -1
        mu[p * p :: p * p] = 0
    return mu, spf


def _correction_sums(v_a: int, k: int, N: int, mu, spf, keep_terms: bool):
    plain, corr, terms = [], [], []
    for n in range(1, N + 1):
        if mu[n] == 0:
            continue
        primes, m = [], n
        while m > 1:
            p = int(spf[m])
            primes.append(p)
            m //= p
        phin = math.prod(p - 1 for p in primes)
        divs = [1]
        for p in primes:
            divs += [d * p for d in divs]
        for d in divs:
            r = d * n
            # phi(d n) = d phi(n) because d | n and n is squarefree
            t = int(mu[n]) * math.gcd(r, k) / (r * d * phin)
            plain.append(t)
            doubled = (2 * v_a) % r == 0 and v_a % 4 == 1
            corr.append(2 * t if doubled else t)
            if keep_terms:
                terms.append((n, d, t))
    return math.fsum(plain), math.fsum(corr), terms


def correction_factor(v: int, N: int = 10**4, keep_terms: bool = False) -> CorrectionFactor:
    """Truncated density constant sum_{n<=N} sum_{d|n} mu(n) gcd(dn,k) / (dn phi(dn)).

    v = a b^k with a squarefree and k maximal.  ``corrected`` halves the
    field degree (doubles the term) whenever r = dn divides 2a and
    a == 1 mod 4.  Convergence is reported as |c(N) - c(2N)|.
    """
    if v < 2:
        raise DomainError(f"base must be >= 2, got {v}")
    if N > 10**5:
        raise DomainError("truncation is limited to 10^5")
    a, b, k = squarefree_decomposition(v)
    mu, spf = _mobius_spf(2 * N)
    plain, corr, terms = _correction_sums(a, k, N, mu, spf, keep_terms)
    plain2, corr2, _ = _correction_sums(a, k, 2 * N, mu, spf, False)
    return CorrectionFactor(v, a, b, k, N, plain, corr, abs(plain2 - plain), abs(corr2 - corr), terms)


# ---------------------------------------------------------------- models and predictions


def count_model(v: int, x: float, z: float, c: float = 1.0) -> float:
    """Main term c (log log(x+z) - log log x) for W_v(x+z) - W_v(x)."""
    if x < 3 or z < 0:
        raise DomainError("need x >= 3 and z >= 0")
    return c * (math.log(math.log(x + z)) - math.log(math.log(x)))


@dataclass(frozen=True)
class PredictionReport:
    x: float
    c: float
    solved_exponent: float
    model: str

    def as_dict(self, digits: int = DIGITS) -> dict:
        g = lambda t: format(t, f".{digits}g")
        return {"x": g(self.x), "c": g(self.c), "solved_exponent": g(self.solved_exponent), "model": self.model}


def predict_next(x: float, c: float, model: str | None = None) -> PredictionReport:
    """Solve c (log log X - log log x) = 1 for X; report D = log10 X."""
    if c <= 0:
        raise DomainError("density must be positive")
    if x < 100:
        raise DomainError("x must be >= 100")
    log_X = math.log(x) * math.exp(1.0 / c)
    if model is None:
        model = "unit-density" if c >= 1 else "balanced"
    return PredictionReport(x, c, log_X / math.log(10), model)


# ---------------------------------------------------------------- series


def wieferich_constant(v: int, scan_limit: int, c: float = 2.0, hits: list[WieferichHit] | None = None) -> SeriesReport:
    """sum 1/p over base-v Wieferich primes: scanned part plus a tail bound.

    The tail integral of dW_v(t)/t beyond L is bounded with W_v(t) <= 4 v log log t,
    giving 4 v c log log L / L.
    """
    if hits is None:
        hits = scan(ScanJob(v, PrimeRange(2, scan_limit + 1)))
    hits = [h for h in hits if h.prime <= scan_limit]
    with mpmath.workdps(40):
        partial = _dec(mpmath.fsum(mpmath.mpf(1) / h.prime for h in hits))
        L = mpmath.mpf(scan_limit)
        tail = _dec(4 * v * c * mpmath.log(mpmath.log(L)) / L)
    comps = [Component(f"1/{h.prime}", _dec(mpmath.mpf(1) / h.prime), f"scan hit v={v}") for h in hits]
    comps.append(Component("tail", tail, f"4*v*c*loglog(L)/L, v={v}, c={c}, L={scan_limit}"))
    return SeriesReport(f"wieferich-constant-{v}", partial, len(hits), tail, "4 v c log log L / L", comps)


# published digits, kept for comparison with the computed components
PRINTED_FIRST_SUBSUM = Decimal("0.2766564971799087434188077")
PRINTED_MAIN_SUM = Decimal("0.3172457909240327210173469")
PRINTED_TOTAL = Decimal("0.811049529055567378261719")


def order_mod_p(v: int, p: int) -> int:
    from .arith import factorize

    return order_from_multiple(v % p, p, p - 1, factorize(p - 1))


def omega_series(x_cut: int = 10**4, main_cut: int | None = None, wieferich_limit: int | None = None) -> SeriesReport:
    """Bound for sum_p 1/ord_{p^2}(2), split by the Wieferich condition.

    partial_sum is sum 1/(p ord_p(2)) over odd primes p <= main_cut
    (default x_cut) and tail_bound is 2/log(x_cut).  The Wieferich subsum
    sum 1/ord_{p^2}(2) over hits up to wieferich_limit (default x_cut) is
    reported as a separate component, as is the per-prime case split check.
    """
    if x_cut > 10**6:
        raise DomainError("x_cut is limited to 10^6")
    main_cut = x_cut if main_cut is None else main_cut
    wieferich_limit = x_cut if wieferich_limit is None else wieferich_limit
    ps = primes_array(3, main_cut + 1).tolist()
    with mpmath.workdps(40):
        terms = []
        for p in ps:
            terms.append(mpmath.mpf(1) / (p * order_mod_p(2, p)))
        main = _dec(mpmath.fsum(terms))
        tail = _dec(2 / mpmath.log(x_cut))
        hits = [h.prime for h in scan(ScanJob(2, PrimeRange(2, wieferich_limit + 1)))]
        wsub = _dec(mpmath.fsum(mpmath.mpf(1) / mult_order(2, p * p).ord for p in hits))
    comps = [
        Component("main_sum", main, f"sum 1/(p ord_p 2) over odd p <= {main_cut}"),
        Component("tail", tail, f"2/log({x_cut})"),
        Component("nonwieferich_bound", main + tail, "main_sum + tail"),
        Component("wieferich_subsum", wsub, "sum 1/ord_{p^2}(2) over hits " + ",".join(map(str, hits))),
        Component("total_bound", wsub + main + tail, "wieferich_subsum + nonwieferich_bound"),
        Component("printed_first_subsum", PRINTED_FIRST_SUBSUM, "printed value; not reproduced by 1/364 + 1/1755"),
        Component("printed_total", PRINTED_FIRST_SUBSUM + main + tail, "printed_first_subsum + nonwieferich_bound"),
    ]
    return SeriesReport("omega-series", main, len(ps), tail, "2 / log x", comps)


def omega_case_split(p: int) -> bool:
    """ord_{p^2}(2) is ord_p(2) for base-2 Wieferich p and p * ord_p(2) otherwise."""
    big = mult_order(2, p * p).ord
    small = order_mod_p(2, p)
    return big == (small if pow(2, p - 1, p * p) == 1 else p * small)


def wolstenholme_check(p: int) -> bool:
    """sum_{m=1}^{p-1} m^{-1} == 0 mod p^2."""
    if p <= 3 or not is_prime(p):
        raise DomainError(f"need a prime p > 3, got {p}")
    m2 = p * p
    return sum(pow(m, -1, m2) for m in range(1, p)) % m2 == 0


def scan_bound_holds(v: int, x: float, w: int) -> bool:
    return w <= count_bound(v, x)
