"""Wieferich-type prime searches and the analytic constants around them."""

__version__ = "0.1.0"

from .arith import DomainError, factorize, is_prime, mulmod, powmod
from .orders import OrderProfile, carmichael_lambda, euler_phi, is_primitive_root, least_primitive_root, mult_order
from .primes import PrimeRange, prime_count, primes_in
from .search import (
    ScanJob,
    WieferichHit,
    abel_scan,
    count,
    fermat_quotient,
    is_balanced,
    is_nilpotent_proot,
    is_super,
    is_wieferich,
    is_wieferich_pair,
    nonwieferich_count,
    pair_scan,
    scan,
)
