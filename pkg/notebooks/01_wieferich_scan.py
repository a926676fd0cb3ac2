"""
Searching for Wieferich primes
==============================

A prime p is a base-v Wieferich prime when v^(p-1) == 1 mod p^2, i.e. the
Fermat quotient q_v(p) vanishes.  This walks through a small search.
"""

# %%
import math
import time

from wieferich import PrimeRange, ScanJob, fermat_quotient, scan
from wieferich.search import count_bound

# Fermat quotients are almost never zero; a few by hand
for p in (3, 5, 7, 11, 13, 1093):
    print(p, fermat_quotient(2, p))

# %%
# Base 2 up to four million: two hits, neither with full order mod p^2
t0 = time.perf_counter()
hits = scan(ScanJob(2, PrimeRange(2, 4_000_000)))
print(f"{time.perf_counter() - t0:.2f}s", [h.as_record() for h in hits])

# %%
# A few other bases, with the 4 v log log x ceiling on the count
for v, x in [(3, 2_000_000), (5, 100_000), (7, 1_000_000), (10, 1_000_000)]:
    ps = [h.prime for h in scan(ScanJob(v, PrimeRange(2, x)))]
    print(v, ps, "bound", round(count_bound(v, x), 1))

# %%
# Congruences mod p^3 are rarer still
cubes = [(v, h.prime) for v in range(2, 100) for h in scan(ScanJob(v, PrimeRange(2, 10_000), power=3))]
print(cubes)

# %%
# Expected number of base-2 hits in [x, 10^D] under a unit density model
print(math.log(math.log(1e40) / math.log(1e15)))
