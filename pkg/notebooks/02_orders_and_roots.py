"""
Orders mod p^2 and primitive roots
==================================
"""

# %%
import numpy as np

from wieferich import least_primitive_root, mult_order
from wieferich.orders import orders_table
from wieferich.search import is_balanced, is_nilpotent_proot

# For a Wieferich prime the order of 2 mod p^2 collapses to the order mod p
for p in (1093, 3511):
    prof = mult_order(2, p * p)
    print(p, prof.ord, prof.lam, prof.index, is_balanced(2, p))

# %%
# g(p) against h(p^2): they differ exactly when g(p) is itself Wieferich
for p in (5, 7, 487, 40487):
    print(p, least_primitive_root(p), least_primitive_root(p, 2), is_nilpotent_proot(least_primitive_root(p), p))

# %%
# Distribution of element orders in (Z/nZ)^x
t = orders_table(1093)
vals, counts = np.unique(t[t > 0], return_counts=True)
print(dict(zip(vals.tolist(), counts.tolist())))
