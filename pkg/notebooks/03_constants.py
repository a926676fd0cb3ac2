"""
Constants and series
====================

Mertens sums and products, the Artin-type product and a few series built
from orders of 2.
"""

# %%
import numpy as np

from wieferich import analytics

xs = np.geomspace(10, 1e7, 12)
sums, prods = analytics.mertens_curves(xs)
for s, p in zip(sums, prods):
    print(f"{s.x:12.0f} {s.error:+.3e} {s.bound:.3e} {p.ratio:.6f} {p.bound_holds}")

# %%
a = analytics.artin_constant(10**6)
print(a.value, a.remainder, analytics.PRINTED_A0)

# %%
# sum 1/(p ord_p 2): the cut-off matters in the fifth decimal
for cut in (7919, 10**4):
    print(cut, analytics.omega_series(10**4, main_cut=cut).partial_sum)

# %%
print(analytics.wieferich_constant(2, 10**6).as_dict(12))
print(analytics.correction_factor(5, 2000).as_dict(8))
print(analytics.predict_next(1e15, 1).as_dict(6))
