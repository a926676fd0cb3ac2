"""
Exponential-sum indicators against direct orders
================================================

The indicator sums detect whether an integer difference is divisible by
phi(p^2), not whether two residues agree mod p^2, so they can fire where the
direct test does not.
"""

# %%
from wieferich import charfun

rows = charfun.oracle_grid(13, kinds=("equal", "divides", "divides-reduced"))
print(charfun.summarize(rows))

# %%
for r in rows:
    if r.discrepancy:
        print(r.kind, r.p, r.v, r.rounded, r.direct)

# %%
g = charfun.geometric_coprime_sum(5, 7, 1)
print(abs(g.direct), g.bound, g.agrees, abs(g.as_printed - g.direct))
