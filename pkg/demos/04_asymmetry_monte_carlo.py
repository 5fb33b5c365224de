"""
How often is a random graph symmetric?
======================================

Estimate P2(n), the probability that a uniform random graph on n labelled
vertices has a nontrivial automorphism, and the analogue Q2 for random
bipartite transversal graphs. Small n can be enumerated exactly.
"""

from hypersym import asymmetry_mc, transversal_asymmetry_mc

seed = 20240601

# exact on 6 vertices: 8 asymmetric graphs up to isomorphism, 6! labellings each
r = asymmetry_mc(6, 2, exact=True)
print("P2(6) exact =", r.estimate, f"({r.count_rigid} rigid of {r.trials})")

# Monte Carlo at larger n, deterministic for a fixed seed
for n in (10, 14, 18):
    r = asymmetry_mc(n, 2, 20_000, seed=seed, threads=4)
    print(f"P2({n}) ~ {r.estimate:.4f} +- {r.stderr:.4f}")

# transversal model: two layers of n/2 vertices, random edges between them
for n in (12, 16, 20):
    r = transversal_asymmetry_mc(n, 2, 20_000, seed=seed, threads=4)
    print(f"Q2({n}) ~ {r.estimate:.4f} +- {r.stderr:.4f}")
