"""
Exact counting behind the probability bounds
============================================

A permutation of prime order p moving s points moves a computable number
of t-sets; summing 2^(-moved/2)-style terms over all such permutations
bounds the probability that a random hypergraph is symmetric.
"""

from hypersym import Permutation, fixed_tsets, prime_moved_formula, union_bound_asymmetry
from hypersym.counting import fixed_kset_bound, stabilizer_prob_bound

# a transposition on 8 points moves 2*(8-2) = 12 of the 28 pairs
sigma = Permutation.parse("(0 1)", 8)
print("moved pairs:", fixed_tsets(sigma, 2).moved, "formula:", prime_moved_formula(8, 2, 2, 2))

# union bound for random graphs; small n is vacuous, larger n is not
for n in (8, 16, 28):
    b = union_bound_asymmetry(n, 2)
    print(f"union bound n={n}: {float(b.value):.3g}", "(vacuous)" if b.vacuous else "")

# fixed k-set bound for an element of a group with minimal degree m
print("2*C(n - m/2, k) for n=13, m=12, k=3:", fixed_kset_bound(13, 12, 3))

# stabilizer probability bound 2|M| C(n - m/2, k) / C(n, k)
b = stabilizer_prob_bound(order=20, n=5, m=4, k=2)
print("stabilizer bound F20, k=2:", b.value, "(vacuous)" if b.vacuous else "")
b = stabilizer_prob_bound(order=156, n=13, m=12, k=6)
print("stabilizer bound F156, k=6:", float(b.value), "(vacuous)" if b.vacuous else "")
