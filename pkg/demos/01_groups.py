"""
Permutation groups from generators
==================================

Build a few small groups, read off their order from the stabilizer chain,
and ask the structural questions that matter later, such as primitivity
and the minimal degree.
"""

from hypersym import Permutation, build_group, orbits, structure_report
from hypersym.constructions import frobenius_group, projective_group, wreath_product_action

# permutations are image lists; cycle notation is zero-based by default
a = Permutation.parse("(0 1 2 3 4)", 5)
b = Permutation.parse("(1 4)(2 3)", 5)
D5 = build_group([a, b])
print("D5 order", D5.order, "orbits", orbits(D5))

# products apply the left factor first
print("a*b =", (a * b).to_cycles())

# the Frobenius group of order 21 acts primitively on 7 points
F21 = frobenius_group(7, 3)
r = structure_report(F21)
print("F21 order", F21.order, "primitive", r.primitive,
      "homogeneous up to k =", r.k_homogeneous_up_to, "minimal degree", r.minimal_degree)

# PGL(2,8) on the projective line is transitive on k-sets for every k
P = projective_group(8, "PGL")
print("PGL(2,8) order", P.order, "homogeneous up to k =",
      structure_report(P).k_homogeneous_up_to)

# S3 wr S2 in product action on 9 points keeps a block system
W = wreath_product_action(3, 2)
r = structure_report(W)
print("S3 wr S2 order", W.order, "primitive", r.primitive, "block", r.nontrivial_block)
