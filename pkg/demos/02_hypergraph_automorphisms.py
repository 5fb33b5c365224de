"""
Automorphisms of orbit hypergraphs
==================================

Take a group G, a subset Y, and form the hypergraph whose edges are the
images of Y under G. Its automorphism group always contains G; the
interesting question is whether it is exactly G.
"""

from hypersym import Hypergraph, aut_group, setwise_stabilizer, subset_orbit
from hypersym.constructions import cyclic_group, dihedral_group

# the 5-cycle graph: automorphism group D5 of order 10
pentagon = Hypergraph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
A = aut_group(pentagon)
print("pentagon |Aut| =", A.order)

# the orbit of an edge under C5 is the same pentagon, so C5 is not enough
fam = subset_orbit(cyclic_group(5), (0, 1))
print("C5 orbit of {0,1}:", fam.orbit_size, "edges, |Aut| =", aut_group(fam.hypergraph).order)

# under D5 the orbit hypergraph recovers D5 exactly
fam = subset_orbit(dihedral_group(5), (0, 1))
print("D5 orbit of {0,1}: |Aut| =", aut_group(fam.hypergraph).order)

# setwise stabilizer, and the orbit-stabilizer identity |G| = |Y^G| |G_Y|
G = dihedral_group(7)
Y = (0, 1, 3)
S = setwise_stabilizer(G, Y)
print("D7: |G| =", G.order, "|Y^G| =", subset_orbit(G, Y).orbit_size, "|G_Y| =", S.order)
