"""
Random subsets, rigidity and exceptional groups
===============================================

For most primitive groups a random subset Y has trivial setwise
stabilizer, and then Aut(X, Y^G) = G. A few small groups never admit
such a hypergraph; these show up as exception candidates.
"""

from hypersym import rigidity_mc, verify_set_transitive, orbit_union_lattice, min_edge_size
from hypersym.catalog import find_entry, load_catalog
from hypersym.constructions import frobenius_group, projective_group, dihedral_group

seed = 20240601

# how often does a random subset give Aut = G? it depends a lot on the group
catalog = load_catalog()
for name in ("F156", "PGL(2,7)", "PSL(2,7)"):
    r = rigidity_mc(find_entry(catalog, name).group, 500, seed=seed)
    print(f"{name}: Aut = G in {r.count_aut_equal} of {r.trials} trials")
# PSL(2,7) never succeeds on 8 points: every orbit hypergraph is also
# invariant under a larger group, which makes it an exception candidate

# set-transitive groups are exceptions: every orbit is the full k-set family
for q, kind in [(5, "PGL"), (8, "PGL"), (8, "PGammaL")]:
    f = verify_set_transitive(projective_group(q, kind))
    print(f"{kind}(2,{q}):", f.evidence)

# F21 on 3-sets has three orbits; each union has a strictly larger Aut
L = orbit_union_lattice(frobenius_group(7, 3), 3)
print("F21 3-set orbit sizes", sorted(L.orbit_sizes),
      "minimal overgroups", L.minimal_overgroup_orders)

# smallest edge size whose single orbit already pins down the group
e = min_edge_size(dihedral_group(7))
print("D7 needs edges of size", e.k, "witness", e.witness)
