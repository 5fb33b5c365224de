"""Permutation groups, hypergraph automorphisms and rigidity experiments."""

__version__ = "0.1.0"

from .errors import CapExceeded, CatalogError, NotPreservedError
from .perm import CycleStructure, Permutation, compose, cycle_structure, inverse
from .groups import (PermGroup, StructureReport, build_group, contains, elements, minimal_degree,
                     orbits, structure_report, subgroup_of)
from .constructions import (KSetIndex, affine_group, alternating_group, cyclic_group,
                            dihedral_group, fano_group, frobenius_group, induced_kset_action,
                            projective_group, symmetric_group, wreath_product_action)
from .catalog import CatalogEntry, load_catalog
from .hypergraph import (Hypergraph, OrbitFamily, TransversalHypergraph, aut_equals, aut_group,
                         aut_group_transversal, kset_orbit_reps, setwise_stabilizer, subset_orbit)
from .counting import (BoundReport, MovedCountResult, asymptotic_P2, fixed_tsets,
                       order_vs_mindeg_check, prime_moved_formula, stabilizer_prob_bound,
                       transversal_moved, union_bound_asymmetry)
from .experiments import (AsymmetryReport, ExceptionFinding, RigidityReport, asymmetry_mc,
                          min_edge_size, orbit_union_lattice, rigidity_mc,
                          transversal_asymmetry_mc, verify_set_transitive)
