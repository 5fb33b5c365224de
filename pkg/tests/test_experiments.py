import itertools
import json

import numpy as np
import pytest

from hypersym._batch import discrete_rows, incidence_index
from hypersym.constructions import (cyclic_group, dihedral_group, frobenius_group,
                                    induced_kset_action, alternating_group, projective_group,
                                    symmetric_group)
from hypersym.experiments import (asymmetry_mc, classify_exception, min_edge_size,
                                  orbit_union_lattice, rigidity_mc, scan_exceptions,
                                  transversal_asymmetry_mc, trial_rng, verify_set_transitive)
from hypersym.catalog import load_catalog
from hypersym.errors import CapExceeded
from hypersym.hypergraph import Hypergraph, TransversalHypergraph, is_rigid, is_rigid_transversal
from hypersym.reports import to_json

import oracles


def test_trial_rng_is_counter_based():
    a = trial_rng(5, 17).integers(0, 1 << 30, size=4)
    b = trial_rng(5, 17).integers(0, 1 << 30, size=4)
    c = trial_rng(5, 18).integers(0, 1 << 30, size=4)
    assert (a == b).all() and not (a == c).all()


def test_batch_prefilter_is_sound():
    rng = np.random.default_rng(0)
    for n, t in [(7, 2), (8, 3), (10, 2)]:
        universe = list(itertools.combinations(range(n), t))
        ev = np.array(universe)
        inc = incidence_index(ev, n)
        present = rng.integers(0, 2, size=(300, len(universe))).astype(bool)
        disc = discrete_rows(ev, inc, present)
        for row in range(300):
            edges = [universe[j] for j in np.flatnonzero(present[row])]
            if disc[row]:
                assert is_rigid(Hypergraph(n, edges))
        assert disc.any()


def test_rigidity_examples():
    r = rigidity_mc(symmetric_group(5), 30, seed=1, k=2)
    assert r.count_aut_equal == 30
    r = rigidity_mc(cyclic_group(5), 40, seed=2, k=2)
    assert r.count_aut_equal == 0 and r.count_aut_larger == 40
    assert {o for _, o in r.failures} == {10}
    r = rigidity_mc(dihedral_group(5), 40, seed=3, k=2)
    assert r.count_aut_equal == 40


def test_rigidity_deduction_checks_run():
    r = rigidity_mc(frobenius_group(7, 6), 20, seed=4, check_deduction=True)
    assert r.count_aut_equal + r.count_aut_larger + r.indeterminate == 20


def test_rigidity_validation():
    with pytest.raises(ValueError):
        rigidity_mc(cyclic_group(5), 0)
    with pytest.raises(ValueError):
        rigidity_mc(cyclic_group(5), 5, k=9)


def test_asymmetry_exact_small():
    r = asymmetry_mc(4, 2, exact=True)
    ref = sum(1 for mask in range(64)
              if len(oracles.aut_bruteforce(4, [e for j, e in enumerate(
                  itertools.combinations(range(4), 2)) if mask >> j & 1])) > 1)
    assert r.trials == 64 and r.estimate == ref / 64
    r5 = asymmetry_mc(5, 2, exact=True)
    assert r5.estimate == 1.0  # there is no asymmetric graph on fewer than 6 vertices
    r6 = asymmetry_mc(6, 2, exact=True)
    # 8 asymmetric graphs on 6 vertices up to isomorphism, each with 6! labellings
    assert r6.count_rigid == 8 * 720


def test_transversal_exact_small():
    r = transversal_asymmetry_mc(4, 2, exact=True)
    ref = 0
    for mask in range(16):
        edges = [e for j, e in enumerate(itertools.product((0, 1), (2, 3))) if mask >> j & 1]
        if len(oracles.aut_transversal_bruteforce(4, edges, [(0, 1), (2, 3)])) > 1:
            ref += 1
    assert r.trials == 16 and r.estimate == ref / 16


def test_transversal_exact_matches_search_r3():
    r = transversal_asymmetry_mc(6, 2, exact=True)
    universe = list(itertools.product(range(3), range(3, 6)))
    rigid = sum(is_rigid_transversal(TransversalHypergraph(
        2, 3, [e for j, e in enumerate(universe) if mask >> j & 1])) for mask in range(512))
    assert r.count_rigid == rigid


def test_edgeless_transversal_is_not_rigid():
    for r in (2, 3, 4):
        assert not is_rigid_transversal(TransversalHypergraph(2, r, []))


def test_t3_n12_estimate_is_zero():
    r = asymmetry_mc(12, 3, 10_000, seed=9)
    assert r.count_rigid == r.trials


def test_asymmetry_validation():
    with pytest.raises(ValueError):
        asymmetry_mc(5, 3, 10)
    with pytest.raises(ValueError):
        transversal_asymmetry_mc(7, 2, 10)
    with pytest.raises(CapExceeded):
        asymmetry_mc(8, 2, exact=True)


def test_thread_count_does_not_change_results():
    for fn, args in [(asymmetry_mc, (14, 2, 3000)), (transversal_asymmetry_mc, (12, 2, 3000))]:
        a = to_json(fn(*args, seed=11, threads=1))
        b = to_json(fn(*args, seed=11, threads=8))
        assert a == b
    G = projective_group(7, "PSL")
    assert to_json(rigidity_mc(G, 100, seed=3, threads=1)) == \
        to_json(rigidity_mc(G, 100, seed=3, threads=8))


def test_report_schema():
    d = json.loads(to_json(asymmetry_mc(8, 2, 500, seed=1)))
    assert set(d) == {"experiment", "inputs", "seed", "trials", "counts", "estimate",
                      "stderr", "bounds", "witnesses", "runtime_ms", "version"}
    assert d["runtime_ms"] is None
    assert d["bounds"]["formula"]["bound"] == "asymptotic_P2"


def test_set_transitive_examples():
    assert verify_set_transitive(frobenius_group(5, 4)).evidence == "set-transitive"
    for q, kind in [(5, "PGL"), (8, "PGL"), (8, "PGammaL")]:
        assert verify_set_transitive(projective_group(q, kind)).evidence == "set-transitive"
    f = verify_set_transitive(frobenius_group(7, 3))
    assert f.evidence == "not-set-transitive" and f.witness == {"k": 3, "orbits": 3}


def test_f21_lattice_k3_k4():
    for k in (3, 4):
        L = orbit_union_lattice(frobenius_group(7, 3), k)
        assert sorted(L.orbit_sizes) == [7, 7, 21]
        assert L.all_unions_larger
        assert L.minimal_overgroup_orders == [42, 168, 168]


def test_lattice_symmetric_group():
    L = orbit_union_lattice(symmetric_group(5), 2)
    assert L.unions == [((0,), 120)]
    assert L.minimal_overgroups == []


def test_min_edge_size_examples():
    r = min_edge_size(dihedral_group(5))
    assert r.k == 2 and r.witness == (0, 1) and r.aut_order == 10
    assert len(oracles.aut_bruteforce(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])) == 10
    assert min_edge_size(frobenius_group(5, 4), 2) is None
    G, _ = induced_kset_action(alternating_group(5), 2)
    r = min_edge_size(G)
    assert r is not None and r.k >= 2


def test_classify_and_scan():
    assert classify_exception(frobenius_group(7, 3), "F21").is_exception
    assert not classify_exception(dihedral_group(7), "D7").is_exception
    findings = {f.group: f for f in scan_exceptions(load_catalog(), 9)}
    for name in ("F20", "PGL(2,5)", "PGL(2,8)", "PGammaL(2,8)"):
        assert findings[name].evidence == "set-transitive"
    assert findings["F21"].evidence == "all-orbit-unions-admit-overgroup"
    assert "S7" not in findings and "A7" not in findings
