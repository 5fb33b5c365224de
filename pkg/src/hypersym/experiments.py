"""Seeded experiments on orbit hypergraphs and random hypergraphs.

Every trial draws from its own Philox stream keyed by ``(seed, trial)``, so
a run gives the same counts for any thread count and any chunking.
"""
from __future__ import annotations

import itertools
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import __version__
from ._batch import discrete_rows, incidence_index
from .counting import (BoundReport, asymptotic_P2, asymptotic_Q2_rate, union_bound_asymmetry,
                       union_bound_transversal)
from .errors import CapExceeded
from .groups import PermGroup, kset_orbit_count, nontrivial_block, subgroup_of
from .hypergraph import (Hypergraph, TransversalHypergraph, aut_group, is_rigid,
                         is_rigid_transversal, kset_orbit_reps, kset_orbits, setwise_stabilizer,
                         subset_orbit)

log = logging.getLogger(__name__)

RNG_DESCRIPTION = "numpy Philox4x64, key = seed * 2**64 + trial index"
DEFAULT_SEED = 20240601
EXACT_ENUMERATION_CAP = 1 << 20
UNION_ORBIT_CAP = 20
BATCH = 2048


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=(seed << 64) | trial))


def _chunks(total, size):
    return [range(i, min(i + size, total)) for i in range(0, total, size)]


def _map_chunks(fn, total, threads, size):
    chunks = _chunks(total, size)
    if threads <= 1 or len(chunks) <= 1:
        return [fn(c) for c in chunks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, chunks))


def _bound_dict(b: Optional[BoundReport]):
    return None if b is None else b.to_dict()


@dataclass
class RigidityReport:
    group: str
    n: int
    group_order: int
    model: str
    k: Optional[int]
    trials: int
    seed: int
    count_aut_equal: int
    count_aut_larger: int
    indeterminate: int
    failures: list  # (Y, |Aut|)
    runtime_ms: float = 0.0

    def to_dict(self, timing: bool = False) -> dict:
        return {
            "experiment": "rigidity",
            "inputs": {"group": self.group, "n": self.n, "group_order": self.group_order,
                       "model": self.model, "k": self.k, "rng": RNG_DESCRIPTION},
            "seed": self.seed,
            "trials": self.trials,
            "counts": {"aut_equal": self.count_aut_equal, "aut_larger": self.count_aut_larger,
                       "indeterminate": self.indeterminate},
            "estimate": self.count_aut_larger / max(1, self.trials - self.indeterminate),
            "stderr": _stderr(self.count_aut_larger / max(1, self.trials - self.indeterminate),
                              self.trials - self.indeterminate),
            "bounds": {},
            "witnesses": [{"Y": list(y), "aut_order": o} for y, o in self.failures],
            "runtime_ms": round(self.runtime_ms, 3) if timing else None,
            "version": __version__,
        }


@dataclass
class AsymmetryReport:
    n: int
    t: int
    model: str
    trials: int
    seed: Optional[int]
    count_rigid: int
    exact: bool
    formula: Optional[BoundReport]
    union_bound: Optional[BoundReport]
    rate: Optional[BoundReport] = None
    fallback_searches: int = 0
    runtime_ms: float = 0.0

    @property
    def estimate(self) -> float:
        return 1 - self.count_rigid / self.trials

    @property
    def stderr(self) -> float:
        return 0.0 if self.exact else _stderr(self.estimate, self.trials)

    @property
    def formula_value(self) -> Optional[float]:
        return None if self.formula is None else float(self.formula.value)

    @property
    def union_bound_value(self) -> Optional[float]:
        return None if self.union_bound is None else float(self.union_bound.value)

    def to_dict(self, timing: bool = False) -> dict:
        bounds = {"formula": _bound_dict(self.formula), "union_bound": _bound_dict(self.union_bound)}
        if self.rate is not None:
            bounds["rate"] = _bound_dict(self.rate)
        return {
            "experiment": "asymmetry" if self.model == "uniform-hypergraph" else "transversal-asymmetry",
            "inputs": {"n": self.n, "t": self.t, "model": self.model, "exact": self.exact,
                       "rng": None if self.exact else RNG_DESCRIPTION},
            "seed": self.seed,
            "trials": self.trials,
            "counts": {"rigid": self.count_rigid, "not_rigid": self.trials - self.count_rigid,
                       "exact_searches": self.fallback_searches},
            "estimate": self.estimate,
            "stderr": self.stderr,
            "bounds": bounds,
            "witnesses": [],
            "runtime_ms": round(self.runtime_ms, 3) if timing else None,
            "version": __version__,
        }


@dataclass
class ExceptionFinding:
    group: str
    n: int
    evidence: str  # set-transitive | all-orbit-unions-admit-overgroup | rigid-witness-found | not-set-transitive
    witness: dict = field(default_factory=dict)
    primitive: Optional[bool] = None

    @property
    def is_exception(self) -> bool:
        return self.evidence in ("set-transitive", "all-orbit-unions-admit-overgroup")

    def to_dict(self) -> dict:
        return {"group": self.group, "n": self.n, "primitive": self.primitive,
                "evidence": self.evidence, "exception_candidate": self.is_exception,
                "witness": self.witness}


def _stderr(p, trials):
    return math.sqrt(p * (1 - p) / trials) if trials > 0 else 0.0


def sample_subset(rng: np.random.Generator, n: int, k: Optional[int]) -> tuple:
    """Uniform k-subset, or each point independently with probability 1/2 when k is None."""
    if k is None:
        return tuple(int(x) for x in np.flatnonzero(rng.integers(0, 2, size=n)))
    return tuple(sorted(int(x) for x in rng.choice(n, size=k, replace=False)))


def rigidity_trial(G: PermGroup, Y, check_deduction: bool = False):
    """Aut of the orbit hypergraph Y^G; returns ``(aut, orbit)``.

    With ``check_deduction`` it also asserts G <= Aut and the orbit-stabilizer
    identity |Aut| = |Y^G| |Aut_Y| (Aut is transitive on Y^G because G is).
    """
    fam = subset_orbit(G, Y)
    A = aut_group(fam.hypergraph)
    if check_deduction:
        if not all(A.contains(g) for g in G.generators):
            raise AssertionError(f"G is not contained in Aut for Y={Y}")
        stab = setwise_stabilizer(A, Y)
        if A.order != fam.orbit_size * stab.order:
            raise AssertionError(f"orbit-stabilizer fails for Y={Y}")
    return A, fam


def rigidity_mc(G: PermGroup, trials: int, seed: int = DEFAULT_SEED, k: Optional[int] = None,
                name: str = "G", threads: int = 1, check_deduction: bool = False) -> RigidityReport:
    """Sample Y, build Y^G and compare Aut(Y^G) with G.

    ``k=None`` samples every point with probability 1/2; an integer k samples
    a uniform k-set.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    if k is not None and not 0 <= k <= G.degree:
        raise ValueError(f"k={k} outside 0..{G.degree}")
    start = time.perf_counter()
    cache = {}

    def run(chunk):
        out = []
        for i in chunk:
            Y = sample_subset(trial_rng(seed, i), G.degree, k)
            key = subset_orbit(G, Y).hypergraph.edges
            try:
                if key in cache and not check_deduction:
                    order = cache[key]
                else:
                    A, _ = rigidity_trial(G, Y, check_deduction)
                    order = cache[key] = A.order
            except CapExceeded:
                out.append((i, Y, None))
                continue
            out.append((i, Y, order))
        return out

    results = [r for part in _map_chunks(run, trials, threads, 64) for r in part]
    equal = sum(1 for _, _, o in results if o == G.order)
    indeterminate = sum(1 for _, _, o in results if o is None)
    failures = [(Y, o) for _, Y, o in results if o is not None and o != G.order]
    return RigidityReport(name, G.degree, G.order, "all-subsets" if k is None else "k-uniform",
                          k, trials, seed, equal, trials - equal - indeterminate, indeterminate,
                          failures, (time.perf_counter() - start) * 1000)


def _rows_for(trials_range, seed, exact, width):
    if exact:
        idx = np.fromiter(trials_range, dtype=np.int64)
        return ((idx[:, None] >> np.arange(width)) & 1).astype(bool)
    return np.stack([trial_rng(seed, i).integers(0, 2, size=width, dtype=np.uint8)
                     for i in trials_range]).astype(bool)


def _count_rigid(universe, exact_check, trials, seed, exact, threads):
    edge_vertices = np.array(universe, dtype=np.intp)
    n = int(edge_vertices.max()) + 1
    incidence = incidence_index(edge_vertices, n)
    width = len(universe)

    def run(chunk):
        present = _rows_for(chunk, seed, exact, width)
        ok = discrete_rows(edge_vertices, incidence, present)
        rigid = int(ok.sum())
        searches = 0
        for row in np.flatnonzero(~ok):
            searches += 1
            edges = [universe[j] for j in np.flatnonzero(present[row])]
            rigid += exact_check(edges)
        return rigid, searches

    parts = _map_chunks(run, trials, threads, BATCH)
    return sum(p[0] for p in parts), sum(p[1] for p in parts)


def asymmetry_mc(n: int, t: int, trials: int = 0, seed: int = DEFAULT_SEED,
                 exact: bool = False, threads: int = 1) -> AsymmetryReport:
    """Estimate the probability that a random t-uniform hypergraph is not rigid.

    Each t-set is an edge with probability 1/2.  ``exact=True`` enumerates
    all 2^C(n,t) hypergraphs instead of sampling (``trials`` is ignored).
    """
    if not 1 <= t <= n // 2:
        raise ValueError(f"need 1 <= t <= n/2, got n={n}, t={t}")
    universe = list(itertools.combinations(range(n), t))
    if exact:
        if 2 ** len(universe) > EXACT_ENUMERATION_CAP:
            raise CapExceeded(f"2^{len(universe)} hypergraphs exceeds enumeration cap")
        trials = 2 ** len(universe)
    elif trials < 1:
        raise ValueError("trials must be positive")
    start = time.perf_counter()
    rigid, searches = _count_rigid(universe, lambda edges: is_rigid(Hypergraph(n, edges)),
                                   trials, seed, exact, threads)
    return AsymmetryReport(n, t, "uniform-hypergraph", trials, None if exact else seed, rigid,
                           exact, asymptotic_P2(n) if t == 2 and n >= 4 else None,
                           union_bound_asymmetry(n, t), fallback_searches=searches,
                           runtime_ms=(time.perf_counter() - start) * 1000)


def transversal_asymmetry_mc(n: int, t: int, trials: int = 0, seed: int = DEFAULT_SEED,
                             exact: bool = False, threads: int = 1) -> AsymmetryReport:
    """Estimate the probability that a random balanced transversal hypergraph is not rigid.

    Layers are ``range(i*r, (i+1)*r)`` with r = n/t; each of the r^t
    transversal t-sets is an edge with probability 1/2.
    """
    if t < 2 or n % t:
        raise ValueError(f"t={t} must be at least 2 and divide n={n}")
    r = n // t
    layers = [range(i * r, (i + 1) * r) for i in range(t)]
    universe = list(itertools.product(*layers))
    if exact:
        if 2 ** len(universe) > EXACT_ENUMERATION_CAP:
            raise CapExceeded(f"2^{len(universe)} hypergraphs exceeds enumeration cap")
        trials = 2 ** len(universe)
    elif trials < 1:
        raise ValueError("trials must be positive")
    start = time.perf_counter()
    rigid, searches = _count_rigid(
        universe, lambda edges: is_rigid_transversal(TransversalHypergraph(t, r, edges)),
        trials, seed, exact, threads)
    return AsymmetryReport(n, t, "balanced-transversal", trials, None if exact else seed, rigid,
                           exact, None, union_bound_transversal(t, r),
                           rate=asymptotic_Q2_rate(n) if t == 2 else None,
                           fallback_searches=searches,
                           runtime_ms=(time.perf_counter() - start) * 1000)


def verify_set_transitive(G: PermGroup, name: str = "G") -> ExceptionFinding:
    n = G.degree
    counts = {}
    for k in range(1, n // 2 + 1):
        counts[k] = kset_orbit_count(G, k)
        if counts[k] != 1:
            return ExceptionFinding(name, n, "not-set-transitive",
                                    {"k": k, "orbits": counts[k]})
    return ExceptionFinding(name, n, "set-transitive", {"orbit_counts": counts})


@dataclass
class LatticeResult:
    group_order: int
    k: int
    orbit_sizes: list
    unions: list  # (orbit indices, aut order)
    minimal_overgroups: list  # PermGroup
    groups: list = field(default_factory=list, repr=False)

    @property
    def minimal_overgroup_orders(self) -> list:
        return sorted(H.order for H in self.minimal_overgroups)

    @property
    def all_unions_larger(self) -> bool:
        return all(o > self.group_order for _, o in self.unions)


def orbit_union_lattice(G: PermGroup, k: int, max_orbits: int = UNION_ORBIT_CAP) -> LatticeResult:
    """Aut of every nonempty union of G-orbits on k-sets, and the minimal overgroups."""
    orbit_list = kset_orbits(G, k)
    if len(orbit_list) > max_orbits:
        raise CapExceeded(f"{len(orbit_list)} orbits exceeds union cap {max_orbits}")
    distinct = []
    unions = []
    for size in range(1, len(orbit_list) + 1):
        for idx in itertools.combinations(range(len(orbit_list)), size):
            H = Hypergraph(G.degree, [m for i in idx for m in orbit_list[i]])
            A = aut_group(H)
            unions.append((idx, A.order))
            if not any(A.order == B.order and subgroup_of(A, B) for B in distinct):
                distinct.append(A)
    larger = [A for A in distinct if A.order > G.order]
    minimal = [A for A in larger
               if not any(B.order < A.order and subgroup_of(B, A) for B in larger)]
    return LatticeResult(G.order, k, [len(o) for o in orbit_list], unions, minimal, distinct)


@dataclass
class EdgeSizeResult:
    k: int
    witness: tuple
    aut_order: int
    orbit_size: int


def min_edge_size(G: PermGroup, kmax: Optional[int] = None,
                  name: str = "G") -> Optional[EdgeSizeResult]:
    """Smallest k admitting a k-set Y with Aut(Y^G) = G, or None up to kmax."""
    n = G.degree
    if kmax is None:
        kmax = n // 2
    if kmax > n // 2:
        raise ValueError(f"kmax={kmax} exceeds n/2")
    for k in range(1, kmax + 1):
        for rep, size in kset_orbit_reps(G, k):
            A = aut_group(subset_orbit(G, rep).hypergraph)
            if A.order == G.order:
                return EdgeSizeResult(k, rep, A.order, size)
    log.info("%s: no single orbit on k-sets with k <= %d has Aut = G; exception candidate",
             name, kmax)
    return None


def classify_exception(G: PermGroup, name: str = "G",
                       max_orbits: int = UNION_ORBIT_CAP) -> ExceptionFinding:
    """Decide whether some union of k-set orbits (k <= n/2) has automorphism group G."""
    n = G.degree
    finding = verify_set_transitive(G, name)
    if finding.evidence == "set-transitive":
        return finding
    single = min_edge_size(G, n // 2, name)
    if single is not None:
        return ExceptionFinding(name, n, "rigid-witness-found",
                                {"k": single.k, "Y": list(single.witness), "orbits": "single"})
    overgroups = {}
    for k in range(1, n // 2 + 1):
        lattice = orbit_union_lattice(G, k, max_orbits)
        for idx, order in lattice.unions:
            if order == G.order:
                return ExceptionFinding(name, n, "rigid-witness-found",
                                        {"k": k, "orbit_union": list(idx)})
        overgroups[k] = lattice.minimal_overgroup_orders
    return ExceptionFinding(name, n, "all-orbit-unions-admit-overgroup",
                            {"minimal_overgroup_orders": overgroups})


def scan_exceptions(entries, degree_max: int, max_orbits: int = UNION_ORBIT_CAP) -> list:
    """Classify every transitive catalog group of degree <= degree_max other than S_n, A_n.

    Groups for which no union of k-set orbits has automorphism group G are
    reported as exception candidates; the scan does not claim completeness.
    """
    findings = []
    for entry in entries:
        G = entry.group
        n = G.degree
        if n > degree_max or not G.is_transitive():
            continue
        if G.order * 2 >= math.factorial(n):
            continue
        try:
            finding = classify_exception(G, entry.name, max_orbits)
        except CapExceeded as exc:
            finding = ExceptionFinding(entry.name, n, "indeterminate", {"reason": str(exc)})
        finding.primitive = nontrivial_block(G) is None
        findings.append(finding)
    return findings
