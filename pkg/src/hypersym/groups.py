"""Permutation groups given by generators, backed by a stabilizer chain.

The chain is built with the deterministic Schreier-Sims algorithm and keeps
explicit transversals.  Base points default to the smallest point moved by
the current stabilizer; a prefix of the base can be prescribed, which the
backtrack searches in :mod:`hypersym.hypergraph` use to put interesting
points first.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .errors import CapExceeded
from .perm import DEGREE_CAP, Permutation

MINDEG_ORDER_CAP = 10**6
KSET_CAP = 10**6


def _mul(a, b):
    return tuple([b[x] for x in a])


def _inv(a):
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def _first_moved(g):
    for i, x in enumerate(g):
        if i != x:
            return i
    return None


class _Level:
    __slots__ = ("point", "gens", "trans", "inv")

    def __init__(self, point, gens, n):
        self.point = point
        self.gens = gens
        ident = tuple(range(n))
        trans = {point: ident}
        queue = [point]
        for p in queue:
            up = trans[p]
            for s in gens:
                q = s[p]
                if q not in trans:
                    trans[q] = _mul(up, s)
                    queue.append(q)
        self.trans = trans
        self.inv = {}

    def inverse_of(self, point):
        u = self.inv.get(point)
        if u is None:
            u = self.inv[point] = _inv(self.trans[point])
        return u


def _schreier_sims(n, gens, base_prefix=()):
    ident = tuple(range(n))
    gens = [g for g in dict.fromkeys(gens) if g != ident]
    base = list(dict.fromkeys(base_prefix))
    for g in gens:
        if all(g[b] == b for b in base):
            base.append(_first_moved(g))
    strong = list(gens)

    def level(i):
        prefix = base[:i]
        sg = [s for s in strong if all(s[b] == b for b in prefix)]
        return _Level(base[i], sg, n)

    levels = [level(i) for i in range(len(base))]

    def strip(g, start):
        for j in range(start, len(base)):
            lv = levels[j]
            beta = g[lv.point]
            if beta not in lv.trans:
                return g, j
            if beta != lv.point:
                g = _mul(g, lv.inverse_of(beta))
        return g, len(base)

    i = len(base) - 1
    while i >= 0:
        lv = levels[i]
        added = False
        for beta in list(lv.trans):
            u = lv.trans[beta]
            for x in lv.gens:
                ux = _mul(u, x)
                target = lv.trans[x[beta]]
                if ux == target:
                    continue
                g = _mul(ux, lv.inverse_of(x[beta]))
                h, j = strip(g, i + 1)
                if h == ident:
                    continue
                if j == len(base):
                    base.append(_first_moved(h))
                    levels.append(None)
                strong.append(h)
                for l in range(i + 1, j + 1):
                    levels[l] = level(l)
                i = j
                added = True
                break
            if added:
                break
        if not added:
            i -= 1
    return base, strong, levels


class PermGroup:
    """A permutation group with a base and strong generating set."""

    def __init__(self, degree: int, generators: Sequence[Permutation] = (),
                 base_prefix: Sequence[int] = ()):
        if degree > DEGREE_CAP:
            raise CapExceeded(f"degree {degree} exceeds cap {DEGREE_CAP}")
        for g in generators:
            if g.degree != degree:
                raise ValueError(f"generator of degree {g.degree} in a group of degree {degree}")
        self.degree = degree
        self.generators = tuple(generators)
        base, strong, levels = _schreier_sims(
            degree, [g.images for g in self.generators], base_prefix)
        self.base = tuple(base)
        self._strong = strong
        self._levels = levels
        self.order = math.prod(len(lv.trans) for lv in levels)

    @property
    def strong_generators(self) -> list:
        return [Permutation(s, check=False) for s in self._strong]

    @property
    def transversals(self) -> list:
        """Per base point, a dict from orbit point to a coset representative."""
        return [{p: Permutation(u, check=False) for p, u in lv.trans.items()}
                for lv in self._levels]

    def basic_orbit_lengths(self) -> list:
        return [len(lv.trans) for lv in self._levels]

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def sift(self, a: Permutation):
        """Strip ``a`` through the chain; returns ``(residue, level reached)``."""
        g = a.images
        for j, lv in enumerate(self._levels):
            beta = g[lv.point]
            if beta not in lv.trans:
                return Permutation(g, check=False), j
            g = _mul(g, lv.inverse_of(beta))
        return Permutation(g, check=False), len(self._levels)

    def contains(self, a: Permutation) -> bool:
        if a.degree != self.degree:
            raise ValueError(f"degree mismatch: {a.degree} != {self.degree}")
        residue, level = self.sift(a)
        return level == len(self._levels) and residue.is_identity()

    __contains__ = contains

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return subgroup_of(self, other)

    def orbits(self) -> list:
        return orbits(self)

    def orbit(self, point: int) -> list:
        seen = {point}
        queue = [point]
        for p in queue:
            for g in self.generators:
                q = g.images[p]
                if q not in seen:
                    seen.add(q)
                    queue.append(q)
        return sorted(seen)

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def elements(self, cap: int = MINDEG_ORDER_CAP) -> Iterator[Permutation]:
        for g in self._element_tuples(cap):
            yield Permutation(g, check=False)

    def _element_tuples(self, cap):
        if self.order > cap:
            raise CapExceeded(f"group order {self.order} exceeds cap {cap}")
        levels = self._levels
        k = len(levels)

        # every element factors uniquely as u_{k-1} ... u_1 u_0 with u_i in level i
        def walk(depth, h):
            if depth == k:
                yield h
                return
            for u in levels[depth].trans.values():
                yield from walk(depth + 1, _mul(u, h))

        yield from walk(0, tuple(range(self.degree)))

    def __eq__(self, other):
        return (isinstance(other, PermGroup) and self.degree == other.degree
                and self.order == other.order and subgroup_of(self, other))

    def __hash__(self):
        return hash((self.degree, self.order))

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order}, ngens={len(self.generators)})"

    def generator_string(self, one_based: bool = False) -> str:
        return ";".join(g.to_cycles(one_based) for g in self.generators)


def build_group(gens: Sequence[Permutation], degree: Optional[int] = None) -> PermGroup:
    """Build a group; ``degree`` is required when ``gens`` is empty."""
    gens = list(gens)
    if degree is None:
        if not gens:
            raise ValueError("degree is required for an empty generator list")
        degree = gens[0].degree
    return PermGroup(degree, gens)


def contains(G: PermGroup, a: Permutation) -> bool:
    return G.contains(a)


def subgroup_of(G: PermGroup, H: PermGroup) -> bool:
    """True iff G <= H."""
    if G.degree != H.degree:
        raise ValueError(f"degree mismatch: {G.degree} != {H.degree}")
    if G.order > H.order or H.order % G.order:
        return False
    return all(H.contains(g) for g in G.generators)


def orbits(G: PermGroup) -> list:
    parent = list(range(G.degree))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in G.generators:
        for i, x in enumerate(g.images):
            a, b = find(i), find(x)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups = {}
    for i in range(G.degree):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def elements(G: PermGroup, cap: int = MINDEG_ORDER_CAP) -> Iterator[Permutation]:
    return G.elements(cap)


def minimal_block(G: PermGroup, a: int, b: int) -> list:
    """Smallest block of imprimitivity containing both ``a`` and ``b``."""
    parent = list(range(G.degree))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    parent[find(b)] = find(a)
    queue = [(a, b)]
    gens = [g.images for g in G.generators]
    for x, y in queue:
        for g in gens:
            u, v = find(g[x]), find(g[y])
            if u != v:
                parent[v] = u
                queue.append((g[x], g[y]))
    root = find(a)
    return [i for i in range(G.degree) if find(i) == root]


def nontrivial_block(G: PermGroup) -> Optional[list]:
    """A block witnessing imprimitivity of a transitive group, or None."""
    n = G.degree
    for b in range(1, n):
        block = minimal_block(G, 0, b)
        if len(block) < n:
            return block
    return None


def kset_orbit_count(G: PermGroup, k: int, cap: int = KSET_CAP) -> int:
    """Number of orbits of G on k-subsets, by closure on bitmasks."""
    n = G.degree
    if math.comb(n, k) > cap:
        raise CapExceeded(f"C({n},{k}) exceeds cap {cap}")
    gens = [g.images for g in G.generators]
    seen = set()
    count = 0
    for combo in itertools.combinations(range(n), k):
        mask = 0
        for x in combo:
            mask |= 1 << x
        if mask in seen:
            continue
        count += 1
        seen.add(mask)
        queue = [mask]
        for m in queue:
            for g in gens:
                img = _apply_mask(m, g)
                if img not in seen:
                    seen.add(img)
                    queue.append(img)
    return count


def _apply_mask(mask, images):
    out = 0
    while mask:
        low = mask & -mask
        out |= 1 << images[low.bit_length() - 1]
        mask ^= low
    return out


def minimal_degree(G: PermGroup, cap: int = MINDEG_ORDER_CAP):
    """Return ``(m, witness)`` by scanning every element, or None if too large.

    The trivial group has no minimal degree and yields ``(None, None)``.
    """
    if G.order > cap:
        return None
    if G.order == 1:
        return None, None
    n = G.degree
    best, witness = n + 1, None
    for g in G.generators:
        s = sum(1 for i, x in enumerate(g.images) if i != x)
        if 0 < s < best:
            best, witness = s, g.images
    if best > 2:
        for g in G._element_tuples(cap):
            s = sum(1 for i, x in enumerate(g) if i != x)
            if 0 < s < best:
                best, witness = s, g
                if s == 2:
                    break
    return best, Permutation(witness, check=False)


@dataclass(frozen=True)
class StructureReport:
    transitive: bool
    primitive: bool
    nontrivial_block: Optional[tuple]
    k_homogeneous_up_to: int
    minimal_degree: Optional[int]
    minimal_degree_witness: Optional[Permutation]
    generator_count: int


def structure_report(G: PermGroup, kmax: Optional[int] = None,
                     mindeg_cap: int = MINDEG_ORDER_CAP,
                     kset_cap: int = KSET_CAP) -> StructureReport:
    n = G.degree
    if kmax is None:
        kmax = n // 2
    if kmax > n // 2:
        raise ValueError(f"kmax {kmax} exceeds n/2 = {n // 2}")
    transitive = G.is_transitive()
    block = nontrivial_block(G) if transitive else None
    homog = 0
    if transitive:
        for k in range(1, kmax + 1):
            if kset_orbit_count(G, k, kset_cap) != 1:
                break
            homog = k
    md = minimal_degree(G, mindeg_cap)
    m, witness = md if md is not None else (None, None)
    return StructureReport(
        transitive=transitive,
        primitive=transitive and block is None,
        nontrivial_block=tuple(block) if block else None,
        k_homogeneous_up_to=homog,
        minimal_degree=m,
        minimal_degree_witness=witness,
        generator_count=len(G.generators),
    )
