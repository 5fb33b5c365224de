"""Hypergraphs as families of vertex bitmasks, their orbits and automorphisms."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from ._search import NODE_CAP, Structure, automorphisms
from .errors import CapExceeded, NotPreservedError
from .groups import PermGroup, _apply_mask, _mul
from .perm import DEGREE_CAP, Permutation

AUT_DEGREE_CAP = 64
EDGE_CAP = 200_000
ORBIT_CAP = 10**6


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def vertices_of(mask: int) -> tuple:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


class Hypergraph:
    """A family of distinct subsets (edges) of ``range(n)``."""

    __slots__ = ("n", "edges", "_edge_set")

    def __init__(self, n: int, edges: Iterable = ()):
        if n < 0 or n > DEGREE_CAP:
            raise ValueError(f"vertex count {n} outside 0..{DEGREE_CAP}")
        masks = set()
        for e in edges:
            m = e if isinstance(e, int) else mask_of(e)
            if m >> n:
                raise ValueError(f"edge {vertices_of(m)} has a vertex outside 0..{n - 1}")
            masks.add(m)
        self.n = n
        self.edges = tuple(sorted(masks))
        self._edge_set = frozenset(masks)

    @property
    def uniform_k(self) -> Optional[int]:
        sizes = {m.bit_count() for m in self.edges}
        return sizes.pop() if len(sizes) == 1 else None

    def edge_sets(self) -> list:
        return [vertices_of(m) for m in self.edges]

    def has_edge(self, edge) -> bool:
        m = edge if isinstance(edge, int) else mask_of(edge)
        return m in self._edge_set

    def __len__(self):
        return len(self.edges)

    def __eq__(self, other):
        return isinstance(other, Hypergraph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Hypergraph(n={self.n}, edges={len(self.edges)})"

    def preserved_by(self, g: Permutation) -> bool:
        im = g.images
        return all(_apply_mask(m, im) in self._edge_set for m in self.edges)

    def complement_edges(self) -> "Hypergraph":
        """Replace every edge by its complement in the vertex set."""
        full = (1 << self.n) - 1
        return Hypergraph(self.n, [full ^ m for m in self.edges])

    def to_text(self) -> str:
        lines = [f"{self.n} {len(self.edges)}"]
        lines += [" ".join(map(str, vertices_of(m))) for m in self.edges]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Hypergraph":
        lines = text.splitlines()
        n, count = _header(lines)
        return cls(n, _edge_lines(lines[1:], count))


def _header(lines):
    try:
        n, count = map(int, lines[0].split())
    except (IndexError, ValueError):
        raise ValueError("first line must be 'n m'") from None
    return n, count


def _edge_lines(lines, count):
    if len(lines) < count:
        raise ValueError(f"expected {count} edge lines, found {len(lines)}")
    return [tuple(int(x) for x in line.split()) for line in lines[:count]]


def read_hypergraph(path) -> Hypergraph:
    with open(path) as fh:
        return Hypergraph.from_text(fh.read())


def write_hypergraph(H: Hypergraph, path) -> None:
    with open(path, "w") as fh:
        fh.write(H.to_text())


class TransversalHypergraph:
    """Hypergraph on ``t`` layers of ``r`` vertices; edges meet each layer once.

    Layer ``i`` is ``range(i*r, (i+1)*r)`` unless ``layers`` is given.
    """

    __slots__ = ("t", "r", "layers", "edges", "_edge_set", "_layer_of")

    def __init__(self, t: int, r: int, edges: Iterable = (), layers: Optional[Sequence] = None):
        if layers is None:
            layers = [tuple(range(i * r, (i + 1) * r)) for i in range(t)]
        layers = tuple(tuple(sorted(L)) for L in layers)
        if len(layers) != t or any(len(L) != r for L in layers):
            raise ValueError("layers must be t sets of size r")
        flat = sorted(v for L in layers for v in L)
        if flat != list(range(t * r)):
            raise ValueError("layers must partition range(t*r)")
        layer_of = [0] * (t * r)
        for i, L in enumerate(layers):
            for v in L:
                layer_of[v] = i
        masks = set()
        for e in edges:
            m = e if isinstance(e, int) else mask_of(e)
            vs = vertices_of(m)
            if sorted(layer_of[v] for v in vs) != list(range(t)):
                raise ValueError(f"edge {vs} is not transversal")
            masks.add(m)
        self.t, self.r, self.layers = t, r, layers
        self.edges = tuple(sorted(masks))
        self._edge_set = frozenset(masks)
        self._layer_of = tuple(layer_of)

    @property
    def n(self) -> int:
        return self.t * self.r

    def layer_of(self, v: int) -> int:
        return self._layer_of[v]

    def all_transversals(self) -> list:
        return [mask_of(c) for c in itertools.product(*self.layers)]

    def hypergraph(self) -> Hypergraph:
        return Hypergraph(self.n, self.edges)

    def respects_layers(self, g: Permutation) -> Optional[tuple]:
        """The induced layer permutation, or None if g splits a layer."""
        lo = self._layer_of
        perm = []
        for L in self.layers:
            targets = {lo[g.images[v]] for v in L}
            if len(targets) != 1:
                return None
            perm.append(targets.pop())
        return tuple(perm)

    def preserved_by(self, g: Permutation) -> bool:
        if self.respects_layers(g) is None:
            return False
        return all(_apply_mask(m, g.images) in self._edge_set for m in self.edges)

    def to_text(self) -> str:
        lines = [f"{self.n} {len(self.edges)}", " ".join(str(len(L)) for L in self.layers)]
        lines += [" ".join(map(str, vertices_of(m))) for m in self.edges]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "TransversalHypergraph":
        lines = text.splitlines()
        n, count = _header(lines)
        sizes = [int(x) for x in lines[1].split()]
        if len(set(sizes)) != 1 or sum(sizes) != n:
            raise ValueError(f"layer sizes {sizes} are not balanced or do not sum to {n}")
        return cls(len(sizes), sizes[0], _edge_lines(lines[2:], count))


@dataclass(frozen=True)
class OrbitFamily:
    seed: tuple
    hypergraph: Hypergraph

    @property
    def orbit_size(self) -> int:
        return len(self.hypergraph.edges)


def _orbit_masks(G: PermGroup, mask: int, cap=ORBIT_CAP):
    gens = [g.images for g in G.generators]
    seen = {mask}
    queue = [mask]
    for m in queue:
        for g in gens:
            img = _apply_mask(m, g)
            if img not in seen:
                seen.add(img)
                queue.append(img)
                if len(seen) > cap:
                    raise CapExceeded(f"orbit larger than {cap}")
    return seen


def subset_orbit(G: PermGroup, Y: Iterable[int]) -> OrbitFamily:
    """The family ``Y^G`` of all images of Y."""
    Y = tuple(sorted(set(Y)))
    if any(not 0 <= y < G.degree for y in Y):
        raise ValueError(f"{Y} is not a subset of 0..{G.degree - 1}")
    masks = _orbit_masks(G, mask_of(Y))
    return OrbitFamily(Y, Hypergraph(G.degree, masks))


def kset_orbit_reps(G: PermGroup, k: int, cap: int = ORBIT_CAP) -> list:
    """One ``(representative, orbit size)`` per orbit of G on k-sets.

    Representatives are the lexicographically first member of each orbit.
    """
    n = G.degree
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}")
    if math.comb(n, k) > cap:
        raise CapExceeded(f"C({n},{k}) exceeds cap {cap}")
    seen = set()
    out = []
    for combo in itertools.combinations(range(n), k):
        m = mask_of(combo)
        if m in seen:
            continue
        orb = _orbit_masks(G, m)
        seen |= orb
        out.append((combo, len(orb)))
    return out


def kset_orbits(G: PermGroup, k: int, cap: int = ORBIT_CAP) -> list:
    """Orbits of G on k-sets as sorted lists of bitmasks."""
    return [sorted(_orbit_masks(G, mask_of(rep))) for rep, _ in kset_orbit_reps(G, k, cap)]


def setwise_stabilizer(G: PermGroup, Y: Iterable[int]) -> PermGroup:
    """The subgroup of G mapping the set Y onto itself.

    The chain is rebuilt with the points of Y first; elements are then
    searched level by level over the Y-part of the base, skipping images
    already reached by the stabilizer elements found so far.
    """
    n = G.degree
    Y = sorted(set(Y))
    if any(not 0 <= y < n for y in Y):
        raise ValueError(f"{Y} is not a subset of 0..{n - 1}")
    if not Y or len(Y) == n:
        return G
    B = PermGroup(n, G.generators, base_prefix=Y)
    levels = B._levels
    ny = len(Y)
    in_y = [False] * n
    for y in Y:
        in_y[y] = True
    gens = list(levels[ny].gens) if ny < len(levels) else []

    def extend(depth, h):
        if depth == ny:
            return h
        lv = levels[depth]
        for delta, u in lv.trans.items():
            if in_y[h[delta]]:
                g = extend(depth + 1, _mul(u, h))
                if g is not None:
                    return g
        return None

    for d in reversed(range(ny)):
        lv = levels[d]
        orbit = _point_orbit(lv.point, gens)
        for delta in sorted(lv.trans):
            if delta in orbit or not in_y[delta]:
                continue
            g = extend(d + 1, lv.trans[delta])
            if g is not None:
                gens.append(g)
                orbit = _point_orbit(lv.point, gens)
    return PermGroup(n, [Permutation(g, check=False) for g in dict.fromkeys(gens)])


def _point_orbit(point, gens):
    seen = {point}
    queue = [point]
    for p in queue:
        for g in gens:
            q = g[p]
            if q not in seen:
                seen.add(q)
                queue.append(q)
    return seen


def _check_caps(n, edges, max_degree, max_edges):
    if n > max_degree:
        raise CapExceeded(f"{n} vertices exceeds automorphism-search cap {max_degree}")
    if edges > max_edges:
        raise CapExceeded(f"{edges} edges exceeds cap {max_edges}")


def _structure(H: Hypergraph):
    return Structure(H.n, [vertices_of(m) for m in H.edges])


def _group_from_search(n, gens, order):
    G = PermGroup(n, [Permutation(g, check=False) for g in gens])
    if order is not None and G.order != order:
        raise AssertionError(f"search order {order} disagrees with chain order {G.order}")
    return G


def aut_group(H: Hypergraph, max_degree: int = AUT_DEGREE_CAP,
              max_edges: int = EDGE_CAP, node_cap: int = NODE_CAP) -> PermGroup:
    """The full automorphism group of H as a subgroup of S_n."""
    _check_caps(H.n, len(H.edges), max_degree, max_edges)
    gens, order = automorphisms(_structure(H), node_cap=node_cap)
    return _group_from_search(H.n, gens, order)


def is_rigid(H: Hypergraph, max_degree: int = AUT_DEGREE_CAP, node_cap: int = NODE_CAP) -> bool:
    """True iff the only automorphism of H is the identity."""
    _check_caps(H.n, len(H.edges), max_degree, EDGE_CAP)
    gens, _ = automorphisms(_structure(H), stop_at_first=True, node_cap=node_cap)
    return not gens


def _transversal_structure(T: TransversalHypergraph):
    edges = [vertices_of(m) for m in T.edges] + list(T.layers)
    colors = [0] * len(T.edges) + [1] * len(T.layers)
    return Structure(T.n, edges, colors)


def aut_group_transversal(T: TransversalHypergraph, max_degree: int = AUT_DEGREE_CAP,
                          node_cap: int = NODE_CAP) -> PermGroup:
    """Automorphisms of T that map layers onto layers (possibly permuting them)."""
    _check_caps(T.n, len(T.edges), max_degree, EDGE_CAP)
    gens, order = automorphisms(_transversal_structure(T), node_cap=node_cap)
    return _group_from_search(T.n, gens, order)


def is_rigid_transversal(T: TransversalHypergraph, max_degree: int = AUT_DEGREE_CAP) -> bool:
    _check_caps(T.n, len(T.edges), max_degree, EDGE_CAP)
    gens, _ = automorphisms(_transversal_structure(T), stop_at_first=True)
    return not gens


def aut_equals(G: PermGroup, H: Hypergraph, aut: Optional[PermGroup] = None) -> bool:
    """True iff Aut(H) = G.

    Raises NotPreservedError if some generator of G is not an automorphism,
    since then G is not even contained in Aut(H).
    """
    if G.degree != H.n:
        raise ValueError(f"degree {G.degree} does not match vertex count {H.n}")
    for g in G.generators:
        if not H.preserved_by(g):
            raise NotPreservedError(g)
    if aut is None:
        aut = aut_group(H)
    return aut.order == G.order
