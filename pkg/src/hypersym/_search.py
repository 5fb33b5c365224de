"""Individualization-refinement search for automorphisms of coloured hypergraphs.

Refinement is colour refinement on the vertex/edge incidence structure: an
edge is labelled by its colour and the multiset of cells it meets, a vertex
by the multiset of labels of its edges.  Every step depends only on cell
indices, so the ordered partitions along two search paths related by an
automorphism correspond cell by cell.

The group is found level by level along the first path (individualizing
the smallest vertex of the first largest cell).  At each level the
candidates are the other vertices of the target cell; a candidate already
in the orbit of the path vertex under the automorphisms found so far is
skipped, otherwise its subtree is searched for one automorphism.  The group
order is the product of the orbit lengths.
"""
from __future__ import annotations

from .errors import CapExceeded

NODE_CAP = 2_000_000


class Structure:
    """Edges as vertex tuples with integer colours; vertex colours optional."""

    def __init__(self, n, edges, edge_colors=None, vertex_colors=None):
        self.n = n
        self.edges = [tuple(e) for e in edges]
        self.colors = list(edge_colors) if edge_colors is not None else [0] * len(self.edges)
        self.vertex_colors = list(vertex_colors) if vertex_colors is not None else [0] * n
        self.inc = [[] for _ in range(n)]
        for i, e in enumerate(self.edges):
            for v in e:
                self.inc[v].append(i)
        self.masks = []
        self.edge_set = set()
        for e, c in zip(self.edges, self.colors):
            m = 0
            for v in e:
                m |= 1 << v
            self.masks.append(m)
            self.edge_set.add((c, m))

    def is_automorphism(self, images):
        vc = self.vertex_colors
        if any(vc[v] != vc[images[v]] for v in range(self.n)):
            return False
        for e, c in zip(self.edges, self.colors):
            m = 0
            for v in e:
                m |= 1 << images[v]
            if (c, m) not in self.edge_set:
                return False
        return True


class _Search:
    def __init__(self, S, node_cap):
        self.S = S
        self.node_cap = node_cap
        self.nodes = 0

    def refine(self, cells):
        self.nodes += 1
        if self.nodes > self.node_cap:
            raise CapExceeded(f"automorphism search exceeded {self.node_cap} nodes")
        S = self.S
        n = S.n
        trace = []
        cell_of = [0] * n
        while True:
            for i, c in enumerate(cells):
                for v in c:
                    cell_of[v] = i
            sigs = [(col, tuple(sorted([cell_of[u] for u in e])))
                    for e, col in zip(S.edges, S.colors)]
            ids = {s: i for i, s in enumerate(sorted(set(sigs)))}
            eid = [ids[s] for s in sigs]
            out = []
            changed = False
            for idx, c in enumerate(cells):
                if len(c) == 1:
                    out.append(c)
                    continue
                groups = {}
                for v in c:
                    key = tuple(sorted([eid[e] for e in S.inc[v]]))
                    groups.setdefault(key, []).append(v)
                if len(groups) == 1:
                    out.append(c)
                    continue
                changed = True
                for key in sorted(groups):
                    out.append(tuple(groups[key]))
                    trace.append((idx, key, len(groups[key])))
            cells = out
            if not changed:
                break
        trace.append(tuple(len(c) for c in cells))
        return cells, tuple(trace)

    @staticmethod
    def target(cells):
        best = -1
        for i, c in enumerate(cells):
            if len(c) > 1 and (best < 0 or len(c) > len(cells[best])):
                best = i
        return best

    @staticmethod
    def individualize(cells, idx, v):
        rest = tuple(x for x in cells[idx] if x != v)
        return cells[:idx] + [(v,), rest] + cells[idx + 1:]

    def initial_cells(self):
        by_color = {}
        for v in range(self.S.n):
            by_color.setdefault(self.S.vertex_colors[v], []).append(v)
        return [tuple(by_color[c]) for c in sorted(by_color)]


def _orbit(point, gens):
    seen = {point}
    queue = [point]
    for p in queue:
        for g in gens:
            q = g[p]
            if q not in seen:
                seen.add(q)
                queue.append(q)
    return seen


def automorphisms(S: Structure, stop_at_first=False, node_cap=NODE_CAP):
    """Return ``(generators, order)`` of the automorphism group of ``S``.

    Generators are image tuples.  With ``stop_at_first`` the search returns
    as soon as one nontrivial automorphism is found (order is then None).
    """
    search = _Search(S, node_cap)
    cells, trace = search.refine(search.initial_cells())
    path = [(cells, trace)]
    targets, chosen = [], []
    while True:
        t = search.target(cells)
        if t < 0:
            break
        v = min(cells[t])
        targets.append(t)
        chosen.append(v)
        cells, trace = search.refine(search.individualize(cells, t, v))
        path.append((cells, trace))
    leaf = [c[0] for c in path[-1][0]]
    depth = len(targets)

    def descend(cells, d):
        if d == depth:
            images = [0] * S.n
            for src, c in zip(leaf, cells):
                images[src] = c[0]
            return tuple(images) if S.is_automorphism(images) else None
        t = targets[d]
        for u in sorted(cells[t]):
            child, trace = search.refine(search.individualize(cells, t, u))
            if trace != path[d + 1][1]:
                continue
            g = descend(child, d + 1)
            if g is not None:
                return g
        return None

    gens = []
    order = 1
    for d in reversed(range(depth)):
        cells_d = path[d][0]
        t, v = targets[d], chosen[d]
        orbit = _orbit(v, gens)
        for w in sorted(cells_d[t]):
            if w in orbit:
                continue
            child, trace = search.refine(search.individualize(cells_d, t, w))
            if trace != path[d + 1][1]:
                continue
            g = descend(child, d + 1)
            if g is not None:
                gens.append(g)
                if stop_at_first:
                    return gens, None
                orbit = _orbit(v, gens)
        order *= len(orbit)
    return gens, order
