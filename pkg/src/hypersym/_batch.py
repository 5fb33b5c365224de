"""Vectorized colour refinement over many hypergraphs on a shared edge universe.

Each row of ``present`` selects a sub-family of a fixed universe of
candidate edges.  Vertex colours are 64-bit hashes updated from the hashes
of the edges through them; the update commutes with vertex relabelling, so
any automorphism preserves colours.  A row whose colours end up pairwise
distinct therefore has no nontrivial automorphism.  Rows that stay
non-discrete are left to the exact search.
"""
from __future__ import annotations

import numpy as np

_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_S30, _S27, _S31 = np.uint64(30), np.uint64(27), np.uint64(31)
_EDGE_SALT = np.uint64(0x9E3779B97F4A7C15)
_VERTEX_MUL = np.uint64(0xD6E8FEB86659FD93)


def _mix(x):
    x = (x ^ (x >> _S30)) * _M1
    x = (x ^ (x >> _S27)) * _M2
    return x ^ (x >> _S31)


def incidence_index(edge_vertices: np.ndarray, n: int) -> np.ndarray:
    """``(n, d)`` array of the edges through each vertex; the universe must be regular."""
    lists = [[] for _ in range(n)]
    for i, e in enumerate(edge_vertices):
        for v in e:
            lists[v].append(i)
    degrees = {len(l) for l in lists}
    if len(degrees) != 1:
        raise ValueError("edge universe is not vertex-regular")
    return np.array(lists, dtype=np.intp)


def _distinct_per_row(h):
    s = np.sort(h, axis=1)
    return 1 + np.count_nonzero(s[:, 1:] != s[:, :-1], axis=1)


def discrete_rows(edge_vertices: np.ndarray, incidence: np.ndarray,
                  present: np.ndarray) -> np.ndarray:
    """Boolean mask of rows whose refined colouring separates every vertex."""
    batch = present.shape[0]
    n = incidence.shape[0]
    weight = present.astype(np.uint64)
    with np.errstate(over="ignore"):
        h = np.zeros((batch, n), dtype=np.uint64)
        cells = np.ones(batch, dtype=np.intp)
        for _ in range(n):
            g = _mix(h ^ _EDGE_SALT)
            edge_hash = _mix(g[:, edge_vertices].sum(axis=2, dtype=np.uint64)) * weight
            through = edge_hash[:, incidence].sum(axis=2, dtype=np.uint64)
            h = _mix(h * _VERTEX_MUL + through)
            new_cells = _distinct_per_row(h)
            if np.array_equal(new_cells, cells):
                break
            cells = new_cells
    return cells == n
