"""Perfect-matching counts computed without enumerating matchings.

Bipartite graphs go through the Ryser permanent of the biadjacency matrix;
any graph can go through inclusion-exclusion over uncovered vertices. Both
serve as oracles for the backtracking enumerator.
"""

from __future__ import annotations

import math

import numpy as np

from foldcube import _kernels
from foldcube.cube import CubeGraph, two_coloring

MAX_SIDE = 20


def biadjacency(g: CubeGraph) -> np.ndarray:
    """Rows: color-0 vertices, columns: color-1 vertices, both ascending."""
    color = two_coloring(g)
    if color is None:
        raise ValueError("graph is not bipartite")
    left = np.flatnonzero(color == 0)
    right = np.flatnonzero(color == 1)
    pos = np.empty(g.num_vertices, dtype=np.int64)
    pos[left] = np.arange(left.size)
    pos[right] = np.arange(right.size)
    mat = np.zeros((left.size, right.size), dtype=np.int64)
    u, v = g.edges[:, 0], g.edges[:, 1]
    lu = color[u] == 0
    mat[pos[np.where(lu, u, v)], pos[np.where(lu, v, u)]] = 1
    return mat


def perfect_matching_count(g: CubeGraph, *, use_numba: bool | None = None) -> int:
    mat = biadjacency(g)
    if mat.shape[0] != mat.shape[1]:
        return 0
    if mat.shape[0] > MAX_SIDE:
        raise ValueError(f"permanent limited to {MAX_SIDE}x{MAX_SIDE}")
    return _kernels.permanent(mat, use_numba=use_numba)


def perfect_matching_count_by_cover(g: CubeGraph) -> int:
    """Count perfect matchings of any graph by inclusion-exclusion.

    A set of ``|V|/2`` edges is a perfect matching exactly when it covers
    every vertex, so the count is the sum over vertex sets ``S`` of
    ``(-1)**(|V|-|S|) * comb(e(S), |V|/2)`` with ``e(S)`` the number of edges
    inside ``S``. Cost is ``2**|V|`` subsets.
    """
    nv = g.num_vertices
    if nv % 2:
        return 0
    if nv > 24:
        raise ValueError("cover counting limited to 24 vertices")
    half = nv // 2
    masks = np.arange(1 << nv, dtype=np.int64)
    inside = np.zeros(masks.size, dtype=np.int64)
    for u, v in g.edges:
        inside += (masks >> u) & (masks >> v) & 1
    comb = np.array([math.comb(e, half) for e in range(g.num_edges + 1)], dtype=object)
    sizes = sum((masks >> i) & 1 for i in range(nv))
    signs = np.where((nv - sizes) % 2 == 0, 1, -1)
    return int(np.sum(signs * comb[inside]))
