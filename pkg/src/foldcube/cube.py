"""Hypercubes, folded hypercubes and the distance machinery over them.

Vertex labels are plain ints. Coordinate ``a_i`` is bit ``i - 1``, so
``a_1`` is the least significant bit and ``a_n`` the most significant.
Rendered as strings, labels are written most significant bit first.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING, NamedTuple

import numpy as np

from foldcube import _kernels

if TYPE_CHECKING:
    from foldcube.matchings import Matching

MAX_DIM = 20
MAX_ALL_PAIRS_DIM = 10


class DimensionError(ValueError):
    """Dimension outside the supported range for an operation."""


class VertexError(ValueError):
    """Vertex label outside ``[0, 2**n)``."""


# --------------------------------------------------------------------------
# labels
# --------------------------------------------------------------------------


def full_mask(n: int) -> int:
    return (1 << n) - 1


def complement(v: int, n: int) -> int:
    return v ^ full_mask(n)


def parity(v: int) -> int:
    return v.bit_count() & 1


def to_binary(v: int, n: int) -> str:
    """Render ``v`` as ``a_n ... a_1``."""
    return format(v, f"0{n}b") if n > 0 else ""


def from_binary(s: str, n: int | None = None) -> int:
    s = s.strip()
    if not s or set(s) - {"0", "1"}:
        raise VertexError(f"not a binary label: {s!r}")
    if n is not None and len(s) != n:
        raise VertexError(f"label {s!r} has {len(s)} bits, expected {n}")
    return int(s, 2)


def check_vertex(v: int, n: int) -> None:
    if not 0 <= v < (1 << n):
        raise VertexError(f"vertex {v} out of range for n={n}")


# --------------------------------------------------------------------------
# edge kinds
# --------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class EdgeKind:
    """``dimension`` is ``i`` for a Dimension(i) edge, ``None`` for a complement edge."""

    dimension: int | None

    @property
    def is_complement(self) -> bool:
        return self.dimension is None

    def mask(self, n: int) -> int:
        return full_mask(n) if self.dimension is None else 1 << (self.dimension - 1)

    def __str__(self) -> str:
        return "complement" if self.dimension is None else f"dim:{self.dimension}"


COMPLEMENT = EdgeKind(None)


def dimension(i: int) -> EdgeKind:
    return EdgeKind(i)


def classify_edge(n: int, u: int, v: int) -> EdgeKind | None:
    """Kind of the folded-cube edge ``uv``, or ``None`` if it is not an edge.

    >>> classify_edge(4, 0b0000, 0b0001)
    EdgeKind(dimension=1)
    >>> classify_edge(4, 0b0000, 0b1111).is_complement
    True
    >>> classify_edge(4, 0b0011, 0b0101) is None
    True
    """
    check_vertex(u, n)
    check_vertex(v, n)
    x = u ^ v
    if x == 0:
        return None
    if x & (x - 1) == 0:
        return EdgeKind(x.bit_length())
    if n >= 2 and x == full_mask(n):
        return COMPLEMENT
    return None


def canon(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


# --------------------------------------------------------------------------
# graphs
# --------------------------------------------------------------------------


class Family(str, enum.Enum):
    HYPERCUBE = "hypercube"
    FOLDED = "folded"
    RESIDUAL = "residual"


@dataclass(frozen=True, eq=False)
class CubeGraph:
    """Immutable graph on all ``2**n`` labels.

    ``edges`` is an ``(m, 2)`` int64 array, each row ``(min, max)``, rows in
    lexicographic order. ``removed`` is set only for residual graphs.
    """

    n: int
    family: Family
    edges: np.ndarray
    removed: Matching | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        self.edges.setflags(write=False)

    @property
    def num_vertices(self) -> int:
        return 1 << self.n

    @property
    def num_edges(self) -> int:
        return int(self.edges.shape[0])

    def edge_list(self) -> list[tuple[int, int]]:
        return [(int(u), int(v)) for u, v in self.edges]

    @cached_property
    def edge_keys(self) -> np.ndarray:
        # sorted because edges are lexicographic
        return self.edges[:, 0] * self.num_vertices + self.edges[:, 1]

    @cached_property
    def _csr(self) -> tuple[np.ndarray, np.ndarray]:
        nv = self.num_vertices
        src = np.concatenate([self.edges[:, 0], self.edges[:, 1]])
        dst = np.concatenate([self.edges[:, 1], self.edges[:, 0]])
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
        indptr = np.zeros(nv + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=nv), out=indptr[1:])
        return indptr, np.ascontiguousarray(dst, dtype=np.int64)

    @property
    def indptr(self) -> np.ndarray:
        return self._csr[0]

    @property
    def indices(self) -> np.ndarray:
        return self._csr[1]

    def neighbors(self, v: int) -> np.ndarray:
        """Neighbors of ``v`` in ascending order."""
        check_vertex(v, self.n)
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def has_edge(self, u: int, v: int) -> bool:
        """Membership test; for the two cube families this uses the edge kind alone."""
        check_vertex(u, self.n)
        check_vertex(v, self.n)
        if self.family is Family.HYPERCUBE:
            kind = classify_edge(self.n, u, v)
            return kind is not None and not kind.is_complement
        if self.family is Family.FOLDED:
            return classify_edge(self.n, u, v) is not None
        a, b = canon(u, v)
        key = a * self.num_vertices + b
        i = np.searchsorted(self.edge_keys, key)
        return bool(i < self.edge_keys.size and self.edge_keys[i] == key)


def _check_dim(n: int, lo: int, hi: int, what: str) -> None:
    if not isinstance(n, (int, np.integer)) or not lo <= n <= hi:
        raise DimensionError(f"{what} needs {lo} <= n <= {hi}, got {n!r}")


def _kind_edges(n: int, mask: int) -> np.ndarray:
    """All edges ``(v, v ^ mask)`` with ``v < v ^ mask``."""
    v = np.arange(1 << n, dtype=np.int64)
    w = v ^ mask
    keep = v < w
    return np.stack([v[keep], w[keep]], axis=1)


def _assemble(parts: list[np.ndarray]) -> np.ndarray:
    e = np.concatenate(parts) if parts else np.empty((0, 2), dtype=np.int64)
    order = np.lexsort((e[:, 1], e[:, 0]))
    return np.ascontiguousarray(e[order])


def build_hypercube(n: int) -> CubeGraph:
    _check_dim(n, 1, MAX_DIM, "hypercube")
    edges = _assemble([_kind_edges(n, 1 << i) for i in range(n)])
    return CubeGraph(n, Family.HYPERCUBE, edges)


def build_folded_cube(n: int) -> CubeGraph:
    _check_dim(n, 2, MAX_DIM, "folded cube")
    masks = [1 << i for i in range(n)] + [full_mask(n)]
    edges = _assemble([_kind_edges(n, m) for m in masks])
    return CubeGraph(n, Family.FOLDED, edges)


def graph_from_edges(n: int, edges, family: Family = Family.RESIDUAL, removed=None) -> CubeGraph:
    """Wrap an arbitrary edge collection over ``2**n`` labels as a CubeGraph."""
    _check_dim(n, 1, MAX_DIM, "graph")
    arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
    arr = arr.reshape(-1, 2)
    if arr.size and (arr.min() < 0 or arr.max() >= 1 << n):
        raise VertexError(f"edge endpoint out of range for n={n}")
    if np.any(arr[:, 0] == arr[:, 1]):
        raise ValueError("loops are not allowed")
    arr = np.sort(arr, axis=1)
    arr = np.unique(arr, axis=0)
    return CubeGraph(n, family, _assemble([arr]), removed)


# --------------------------------------------------------------------------
# distances
# --------------------------------------------------------------------------


class DistanceProfile(NamedTuple):
    source: int
    dist: np.ndarray
    eccentricity: int | None  # None when some vertex is unreachable


def bfs_distances(g: CubeGraph, source: int) -> DistanceProfile:
    check_vertex(source, g.n)
    dist = _kernels.bfs(g.indptr, g.indices, source)
    ecc = None if (dist < 0).any() else int(dist.max())
    return DistanceProfile(source, dist, ecc)


def eccentricity(g: CubeGraph, v: int) -> int | None:
    return bfs_distances(g, v).eccentricity


def eccentricities(g: CubeGraph) -> np.ndarray:
    """Eccentricity of every vertex; ``-1`` marks an unreachable vertex."""
    _check_dim(g.n, 1, MAX_ALL_PAIRS_DIM, "all-pairs BFS")
    return _kernels.all_eccentricities(g.indptr, g.indices)


def diameter(g: CubeGraph) -> int | None:
    ecc = eccentricities(g)
    return None if (ecc < 0).any() else int(ecc.max())


# --------------------------------------------------------------------------
# invariants
# --------------------------------------------------------------------------


class GraphInvariants(NamedTuple):
    vertices: int
    edges: int
    degree: int | None  # None when not regular
    bipartite: bool
    connected: bool


def two_coloring(g: CubeGraph) -> np.ndarray | None:
    """Proper 2-coloring by BFS layers, or ``None`` when an odd cycle exists."""
    color = np.full(g.num_vertices, -1, dtype=np.int64)
    for root in range(g.num_vertices):
        if color[root] >= 0:
            continue
        dist = _kernels.bfs(g.indptr, g.indices, root)
        reached = dist >= 0
        color[reached] = dist[reached] & 1
    u, v = g.edges[:, 0], g.edges[:, 1]
    if np.any(color[u] == color[v]):
        return None
    return color


def is_connected(g: CubeGraph) -> bool:
    return bool((_kernels.bfs(g.indptr, g.indices, 0) >= 0).all())


def graph_invariants(g: CubeGraph) -> GraphInvariants:
    deg = g.degrees()
    regular = int(deg[0]) if deg.size and np.all(deg == deg[0]) else None
    return GraphInvariants(
        vertices=g.num_vertices,
        edges=g.num_edges,
        degree=regular,
        bipartite=two_coloring(g) is not None,
        connected=is_connected(g),
    )
