"""Deciding and certifying ``G ≅ Q_n`` for residual graphs of folded cubes.

Three tools work together:

* explicit maps for removing a single dimension class or the complement
  class, checked edge by edge with :func:`verify_isomorphism`;
* :func:`recognize_hypercube`, a BFS labeling that either produces an
  isomorphism onto ``Q_n`` or reports the first check it failed;
* :func:`eccentricity_certificate`, which finds a vertex whose eccentricity
  is below ``n``. Every vertex of ``Q_n`` has an antipode at distance ``n``,
  so such a vertex rules out ``Q_n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from foldcube import _kernels
from foldcube.cube import (
    MAX_ALL_PAIRS_DIM,
    CubeGraph,
    DimensionError,
    bfs_distances,
    build_folded_cube,
    build_hypercube,
    full_mask,
    is_connected,
    two_coloring,
)
from foldcube.matchings import (
    ClassProfile,
    Matching,
    MatchingError,
    is_perfect_matching,
    matching_class_profile,
    parse_which,
    remove_matching,
)


@dataclass(frozen=True, eq=False)
class VertexMap:
    """``image[v]`` is ``f(v)``."""

    n: int
    image: np.ndarray

    def __post_init__(self) -> None:
        self.image.setflags(write=False)

    def __call__(self, v: int) -> int:
        return int(self.image[v])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, VertexMap) and self.n == other.n and np.array_equal(self.image, other.image)

    __hash__ = None  # type: ignore[assignment]

    def is_permutation(self) -> bool:
        return self.image.size == 1 << self.n and np.array_equal(np.sort(self.image), np.arange(1 << self.n))

    def inverse(self) -> VertexMap:
        inv = np.empty_like(self.image)
        inv[self.image] = np.arange(self.image.size)
        return VertexMap(self.n, inv)

    def compose(self, other: VertexMap) -> VertexMap:
        """``self ∘ other``."""
        return VertexMap(self.n, self.image[other.image])


def identity_map(n: int) -> VertexMap:
    return VertexMap(n, np.arange(1 << n, dtype=np.int64))


def dimension_removal_map(n: int, i: int) -> VertexMap:
    """Map ``Q_n -> FQ_n - dim(i)``.

    Vertices with ``a_i = 0`` are fixed; on ``a_i = 1`` every coordinate
    except ``a_i`` is complemented. A dimension-``i`` edge of ``Q_n`` then
    lands on a complement edge, and all other cube edges stay inside the
    ``a_i``-halves.
    """
    if not 1 <= i <= n:
        raise DimensionError(f"dimension {i} out of range 1..{n}")
    bit = 1 << (i - 1)
    v = np.arange(1 << n, dtype=np.int64)
    return VertexMap(n, np.where(v & bit, v ^ (full_mask(n) ^ bit), v))


def removal_map(n: int, which: str | int) -> VertexMap:
    """Explicit isomorphism ``Q_n -> FQ_n - M`` for a canonical or dimension matching ``M``.

    ``m2`` is the identity. ``m1`` complements ``a_1..a_{n-1}`` on the
    ``a_n = 1`` half. ``m0`` complements ``a_1..a_{n-2}`` and ``a_n`` on the
    ``a_{n-1} = 1`` half.
    """
    if n < 2:
        raise DimensionError(f"needs n >= 2, got {n}")
    w = parse_which(which)
    if w == "m2":
        return identity_map(n)
    i = {"m1": n, "m0": n - 1}.get(w)
    return dimension_removal_map(n, i if i is not None else int(w[4:]))


# --------------------------------------------------------------------------
# map verification
# --------------------------------------------------------------------------


class IsoCheck(NamedTuple):
    ok: bool
    reason: str | None = None  # "size" | "not-bijective" | "edge-count" | "edge"
    detail: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def verify_isomorphism(g: CubeGraph, h: CubeGraph, f: VertexMap) -> IsoCheck:
    """Check that ``f`` is a bijection carrying every edge of ``g`` onto an edge of ``h``.

    With equal edge counts this forces the reverse direction too. On
    failure ``detail`` holds a duplicated image or the lexicographically
    first edge of ``g`` whose image is missing from ``h``.
    """
    nv = g.num_vertices
    if h.num_vertices != nv or f.image.size != nv:
        return IsoCheck(False, "size", (nv, h.num_vertices, int(f.image.size)))
    if not f.is_permutation():
        img = np.asarray(f.image)
        if img.min() < 0 or img.max() >= nv:
            bad = int(np.flatnonzero((img < 0) | (img >= nv))[0])
            return IsoCheck(False, "not-bijective", (bad, int(img[bad])))
        vals, counts = np.unique(img, return_counts=True)
        return IsoCheck(False, "not-bijective", (int(vals[counts > 1][0]),))
    if g.num_edges != h.num_edges:
        return IsoCheck(False, "edge-count", (g.num_edges, h.num_edges))
    a = f.image[g.edges[:, 0]]
    b = f.image[g.edges[:, 1]]
    keys = np.minimum(a, b) * nv + np.maximum(a, b)
    present = np.isin(keys, h.edge_keys)
    if not present.all():
        k = int(np.flatnonzero(~present)[0])
        return IsoCheck(False, "edge", (int(g.edges[k, 0]), int(g.edges[k, 1])))
    return IsoCheck(True)


# --------------------------------------------------------------------------
# hypercube recognition
# --------------------------------------------------------------------------


class Recognition(NamedTuple):
    """Outcome of :func:`recognize_hypercube`.

    ``labeling[x]`` is the hypercube label given to vertex ``x`` of the
    input graph; ``step``/``reason``/``detail`` name the first failed check.
    """

    ok: bool
    labeling: VertexMap | None = None
    step: int | None = None
    reason: str | None = None
    detail: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.ok

    @property
    def map(self) -> VertexMap | None:
        """Isomorphism ``Q_n -> G`` (inverse of the labeling)."""
        return None if self.labeling is None else self.labeling.inverse()


def recognize_hypercube(g: CubeGraph) -> Recognition:
    n = g.n
    nv = g.num_vertices
    deg = g.degrees()
    if not np.all(deg == n):
        bad = int(np.flatnonzero(deg != n)[0])
        return Recognition(False, step=1, reason="regularity", detail=(bad, int(deg[bad])))
    if not is_connected(g):
        return Recognition(False, step=1, reason="connectivity")
    if two_coloring(g) is None:
        return Recognition(False, step=1, reason="bipartiteness")

    label = np.full(nv, -1, dtype=np.int64)
    label[0] = 0
    for i, w in enumerate(g.neighbors(0)):
        label[w] = 1 << i

    dist = _kernels.bfs(g.indptr, g.indices, 0)
    order = np.argsort(dist, kind="stable")
    for x in order:
        k = dist[x]
        if k < 2:
            continue
        nb = g.neighbors(int(x))
        lower = label[nb[dist[nb] == k - 1]]
        distinct = np.unique(lower)
        if distinct.size < 2:
            return Recognition(False, step=3, reason="lower-neighbors", detail=(int(x), int(lower.size)))
        label[x] = distinct[0] | distinct[1]

    if not np.array_equal(np.sort(label), np.arange(nv)):
        vals, counts = np.unique(label, return_counts=True)
        clash = int(vals[counts > 1][0]) if (counts > 1).any() else int(label.min())
        return Recognition(False, step=4, reason="duplicate-label", detail=(clash,))
    diff = label[g.edges[:, 0]] ^ label[g.edges[:, 1]]
    bad = np.flatnonzero((diff == 0) | ((diff & (diff - 1)) != 0))
    if bad.size:
        k = int(bad[0])
        return Recognition(False, step=4, reason="edge-label", detail=(int(g.edges[k, 0]), int(g.edges[k, 1])))
    return Recognition(True, labeling=VertexMap(n, label))


# --------------------------------------------------------------------------
# certificates
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Isomorphic:
    map: VertexMap  # Q_n -> G
    kind = "isomorphic"


@dataclass(frozen=True)
class EccentricityDeficit:
    vertex: int
    eccentricity: int
    kind = "eccentricity-deficit"


@dataclass(frozen=True)
class InvariantMismatch:
    invariant: str
    detail: tuple[int, ...] = ()
    kind = "invariant-mismatch"


@dataclass(frozen=True)
class ExhaustedSearch:
    reason: str
    kind = "exhausted-search"


IsoCertificate = Union[Isomorphic, EccentricityDeficit, InvariantMismatch, ExhaustedSearch]


def eccentricity_certificate(g: CubeGraph, n: int | None = None) -> EccentricityDeficit | None:
    """Lowest-labeled vertex whose eccentricity is at most ``n - 1``."""
    n = g.n if n is None else n
    if g.num_vertices != 1 << n:
        raise DimensionError(f"graph has {g.num_vertices} vertices, expected {1 << n}")
    if n > MAX_ALL_PAIRS_DIM:
        raise DimensionError(f"eccentricity scans are limited to n <= {MAX_ALL_PAIRS_DIM}")
    hit = _kernels.first_deficit(g.indptr, g.indices, n - 1)
    return None if hit is None else EccentricityDeficit(*hit)


def check_certificate(g: CubeGraph, cert: IsoCertificate) -> bool:
    """Re-verify a certificate against ``g`` from scratch."""
    if isinstance(cert, Isomorphic):
        return bool(verify_isomorphism(build_hypercube(g.n), g, cert.map))
    if isinstance(cert, EccentricityDeficit):
        ecc = bfs_distances(g, cert.vertex).eccentricity
        return ecc is not None and ecc == cert.eccentricity < g.n
    if isinstance(cert, InvariantMismatch):
        return not recognize_hypercube(g).ok
    return not recognize_hypercube(g).ok and eccentricity_certificate(g) is None


# --------------------------------------------------------------------------
# removability
# --------------------------------------------------------------------------

TAGS = ("canonical", "mixed-without-m0", "mixed-with-m0", "outside-union")


def matching_tag(profile: ClassProfile) -> str:
    if profile.equals_canonical is not None:
        return "canonical"
    if not profile.subset_of_union:
        return "outside-union"
    return "mixed-with-m0" if profile.m00 + profile.m11 else "mixed-without-m0"


class Classification(NamedTuple):
    removable: bool
    certificate: IsoCertificate
    profile: ClassProfile
    tag: str
    residual: CubeGraph


def classify_removability(n: int, m: Matching, host: CubeGraph | None = None) -> Classification:
    """Decide whether ``FQ_n - m`` is a hypercube and attach a checkable certificate."""
    host = build_folded_cube(n) if host is None else host
    check = is_perfect_matching(host, m)
    if not check:
        raise MatchingError(f"not a perfect matching of FQ_{n}: {check.reason} {check.detail}")
    residual = remove_matching(host, m)
    profile = matching_class_profile(m)
    rec = recognize_hypercube(residual)
    cert: IsoCertificate
    if rec.ok:
        cert = Isomorphic(rec.map)
    else:
        deficit = eccentricity_certificate(residual, n)
        if deficit is not None:
            cert = deficit
        elif rec.step == 1:
            cert = InvariantMismatch(rec.reason, rec.detail)
        else:
            cert = ExhaustedSearch(f"recognition failed at step {rec.step}: {rec.reason}")
    return Classification(rec.ok, cert, profile, matching_tag(profile), residual)
