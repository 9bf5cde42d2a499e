"""Hot numeric kernels: BFS distances, eccentricity scans, Ryser permanent.

Each kernel exists twice: a numba ``@njit`` version operating on CSR
adjacency arrays, and a pure-numpy version (vectorized frontier
expansion for single sources, boolean matrix products for all sources). The numba path is used when numba imports and the environment
variable ``FOLDCUBE_DISABLE_NUMBA`` is unset (or ``0``); otherwise every
dispatcher falls back to numpy. Both paths return identical integers.
"""

from __future__ import annotations

import os

import numpy as np

UNREACHED = -1


def _numba_requested() -> bool:
    flag = os.environ.get("FOLDCUBE_DISABLE_NUMBA", "").strip().lower()
    return flag in ("", "0", "false", "no")


try:
    if not _numba_requested():
        raise ImportError("numba disabled by FOLDCUBE_DISABLE_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda fn: fn


# --------------------------------------------------------------------------
# numba kernels (CSR input)
# --------------------------------------------------------------------------


@njit(cache=True)
def _bfs_csr(indptr, indices, source):
    nv = indptr.shape[0] - 1
    dist = np.full(nv, -1, dtype=np.int64)
    queue = np.empty(nv, dtype=np.int64)
    dist[source] = 0
    queue[0] = source
    head = 0
    tail = 1
    while head < tail:
        x = queue[head]
        head += 1
        dx = dist[x] + 1
        for k in range(indptr[x], indptr[x + 1]):
            y = indices[k]
            if dist[y] < 0:
                dist[y] = dx
                queue[tail] = y
                tail += 1
    return dist


@njit(cache=True)
def _eccentricity_csr(indptr, indices, source, dist, queue):
    # -1 when some vertex is unreachable
    nv = indptr.shape[0] - 1
    for i in range(nv):
        dist[i] = -1
    dist[source] = 0
    queue[0] = source
    head = 0
    tail = 1
    ecc = 0
    while head < tail:
        x = queue[head]
        head += 1
        dx = dist[x] + 1
        for k in range(indptr[x], indptr[x + 1]):
            y = indices[k]
            if dist[y] < 0:
                dist[y] = dx
                if dx > ecc:
                    ecc = dx
                queue[tail] = y
                tail += 1
    if tail < nv:
        return -1
    return ecc


@njit(cache=True)
def _all_eccentricities_csr(indptr, indices):
    nv = indptr.shape[0] - 1
    out = np.empty(nv, dtype=np.int64)
    dist = np.empty(nv, dtype=np.int64)
    queue = np.empty(nv, dtype=np.int64)
    for s in range(nv):
        out[s] = _eccentricity_csr(indptr, indices, s, dist, queue)
    return out


@njit(cache=True)
def _first_deficit_csr(indptr, indices, bound):
    # lowest source whose eccentricity is <= bound; (-1, -1) if none
    nv = indptr.shape[0] - 1
    dist = np.empty(nv, dtype=np.int64)
    queue = np.empty(nv, dtype=np.int64)
    for s in range(nv):
        e = _eccentricity_csr(indptr, indices, s, dist, queue)
        if e >= 0 and e <= bound:
            return s, e
    return -1, -1


@njit(cache=True)
def _ryser_gray(mat):
    # Ryser's inclusion-exclusion over column subsets, visited in Gray-code order
    k = mat.shape[0]
    if k == 0:
        return 1
    rowsum = np.zeros(k, dtype=np.int64)
    total = 0
    prev = 0
    for step in range(1, 1 << k):
        gray = step ^ (step >> 1)
        diff = gray ^ prev
        col = 0
        while (diff >> col) & 1 == 0:
            col += 1
        if gray & diff:
            for r in range(k):
                rowsum[r] += mat[r, col]
        else:
            for r in range(k):
                rowsum[r] -= mat[r, col]
        prev = gray
        prod = 1
        for r in range(k):
            prod *= rowsum[r]
            if prod == 0:
                break
        size = 0
        g = gray
        while g:
            size += g & 1
            g >>= 1
        if (k - size) % 2 == 0:
            total += prod
        else:
            total -= prod
    return total


# --------------------------------------------------------------------------
# numpy kernels
# --------------------------------------------------------------------------


def dense_adjacency(indptr: np.ndarray, indices: np.ndarray) -> np.ndarray:
    nv = indptr.shape[0] - 1
    adj = np.zeros((nv, nv), dtype=bool)
    rows = np.repeat(np.arange(nv), np.diff(indptr))
    adj[rows, indices] = True
    return adj


def _bfs_frontier(indptr: np.ndarray, indices: np.ndarray, source: int) -> np.ndarray:
    """Level-synchronous BFS; each level gathers the frontier's CSR slices at once."""
    nv = indptr.shape[0] - 1
    dist = np.full(nv, UNREACHED, dtype=np.int64)
    dist[source] = 0
    frontier = np.array([source], dtype=np.int64)
    level = 0
    while frontier.size:
        level += 1
        starts = indptr[frontier]
        counts = indptr[frontier + 1] - starts
        offsets = np.repeat(starts - np.cumsum(counts) + counts, counts)
        nbrs = indices[np.arange(counts.sum()) + offsets]
        nbrs = np.unique(nbrs[dist[nbrs] < 0])
        dist[nbrs] = level
        frontier = nbrs
    return dist


def _all_distances_dense(adj: np.ndarray) -> np.ndarray:
    """Every source at once: frontiers advance by boolean matrix products."""
    nv = adj.shape[0]
    a = adj.astype(np.float32)
    dist = np.full((nv, nv), UNREACHED, dtype=np.int64)
    seen = np.eye(nv, dtype=bool)
    frontier = seen.copy()
    dist[seen] = 0
    level = 0
    while frontier.any():
        level += 1
        frontier = (frontier.astype(np.float32) @ a > 0) & ~seen
        seen |= frontier
        dist[frontier] = level
    return dist


def _eccentricities_from_distances(dist: np.ndarray) -> np.ndarray:
    ecc = dist.max(axis=1)
    ecc[(dist < 0).any(axis=1)] = UNREACHED
    return ecc


def _ryser_numpy(mat: np.ndarray) -> int:
    k = mat.shape[0]
    if k == 0:
        return 1
    subsets = (np.arange(1, 1 << k)[:, None] >> np.arange(k)) & 1
    rowsums = subsets @ mat.T.astype(np.int64)
    signs = np.where((k - subsets.sum(axis=1)) % 2 == 0, 1, -1)
    return int(np.sum(signs * np.prod(rowsums, axis=1, dtype=np.int64)))


# --------------------------------------------------------------------------
# dispatch
# --------------------------------------------------------------------------


def bfs(indptr, indices, source: int, *, use_numba: bool | None = None) -> np.ndarray:
    if _pick(use_numba):
        return _bfs_csr(indptr, indices, np.int64(source))
    return _bfs_frontier(indptr, indices, source)


def all_eccentricities(indptr, indices, *, use_numba: bool | None = None) -> np.ndarray:
    if _pick(use_numba):
        return _all_eccentricities_csr(indptr, indices)
    return _eccentricities_from_distances(_all_distances_dense(dense_adjacency(indptr, indices)))


def first_deficit(indptr, indices, bound: int, *, use_numba: bool | None = None) -> tuple[int, int] | None:
    """Lowest vertex with finite eccentricity <= ``bound`` as ``(vertex, ecc)``."""
    if _pick(use_numba):
        v, e = _first_deficit_csr(indptr, indices, np.int64(bound))
        return None if v < 0 else (int(v), int(e))
    ecc = all_eccentricities(indptr, indices, use_numba=False)
    hits = np.flatnonzero((ecc >= 0) & (ecc <= bound))
    if hits.size == 0:
        return None
    v = int(hits[0])
    return v, int(ecc[v])


def permanent(mat: np.ndarray, *, use_numba: bool | None = None) -> int:
    mat = np.ascontiguousarray(mat, dtype=np.int64)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"permanent needs a square matrix, got shape {mat.shape}")
    if _pick(use_numba):
        return int(_ryser_gray(mat))
    return _ryser_numpy(mat)


def _pick(use_numba: bool | None) -> bool:
    if use_numba is None:
        return HAVE_NUMBA
    if use_numba and not HAVE_NUMBA:
        raise RuntimeError("numba path requested but numba is unavailable or disabled")
    return use_numba
