"""Perfect matchings of folded cubes.

The three canonical matchings of ``FQ_n`` are

* ``m1``: every dimension-``n`` edge (flips the top bit),
* ``m2``: every complement edge,
* ``m0``: every dimension-``(n-1)`` edge, split into ``m00`` (top bit 0)
  and ``m11`` (top bit 1).

Their union is a 3-regular spanning subgraph; a *mixed* matching is a
perfect matching inside that union equal to none of the three.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from foldcube.cube import (
    CubeGraph,
    DimensionError,
    Family,
    VertexError,
    canon,
    check_vertex,
    from_binary,
    full_mask,
    graph_from_edges,
)

CLASSES = ("m00", "m11", "m1", "m2")
CANONICAL = ("m0", "m1", "m2")
MAX_ENUMERATION_VERTICES = 24


class MatchingError(ValueError):
    """A matching violates the precondition of an operation."""


@dataclass(frozen=True)
class Matching:
    """Edge set over ``n``-bit labels, stored as sorted ``(min, max)`` pairs.

    Disjointness is not enforced here so that candidate edge sets can be
    handed to :func:`is_perfect_matching` for a reasoned verdict.
    """

    n: int
    edges: tuple[tuple[int, int], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Matching:
        canon_edges = set()
        for u, v in edges:
            u, v = int(u), int(v)
            check_vertex(u, n)
            check_vertex(v, n)
            canon_edges.add(canon(u, v))
        return cls(n, tuple(sorted(canon_edges)))

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)

    @property
    def covered(self) -> frozenset[int]:
        return frozenset(x for e in self.edges for x in e)

    @property
    def is_matching(self) -> bool:
        return 2 * len(self.edges) == len(self.covered)

    @property
    def is_perfect(self) -> bool:
        return self.is_matching and len(self.edges) == 1 << (self.n - 1)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)


# --------------------------------------------------------------------------
# canonical matchings
# --------------------------------------------------------------------------


def _mask_matching(n: int, mask: int) -> Matching:
    return Matching(n, tuple((v, v ^ mask) for v in range(1 << n) if v < v ^ mask))


def parse_which(which: str | int) -> str:
    """Normalize ``m0|m1|m2|dim:<i>|<i>`` to ``"m0"``, ``"m1"``, ``"m2"`` or ``"dim:<i>"``."""
    if isinstance(which, (int, np.integer)):
        return f"dim:{int(which)}"
    w = which.strip().lower()
    if w in CANONICAL:
        return w
    if w.startswith("dim:"):
        try:
            return f"dim:{int(w[4:])}"
        except ValueError:
            pass
    raise MatchingError(f"unknown matching name {which!r}")


def canonical_matching(n: int, which: str | int) -> Matching:
    """``m0``/``m1``/``m2`` or the dimension-``i`` matching (``dim:i`` or an int)."""
    if n < 2:
        raise DimensionError(f"canonical matchings need n >= 2, got {n}")
    w = parse_which(which)
    if w == "m2":
        return _mask_matching(n, full_mask(n))
    i = {"m1": n, "m0": n - 1}.get(w)
    if i is None:
        i = int(w[4:])
        if not 1 <= i <= n:
            raise DimensionError(f"dimension {i} out of range 1..{n}")
    return _mask_matching(n, 1 << (i - 1))


def split_m0(n: int) -> tuple[Matching, Matching]:
    m0 = canonical_matching(n, "m0")
    top = 1 << (n - 1)
    return (
        Matching(n, tuple(e for e in m0.edges if not e[0] & top)),
        Matching(n, tuple(e for e in m0.edges if e[0] & top)),
    )


def edge_class(n: int, u: int, v: int) -> str:
    """``m00``, ``m11``, ``m1``, ``m2`` or ``other``."""
    x = u ^ v
    if x == full_mask(n):
        return "m2"
    if x == 1 << (n - 1):
        return "m1"
    if x == 1 << (n - 2):
        return "m11" if u >> (n - 1) & 1 else "m00"
    return "other"


class ClassProfile(NamedTuple):
    m00: int
    m11: int
    m1: int
    m2: int
    other: int
    subset_of_union: bool
    equals_canonical: str | None


def matching_class_profile(m: Matching) -> ClassProfile:
    n = m.n
    counts = dict.fromkeys((*CLASSES, "other"), 0)
    for u, v in m.edges:
        counts[edge_class(n, u, v)] += 1
    half = 1 << (n - 1)
    equals = None
    if m.is_perfect:
        if counts["m00"] + counts["m11"] == half:
            equals = "m0"
        elif counts["m1"] == half:
            equals = "m1"
        elif counts["m2"] == half:
            equals = "m2"
    return ClassProfile(**counts, subset_of_union=counts["other"] == 0, equals_canonical=equals)


# --------------------------------------------------------------------------
# validation and removal
# --------------------------------------------------------------------------


class MatchingCheck(NamedTuple):
    ok: bool
    reason: str | None = None  # "non-edge" | "overlap" | "uncovered" | "dimension"
    detail: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def is_perfect_matching(g: CubeGraph, m: Matching) -> MatchingCheck:
    if m.n != g.n:
        return MatchingCheck(False, "dimension", (m.n, g.n))
    for u, v in m.edges:
        if not g.has_edge(u, v):
            return MatchingCheck(False, "non-edge", (u, v))
    seen: set[int] = set()
    for e in m.edges:
        for x in e:
            if x in seen:
                return MatchingCheck(False, "overlap", (x,))
            seen.add(x)
    for x in range(g.num_vertices):
        if x not in seen:
            return MatchingCheck(False, "uncovered", (x,))
    return MatchingCheck(True)


def remove_matching(g: CubeGraph, m: Matching) -> CubeGraph:
    """Residual graph ``g - m``; every edge of ``m`` must belong to ``g``."""
    if m.n != g.n:
        raise MatchingError(f"matching is over n={m.n}, graph over n={g.n}")
    for u, v in m.edges:
        if not g.has_edge(u, v):
            raise MatchingError(f"edge ({u}, {v}) is not in the graph")
    nv = g.num_vertices
    keys = np.asarray([u * nv + v for u, v in m.edges], dtype=np.int64)
    keep = ~np.isin(g.edge_keys, keys)
    return CubeGraph(g.n, Family.RESIDUAL, np.ascontiguousarray(g.edges[keep]), removed=m)


def restore_edges(residual: CubeGraph) -> CubeGraph:
    """Add the removed edges back."""
    if residual.removed is None:
        return residual
    edges = np.concatenate([residual.edges, residual.removed.as_array()])
    return graph_from_edges(residual.n, edges)


def residual_drops_degree_by_one(g: CubeGraph, edges: Matching) -> bool:
    """True iff removing ``edges`` from a regular ``g`` leaves a graph one degree lower, still regular.

    Within a regular host this holds exactly when ``edges`` is a perfect
    matching, which is the degree-counting side of the removal question.
    """
    deg = g.degrees()
    if not np.all(deg == deg[0]):
        raise MatchingError("host graph is not regular")
    r = remove_matching(g, edges).degrees()
    return bool(np.all(r == deg[0] - 1))


# --------------------------------------------------------------------------
# mixed matchings
# --------------------------------------------------------------------------


def _as_label(x: int | str, bits: int) -> int:
    v = from_binary(x, bits) if isinstance(x, str) else int(x)
    if not 0 <= v < 1 << bits:
        raise VertexError(f"label {x!r} out of range for {bits} bits")
    return v


def mixed_from_complement_closed_set(n: int, labels: Iterable[int | str]) -> Matching:
    """Complement edges on the copy-0 vertices listed in ``labels``, top-bit edges elsewhere.

    ``labels`` are ``(n-1)``-bit words closed under complement. Each ``x``
    in the set contributes ``(x,0)-(~x,1)``; each ``y`` outside contributes
    ``(y,0)-(y,1)``.
    """
    if n < 2:
        raise DimensionError(f"needs n >= 2, got {n}")
    low = n - 1
    s = {_as_label(x, low) for x in labels}
    size = 1 << low
    if not s or len(s) == size:
        raise MatchingError("set must be a nonempty proper subset; empty or full gives a canonical matching")
    mask = full_mask(low)
    for x in sorted(s):
        if x ^ mask not in s:
            raise MatchingError(f"set is not complement-closed: {x:0{low}b} present, {x ^ mask:0{low}b} missing")
    top = 1 << low
    edges = [(x, (x ^ mask) | top) if x in s else (x, x | top) for x in range(size)]
    return Matching.from_edges(n, edges)


def complement_closed_sets(n: int) -> Iterator[frozenset[int]]:
    """Every nonempty proper complement-closed set of ``(n-1)``-bit words, in a fixed order."""
    low = n - 1
    mask = full_mask(low)
    reps = [x for x in range(1 << low) if x < x ^ mask]
    for choice in range(1, (1 << len(reps)) - 1):
        yield frozenset(y for i, x in enumerate(reps) if choice >> i & 1 for y in (x, x ^ mask))


def random_complement_closed_set(n: int, rng: np.random.Generator) -> frozenset[int]:
    low = n - 1
    mask = full_mask(low)
    reps = np.array([x for x in range(1 << low) if x < x ^ mask])
    while True:
        pick = rng.random(reps.size) < 0.5
        if 0 < pick.sum() < reps.size:
            chosen = reps[pick]
            return frozenset(int(y) for x in chosen for y in (x, x ^ mask))


@dataclass(frozen=True)
class MixedSpec:
    """Count constraints on ``|M & m00|``, ``|M & m11|``, ``|M & m1|``, ``|M & m2|``."""

    minimum: Mapping[str, int] = field(default_factory=dict)
    exact: Mapping[str, int] = field(default_factory=dict)
    forbid_canonical: bool = True

    def __post_init__(self) -> None:
        for table in (self.minimum, self.exact):
            for k, v in table.items():
                if k not in CLASSES:
                    raise MatchingError(f"unknown class {k!r}; expected one of {CLASSES}")
                if v < 0:
                    raise MatchingError(f"negative count for {k}")

    def _needed(self, counts: Mapping[str, int]) -> int:
        need = 0
        for c in CLASSES:
            target = self.exact.get(c, self.minimum.get(c, 0))
            need += max(target - counts[c], 0)
        return need

    def feasible(self, counts: Mapping[str, int], remaining: int) -> bool:
        if any(counts[c] > v for c, v in self.exact.items()):
            return False
        return self._needed(counts) <= remaining

    def accepts(self, counts: Mapping[str, int], half: int) -> bool:
        if any(counts[c] != v for c, v in self.exact.items()):
            return False
        if any(counts[c] < v for c, v in self.minimum.items()):
            return False
        if self.forbid_canonical and half in (counts["m00"] + counts["m11"], counts["m1"], counts["m2"]):
            return False
        return True


def _union_candidates(n: int, v: int) -> tuple[tuple[int, str], ...]:
    top = 1 << (n - 1)
    return (
        (v ^ (1 << (n - 2)), "m11" if v & top else "m00"),
        (v ^ top, "m1"),
        (v ^ full_mask(n), "m2"),
    )


def iter_mixed_matchings(n: int, spec: MixedSpec) -> Iterator[Matching]:
    """All perfect matchings inside ``m0 | m1 | m2`` satisfying ``spec``.

    Backtracking matches the lowest uncovered vertex first and tries its
    ``m0``, ``m1``, ``m2`` edges in that order, so the output order is fixed.
    """
    if n < 2:
        raise DimensionError(f"needs n >= 2, got {n}")
    size = 1 << n
    half = size >> 1
    covered = bytearray(size)
    counts = dict.fromkeys(CLASSES, 0)
    chosen: list[tuple[int, int, str]] = []
    frames = [[0, 0]]  # [vertex, next candidate index]
    while frames:
        frame = frames[-1]
        v, k = frame
        if k:
            _, w, c = chosen.pop()
            covered[v] = covered[w] = 0
            counts[c] -= 1
        cands = _union_candidates(n, v)
        while k < 3:
            w, c = cands[k]
            k += 1
            if covered[w]:
                continue
            counts[c] += 1
            if spec.feasible(counts, half - len(chosen) - 1):
                break
            counts[c] -= 1
        else:
            frames.pop()
            continue
        frame[1] = k
        covered[v] = covered[w] = 1
        chosen.append((v, w, c))
        if len(chosen) == half:
            if spec.accepts(counts, half):
                yield Matching.from_edges(n, ((a, b) for a, b, _ in chosen))
            continue
        nxt = v + 1
        while covered[nxt]:
            nxt += 1
        frames.append([nxt, 0])


def search_mixed_matching(n: int, spec: MixedSpec) -> Matching | None:
    return next(iter_mixed_matchings(n, spec), None)


# --------------------------------------------------------------------------
# exhaustive enumeration
# --------------------------------------------------------------------------


def enumerate_perfect_matchings(g: CubeGraph, *, reverse: bool = False) -> Iterator[Matching]:
    """Every perfect matching of ``g`` exactly once.

    The lowest uncovered vertex is matched against each free neighbor in
    ascending order, which yields matchings in lexicographic order of their
    sorted edge lists. ``reverse=True`` walks neighbors in descending order
    instead, giving an independent traversal of the same set.
    """
    nv = g.num_vertices
    if nv > MAX_ENUMERATION_VERTICES:
        raise MatchingError(f"exhaustive enumeration is limited to {MAX_ENUMERATION_VERTICES} vertices, graph has {nv}")
    nbrs = [[int(w) for w in g.neighbors(v)] for v in range(nv)]
    if reverse:
        nbrs = [list(reversed(x)) for x in nbrs]
    full = (1 << nv) - 1
    acc: list[tuple[int, int]] = []

    def rec(cov: int) -> Iterator[Matching]:
        if cov == full:
            yield Matching(g.n, tuple(sorted(acc)))
            return
        v = (~cov & (cov + 1)).bit_length() - 1  # lowest zero bit
        for w in nbrs[v]:
            if not cov >> w & 1:
                acc.append((v, w) if v < w else (w, v))
                yield from rec(cov | 1 << v | 1 << w)
                acc.pop()

    yield from rec(0)


def random_perfect_matching(g: CubeGraph, rng: np.random.Generator) -> Matching | None:
    """One perfect matching found by backtracking with shuffled neighbor order."""
    nv = g.num_vertices
    nbrs = [[int(w) for w in g.neighbors(v)] for v in range(nv)]
    covered = bytearray(nv)
    stack: list[tuple[int, list[int]]] = []
    chosen: list[tuple[int, int]] = []
    v = 0
    while True:
        options = [w for w in nbrs[v] if not covered[w]]
        rng.shuffle(options)
        stack.append((v, options))
        while stack:
            u, opts = stack[-1]
            if len(chosen) == len(stack):  # retract the previous choice at this level
                a, b = chosen.pop()
                covered[a] = covered[b] = 0
            if not opts:
                stack.pop()
                continue
            w = opts.pop()
            covered[u] = covered[w] = 1
            chosen.append(canon(u, w))
            break
        else:
            return None
        if 2 * len(chosen) == nv:
            return Matching.from_edges(g.n, chosen)
        v = covered.index(0)
