"""Executable invariant and removability suite behind ``foldcube verify``."""

from __future__ import annotations

import itertools
from collections.abc import Callable, Iterator
from typing import NamedTuple

import numpy as np

from foldcube import cube, isomorphism, matchings

MIN_MIXED_DIM = 4


class CheckResult(NamedTuple):
    name: str
    n: int
    status: str  # "pass" | "fail" | "skip"
    detail: str = ""

    def line(self) -> str:
        tail = f": {self.detail}" if self.detail else ""
        return f"{self.status.upper():4} n={self.n} {self.name}{tail}"


def _cube_invariants(n: int) -> str | None:
    q = cube.build_hypercube(n)
    inv = cube.graph_invariants(q)
    if inv != (1 << n, n << (n - 1), n, True, True):
        return f"hypercube invariants {inv}"
    if cube.diameter(q) != n:
        return "hypercube diameter"
    for u in range(q.num_vertices):
        far = np.flatnonzero(cube.bfs_distances(q, u).dist == n)
        if far.tolist() != [cube.complement(u, n)]:
            return f"antipode of {u}: {far.tolist()}"
    return None


def _folded_invariants(n: int) -> str | None:
    fq = cube.build_folded_cube(n)
    deg = fq.degrees()
    if fq.num_edges != (n + 1) << (n - 1) or not np.all(deg == n + 1):
        return f"folded cube has {fq.num_edges} edges, degrees {sorted(set(deg.tolist()))}"
    return None


def _canonical_matchings(n: int) -> str | None:
    fq = cube.build_folded_cube(n)
    half = 1 << (n - 1)
    ms = {w: matchings.canonical_matching(n, w) for w in ("m0", "m1", "m2")}
    for w, m in ms.items():
        if len(m) != half or not matchings.is_perfect_matching(fq, m):
            return f"{w} is not a perfect matching of size {half}"
    m00, m11 = matchings.split_m0(n)
    if len(m00) != half // 2 or len(m11) != half // 2:
        return f"|m00|={len(m00)}, |m11|={len(m11)}"
    for a, b in itertools.combinations(ms, 2):
        if set(ms[a].edges) & set(ms[b].edges):
            return f"{a} and {b} share an edge"
    return None


def _removal_maps(n: int) -> str | None:
    fq = cube.build_folded_cube(n)
    q = cube.build_hypercube(n)
    for w in ("m0", "m1", "m2"):
        f = isomorphism.removal_map(n, w)
        if not f.is_permutation() or f.compose(f) != isomorphism.identity_map(n):
            return f"map for {w} is not an involutive permutation"
        residual = matchings.remove_matching(fq, matchings.canonical_matching(n, w))
        check = isomorphism.verify_isomorphism(q, residual, f)
        if not check:
            return f"removal-map {w}: {check.reason} {check.detail}"
    return None


def _dimension_symmetry(n: int) -> str | None:
    fq = cube.build_folded_cube(n)
    for i in range(1, n + 1):
        residual = matchings.remove_matching(fq, matchings.canonical_matching(n, i))
        rec = isomorphism.recognize_hypercube(residual)
        if not rec or not isomorphism.verify_isomorphism(cube.build_hypercube(n), residual, rec.map):
            return f"FQ_{n} - dim:{i} not recognized"
    return None


def _nonremovable(n: int, ms: list[matchings.Matching], tag: str) -> str | None:
    fq = cube.build_folded_cube(n)
    for m in ms:
        result = isomorphism.classify_removability(n, m, fq)
        cert = result.certificate
        if result.removable or result.tag != tag:
            return f"matching {m.edges[:2]}... classified removable={result.removable} tag={result.tag}"
        if not isinstance(cert, isomorphism.EccentricityDeficit) or not isomorphism.check_certificate(
            result.residual, cert
        ):
            return f"no verified eccentricity deficit for {m.edges[:2]}..."
    return None


def _mixed_without_m0(n: int, count: int = 20) -> str | None:
    sets = list(itertools.islice(matchings.complement_closed_sets(n), count))
    ms = [matchings.mixed_from_complement_closed_set(n, s) for s in sets]
    return _nonremovable(n, ms, "mixed-without-m0")


def _mixed_with_m0(n: int, count: int = 10) -> str | None:
    spec = matchings.MixedSpec(minimum={"m00": 1, "m11": 1, "m1": 1, "m2": 1})
    ms = list(itertools.islice(matchings.iter_mixed_matchings(n, spec), count))
    if len(ms) < count:
        return f"only {len(ms)} witnesses found"
    return _nonremovable(n, ms, "mixed-with-m0")


def _all_removable(n: int) -> str | None:
    fq = cube.build_folded_cube(n)
    for m in matchings.enumerate_perfect_matchings(fq):
        if not isomorphism.classify_removability(n, m, fq).removable:
            return f"{m.edges} is not removable"
    return None


def _exhaustive_union(n: int) -> str | None:
    fq = cube.build_folded_cube(n)
    for m in matchings.enumerate_perfect_matchings(fq):
        result = isomorphism.classify_removability(n, m, fq)
        p = result.profile
        if p.subset_of_union and result.removable != (p.equals_canonical is not None):
            return f"{m.edges}: removable={result.removable}, canonical={p.equals_canonical}"
    return None


Check = Callable[[int], "str | None"]

CHECKS: list[tuple[str, int, int | None, Check]] = [
    # name, smallest n, largest n (None = n_max), check
    ("hypercube-invariants", 2, None, _cube_invariants),
    ("folded-cube-invariants", 2, None, _folded_invariants),
    ("canonical-matchings", 2, None, _canonical_matchings),
    ("removal-maps", 2, None, _removal_maps),
    ("dimension-symmetry", 2, None, _dimension_symmetry),
    ("all-removable-at-3", 3, 3, _all_removable),
    ("mixed-without-m0-nonremovable", MIN_MIXED_DIM, None, _mixed_without_m0),
    ("mixed-with-m0-nonremovable", MIN_MIXED_DIM, None, _mixed_with_m0),
    ("exhaustive-union-at-4", 4, 4, _exhaustive_union),
]


def run_suite(n_max: int) -> Iterator[CheckResult]:
    if not 2 <= n_max <= 8:
        raise cube.DimensionError(f"n-max must lie in [2, 8], got {n_max}")
    for name, lo, hi, fn in CHECKS:
        if n_max < lo:
            yield CheckResult(name, lo, "skip", f"skipped: requires n >= {lo}")
            continue
        for n in range(lo, (hi if hi is not None else n_max) + 1):
            if n > n_max:
                break
            try:
                problem = fn(n)
            except Exception as exc:  # noqa: BLE001 - reported as a failed assertion
                problem = f"{type(exc).__name__}: {exc}"
            yield CheckResult(name, n, "fail" if problem else "pass", problem or "")
