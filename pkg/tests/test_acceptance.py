"""Exit criteria for the package, one test per criterion.

Run with ``pytest tests/test_acceptance.py -v``; the terminal summary
prints a PASS/FAIL line per criterion.
"""

import itertools
import time

import numpy as np
import pytest

from foldcube import _kernels
from foldcube.cube import build_folded_cube, build_hypercube, complement, diameter, bfs_distances, graph_invariants
from foldcube.isomorphism import (
    EccentricityDeficit,
    check_certificate,
    classify_removability,
    eccentricity_certificate,
    identity_map,
    recognize_hypercube,
    removal_map,
    verify_isomorphism,
)
from foldcube.matchings import (
    Matching,
    MixedSpec,
    canonical_matching,
    complement_closed_sets,
    enumerate_perfect_matchings,
    is_perfect_matching,
    iter_mixed_matchings,
    mixed_from_complement_closed_set,
    random_complement_closed_set,
    random_perfect_matching,
    remove_matching,
    split_m0,
)
from foldcube.permanent import perfect_matching_count, perfect_matching_count_by_cover

from conftest import adjacency_sets, python_eccentricity

KERNELS = [False] + ([True] if _kernels.HAVE_NUMBA else [])


@pytest.fixture(scope="module", autouse=True)
def _warm_kernels():
    # keep one-off JIT compilation out of the timed criteria
    g = build_hypercube(3)
    for flag in KERNELS:
        _kernels.first_deficit(g.indptr, g.indices, 2, use_numba=flag)
        _kernels.all_eccentricities(g.indptr, g.indices, use_numba=flag)
        _kernels.bfs(g.indptr, g.indices, 0, use_numba=flag)
        _kernels.permanent(np.ones((2, 2)), use_numba=flag)


def _report(k, text):
    print(f"[criterion {k}] {text}")


def test_criterion_1_removal_maps_up_to_10():
    start = time.perf_counter()
    for n in range(2, 11):
        q = build_hypercube(n)
        fq = build_folded_cube(n)
        for which in ("m0", "m1", "m2"):
            residual = remove_matching(fq, canonical_matching(n, which))
            check = verify_isomorphism(q, residual, removal_map(n, which))
            assert check, (n, which, check)
    elapsed = time.perf_counter() - start
    _report(1, f"27 explicit maps verified in {elapsed:.2f}s")
    assert elapsed < 10.0


def test_criterion_2_conjecture_counterexample():
    start = time.perf_counter()
    n = 4
    fq = build_folded_cube(n)
    m = mixed_from_complement_closed_set(n, ["000", "111"])
    assert len(m) == 8 == 2 ** (n - 1)
    assert is_perfect_matching(fq, m)
    residual = remove_matching(fq, m)
    assert not recognize_hypercube(residual).ok
    cert = eccentricity_certificate(residual, n)
    assert cert is not None and cert.eccentricity == 3 < n
    # independent recheck with a plain-Python BFS
    assert python_eccentricity(adjacency_sets(residual), cert.vertex) == 3
    elapsed = time.perf_counter() - start
    _report(2, f"S={{000,111}}: vertex {cert.vertex:04b} has eccentricity 3 ({elapsed:.3f}s)")
    assert elapsed < 1.0


def _distinct_sets(n, count, seed):
    available = 2 ** (2 ** (n - 2)) - 2
    if available <= count:
        return list(complement_closed_sets(n))
    rng = np.random.default_rng(seed)
    seen = {}
    while len(seen) < count:
        s = random_complement_closed_set(n, rng)
        seen.setdefault(s, s)
    return list(seen)


def _assert_nonremovable_with_deficit(n, m, fq):
    result = classify_removability(n, m, fq)
    assert not result.removable
    cert = result.certificate
    assert isinstance(cert, EccentricityDeficit) and cert.eccentricity <= n - 1
    assert check_certificate(result.residual, cert)
    assert python_eccentricity(adjacency_sets(result.residual), cert.vertex) == cert.eccentricity
    return result


def test_criterion_3_mixed_sweep_4_to_8():
    start = time.perf_counter()
    case2 = MixedSpec(minimum={"m00": 1, "m11": 1, "m1": 1, "m2": 1})
    for n in range(4, 9):
        fq = build_folded_cube(n)
        sets = _distinct_sets(n, 100, seed=n)
        for s in sets:
            r = _assert_nonremovable_with_deficit(n, mixed_from_complement_closed_set(n, s), fq)
            assert r.tag == "mixed-without-m0"
        witnesses = list(itertools.islice(iter_mixed_matchings(n, case2), 25))
        assert len(witnesses) == 25 and len({w.edges for w in witnesses}) == 25
        for m in witnesses:
            r = _assert_nonremovable_with_deficit(n, m, fq)
            assert r.tag == "mixed-with-m0"
        _report(3, f"n={n}: {len(sets)} complement-closed sets + 25 search witnesses, all non-removable")
    elapsed = time.perf_counter() - start
    _report(3, f"sweep finished in {elapsed:.2f}s")
    assert elapsed < 120.0


def test_criterion_4_exhaustive_n4():
    start = time.perf_counter()
    n = 4
    fq = build_folded_cube(n)
    forward = list(enumerate_perfect_matchings(fq))
    backward = list(enumerate_perfect_matchings(fq, reverse=True))
    assert {m.edges for m in forward} == {m.edges for m in backward}
    assert len(forward) == len(backward) == perfect_matching_count_by_cover(fq)

    removable_union, outside = [], {"removable": 0, "non_removable": 0}
    for m in forward:
        r = classify_removability(n, m, fq)
        assert check_certificate(r.residual, r.certificate)
        if r.profile.subset_of_union:
            if r.removable:
                removable_union.append(m.edges)
            else:
                assert r.profile.equals_canonical is None
        else:
            outside["removable" if r.removable else "non_removable"] += 1
    canon = sorted(canonical_matching(n, w).edges for w in ("m0", "m1", "m2"))
    assert sorted(removable_union) == canon
    elapsed = time.perf_counter() - start
    _report(
        4,
        f"{len(forward)} perfect matchings; union: 3 removable (canonical); "
        f"outside union: {outside['removable']} removable, {outside['non_removable']} non-removable ({elapsed:.2f}s)",
    )
    assert elapsed < 300.0


def test_criterion_5_n3_all_removable():
    start = time.perf_counter()
    fq = build_folded_cube(3)
    ms = list(enumerate_perfect_matchings(fq))
    assert len(ms) == 24
    for flag in KERNELS:
        assert perfect_matching_count(fq, use_numba=flag) == 24
    for m in ms:
        r = classify_removability(3, m, fq)
        assert r.removable and check_certificate(r.residual, r.certificate)
    elapsed = time.perf_counter() - start
    _report(5, f"24/24 removable at n=3 ({elapsed:.3f}s)")
    assert elapsed < 1.0


def test_criterion_6_counting_oracles():
    cases = [
        ("K4", build_folded_cube(2), 3),
        ("Q3", build_hypercube(3), 9),
        ("Q4", build_hypercube(4), 272),
        ("FQ3", build_folded_cube(3), 24),
    ]
    for name, g, expected in cases:
        enumerated = sum(1 for _ in enumerate_perfect_matchings(g))
        assert enumerated == expected
        if graph_invariants(g).bipartite:
            for flag in KERNELS:
                assert perfect_matching_count(g, use_numba=flag) == expected
        assert perfect_matching_count_by_cover(g) == expected
        _report(6, f"{name}: {expected}")


def test_criterion_7_invariants_2_to_8():
    for n in range(2, 9):
        q = build_hypercube(n)
        assert diameter(q) == n
        for u in range(q.num_vertices):
            far = np.flatnonzero(bfs_distances(q, u).dist == n)
            assert far.tolist() == [complement(u, n)]
        fq = build_folded_cube(n)
        assert fq.num_edges == (n + 1) * 2 ** (n - 1)
        assert np.all(fq.degrees() == n + 1)
        assert len(canonical_matching(n, "m1")) == len(canonical_matching(n, "m2")) == 2 ** (n - 1)
        m00, m11 = split_m0(n)
        assert len(m00) == len(m11) == 2 ** (n - 2)
        for which in ("m0", "m1", "m2"):
            f = removal_map(n, which)
            assert f.is_permutation() and f.compose(f) == identity_map(n)
    _report(7, "n=2..8 invariants hold")


def _regular_iff_perfect(fq, subset, n):
    m = Matching.from_edges(n, subset)
    residual = remove_matching(fq, m)
    regular = graph_invariants(residual).degree == n
    perfect = bool(is_perfect_matching(fq, m))
    assert regular == perfect, subset
    return perfect


def test_criterion_8_degree_argument():
    n = 4
    fq = build_folded_cube(n)
    edges = fq.edge_list()
    rng = np.random.default_rng(8)

    # subsets with 2**n - 1 edges
    for _ in range(1000):
        idx = rng.choice(len(edges), size=2**n - 1, replace=False)
        assert not _regular_iff_perfect(fq, [edges[i] for i in idx], n)

    # subsets with 2**(n-1) edges, half of them perturbed perfect matchings
    positives = 0
    for trial in range(1000):
        if trial % 2:
            idx = rng.choice(len(edges), size=2 ** (n - 1), replace=False)
            subset = [edges[i] for i in idx]
        else:
            base = list(random_perfect_matching(fq, rng).edges)
            for _ in range(int(rng.integers(0, 3))):
                base[int(rng.integers(len(base)))] = edges[int(rng.integers(len(edges)))]
            subset = base
        if len(set(subset)) != len(subset):
            continue
        positives += _regular_iff_perfect(fq, subset, n)
    assert positives > 100
    _report(8, f"2000 subsets checked, {positives} perfect matchings among them")
