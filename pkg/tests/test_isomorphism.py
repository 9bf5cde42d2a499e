import itertools

import networkx as nx
import numpy as np
import pytest

from foldcube.cube import bfs_distances, build_folded_cube, build_hypercube, graph_from_edges
from foldcube.isomorphism import (
    EccentricityDeficit,
    ExhaustedSearch,
    Isomorphic,
    VertexMap,
    check_certificate,
    classify_removability,
    dimension_removal_map,
    eccentricity_certificate,
    identity_map,
    recognize_hypercube,
    removal_map,
    verify_isomorphism,
)
from foldcube.matchings import (
    Matching,
    MatchingError,
    MixedSpec,
    canonical_matching,
    enumerate_perfect_matchings,
    iter_mixed_matchings,
    mixed_from_complement_closed_set,
    remove_matching,
)

from conftest import adjacency_sets, python_eccentricity


# expected images written out by hand from the coordinate formulas
# m1 at n=2: keep a_2 = 0, on a_2 = 1 flip a_1
M1_N2 = [0b00, 0b01, 0b11, 0b10]
# m0 at n=3: keep a_2 = 0, on a_2 = 1 flip a_1 and a_3
M0_N3 = [0b000, 0b001, 0b111, 0b110, 0b100, 0b101, 0b011, 0b010]


def test_removal_map_tables():
    assert removal_map(2, "m1").image.tolist() == M1_N2
    assert removal_map(3, "m0").image.tolist() == M0_N3
    # (a_1..a_4) = (0,0,1,0) -> (1,1,1,1)
    assert removal_map(4, "m0")(0b0100) == 0b1111
    for n in range(2, 7):
        assert removal_map(n, "m2") == identity_map(n)


def test_removal_map_matches_coordinate_formula():
    # direct transcription of the coordinate formulas over bit tuples
    for n in range(2, 8):
        for v in range(2**n):
            a = [(v >> i) & 1 for i in range(n)]  # a[0] = a_1
            if a[n - 1]:
                b = [1 - x for x in a[: n - 1]] + [1]
            else:
                b = a
            assert removal_map(n, "m1")(v) == sum(x << i for i, x in enumerate(b))
            if a[n - 2]:
                c = [1 - x for x in a[: n - 2]] + [1, 1 - a[n - 1]]
            else:
                c = a
            assert removal_map(n, "m0")(v) == sum(x << i for i, x in enumerate(c))


@pytest.mark.parametrize("n", range(2, 9))
@pytest.mark.parametrize("which", ["m0", "m1", "m2"])
def test_removal_maps_are_isomorphisms(n, which):
    residual = remove_matching(build_folded_cube(n), canonical_matching(n, which))
    f = removal_map(n, which)
    assert verify_isomorphism(build_hypercube(n), residual, f)
    assert f.is_permutation() and f.compose(f) == identity_map(n)


@pytest.mark.parametrize("n", range(2, 8))
def test_dimension_maps(n):
    fq = build_folded_cube(n)
    q = build_hypercube(n)
    for i in range(1, n + 1):
        assert verify_isomorphism(q, remove_matching(fq, canonical_matching(n, i)), dimension_removal_map(n, i))


def test_identity_fails_on_m1_residual():
    residual = remove_matching(build_folded_cube(4), canonical_matching(4, "m1"))
    check = verify_isomorphism(build_hypercube(4), residual, identity_map(4))
    assert not check and check.reason == "edge"
    u, v = check.detail
    assert u ^ v == 0b1000  # a top-bit edge, removed from the residual
    assert check.detail == (0, 8)


def test_verify_isomorphism_failures():
    q = build_hypercube(3)
    bad = VertexMap(3, np.array([0, 0, 2, 3, 4, 5, 6, 7]))
    assert verify_isomorphism(q, q, bad).reason == "not-bijective"
    assert verify_isomorphism(q, build_hypercube(4), identity_map(3)).reason == "size"
    assert verify_isomorphism(q, build_folded_cube(3), identity_map(3)).reason == "edge-count"


@pytest.mark.parametrize("n", range(1, 11))
def test_recognize_hypercube_self(n):
    q = build_hypercube(n)
    rec = recognize_hypercube(q)
    assert rec.ok
    assert verify_isomorphism(q, q, rec.map)


def test_recognize_relabelled_hypercube():
    rng = np.random.default_rng(3)
    q = build_hypercube(5)
    perm = rng.permutation(32)
    shuffled = graph_from_edges(5, [(perm[u], perm[v]) for u, v in q.edge_list()])
    rec = recognize_hypercube(shuffled)
    assert rec.ok and verify_isomorphism(q, shuffled, rec.map)


def test_recognize_fq3_residuals():
    fq = build_folded_cube(3)
    ms = list(enumerate_perfect_matchings(fq))
    assert len(ms) == 24
    for m in ms:
        residual = remove_matching(fq, m)
        rec = recognize_hypercube(residual)
        assert rec.ok and verify_isomorphism(build_hypercube(3), residual, rec.map)


def test_recognize_rejects_mixed_residual():
    residual = remove_matching(build_folded_cube(4), mixed_from_complement_closed_set(4, ["000", "111"]))
    rec = recognize_hypercube(residual)
    assert not rec.ok and rec.map is None


def test_recognize_failure_steps():
    path = graph_from_edges(2, [(0, 1), (1, 3), (3, 2)])
    assert recognize_hypercube(path).reason == "regularity"
    two_k4 = graph_from_edges(
        3, list(itertools.combinations(range(4), 2)) + list(itertools.combinations(range(4, 8), 2))
    )
    assert recognize_hypercube(two_k4).reason == "connectivity"
    mixed = remove_matching(build_folded_cube(4), mixed_from_complement_closed_set(4, ["000", "111"]))
    assert recognize_hypercube(mixed).reason == "bipartiteness"


@pytest.mark.parametrize("offsets", [(1, 3), (1, 5), (1, 7), (3, 5), (3, 7)])
def test_recognize_rejects_bipartite_circulants(offsets):
    # 4-regular, bipartite, connected on 16 vertices, yet not Q_4 (VF2 agrees)
    g = graph_from_edges(4, [(i, (i + d) % 16) for i in range(16) for d in offsets])
    rec = recognize_hypercube(g)
    assert not rec.ok and rec.step in (3, 4)
    assert not nx.is_isomorphic(nx.Graph(build_hypercube(4).edge_list()), nx.Graph(g.edge_list()))


def test_recognition_agrees_with_vf2_on_all_fq4_residuals():
    fq = build_folded_cube(4)
    q = nx.Graph(build_hypercube(4).edge_list())
    for m in enumerate_perfect_matchings(fq):
        residual = remove_matching(fq, m)
        assert recognize_hypercube(residual).ok == nx.is_isomorphic(q, nx.Graph(residual.edge_list()))


def test_eccentricity_certificate_examples():
    for n in range(2, 9):
        assert eccentricity_certificate(build_hypercube(n)) is None
    assert eccentricity_certificate(remove_matching(build_folded_cube(4), canonical_matching(4, "m2"))) is None

    residual = remove_matching(build_folded_cube(4), mixed_from_complement_closed_set(4, ["000", "111"]))
    cert = eccentricity_certificate(residual, 4)
    assert cert == EccentricityDeficit(0, 3)
    adj = adjacency_sets(residual)
    # vertex (001,0) keeps its complement edge and also sees everything within 3 hops
    assert residual.has_edge(0b0001, 0b1110)
    assert python_eccentricity(adj, 0b0001) == 3
    assert check_certificate(residual, cert)


def test_figure_configuration():
    """A mixed matching using u-z, keeping u-u^c, v-v^h, v-y and u-u^h."""
    u, v, z, y = 0b0000, 0b0001, 0b0100, 0b0101
    uc, vh, uh = 0b1111, 0b1001, 0b1000
    spec = MixedSpec(minimum={"m00": 1, "m11": 1})
    keep = {(u, uc), (v, vh), (v, y), (u, uh)}
    m = next(m for m in iter_mixed_matchings(4, spec) if (u, z) in m.edges and not keep & set(m.edges))
    residual = remove_matching(build_folded_cube(4), m)
    dist = bfs_distances(residual, u).dist
    assert dist.max() == 3
    assert dist[z] == 3  # reached along u - v - y - z
    assert all(residual.has_edge(a, b) for a, b in [(u, v), (v, y), (y, z)])


def test_classify_examples():
    result = classify_removability(4, canonical_matching(4, "m0"))
    assert result.removable and result.tag == "canonical"
    assert isinstance(result.certificate, Isomorphic)
    assert check_certificate(result.residual, result.certificate)

    result = classify_removability(4, mixed_from_complement_closed_set(4, ["000", "111"]))
    assert not result.removable and result.tag == "mixed-without-m0"
    assert isinstance(result.certificate, EccentricityDeficit)
    assert check_certificate(result.residual, result.certificate)


def test_classify_all_fq3_removable():
    fq = build_folded_cube(3)
    for m in enumerate_perfect_matchings(fq):
        r = classify_removability(3, m, fq)
        assert r.removable and check_certificate(r.residual, r.certificate)


def test_classify_rejects_non_perfect():
    with pytest.raises(MatchingError):
        classify_removability(4, Matching(4, ((0, 1),)))


def test_exhausted_search_certificate_check():
    # a certificate claiming "no deficit, recognition failed" re-checks both facts
    q = build_hypercube(4)
    assert not check_certificate(q, ExhaustedSearch("x"))
