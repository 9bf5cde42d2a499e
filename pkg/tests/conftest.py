from collections import deque

import pytest
from hypothesis import settings

from foldcube import _kernels

# first calls may pay numba compilation
settings.register_profile("foldcube", deadline=None)
settings.load_profile("foldcube")

KERNEL_PATHS = [
    pytest.param(False, id="numpy"),
    pytest.param(
        True,
        id="numba",
        marks=pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba unavailable or disabled"),
    ),
]


@pytest.fixture(params=KERNEL_PATHS)
def use_numba(request):
    return request.param


def adjacency_sets(g):
    adj = [set() for _ in range(g.num_vertices)]
    for u, v in g.edge_list():
        adj[u].add(v)
        adj[v].add(u)
    return adj


def python_bfs(adj, source):
    """Plain-Python BFS used as an oracle for the array kernels."""
    dist = {source: 0}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return [dist.get(v, -1) for v in range(len(adj))]


def python_eccentricity(adj, source):
    d = python_bfs(adj, source)
    return None if -1 in d else max(d)


# one summary line per acceptance criterion

_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        prev = _ACCEPTANCE.get(name, "passed")
        _ACCEPTANCE[name] = report.outcome if prev == "passed" else prev


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE, key=lambda s: int(s.split("_")[2])):
        verdict = "PASS" if _ACCEPTANCE[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {name}")
