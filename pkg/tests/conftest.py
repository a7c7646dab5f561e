import networkx as nx
import numpy as np
import pytest

from osgraph import graph as gc


def atlas(max_n, connected=False, min_n=1):
    """All graphs on min_n..max_n vertices up to isomorphism (networkx atlas order)."""
    out = []
    for a in nx.graph_atlas_g()[1:]:
        n = a.number_of_nodes()
        if n > max_n:
            break
        if n < min_n or (connected and not nx.is_connected(a)):
            continue
        out.append(gc.from_edge_list(n, [(u + 1, v + 1) for u, v in a.edges()]))
    return out


def random_graph(n, rng, p=0.5):
    pairs = [(i + 1, j + 1) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return gc.from_edge_list(n, pairs)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


ACCEPTANCE_LINES = []


def record(criterion, passed, detail):
    line = f"[{'PASS' if passed else 'FAIL'}] criterion {criterion}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return passed


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
