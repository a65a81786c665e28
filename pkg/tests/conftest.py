import random

import pytest
from hypothesis import strategies as st

from wanplan.dataset import bundled_dataset, bundled_path
from wanplan.routing import Edge, build_topology

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def dataset():
    return bundled_dataset()


@pytest.fixture(scope="session")
def bundled_dir():
    return str(bundled_path())


def random_connected_topology(rng: random.Random, n_nodes: int, extra_edges: int, max_weight: int = 100):
    nodes = [f"n{i:02d}" for i in range(n_nodes)]
    pairs = set()
    edges = []
    shuffled = nodes[:]
    rng.shuffle(shuffled)
    for i in range(1, n_nodes):
        a, b = shuffled[i], shuffled[rng.randrange(i)]
        pairs.add(frozenset((a, b)))
        edges.append(Edge(a, b, rng.randint(1, max_weight)))
    for _ in range(extra_edges):
        a, b = rng.sample(nodes, 2) if n_nodes > 1 else (None, None)
        if a is None or frozenset((a, b)) in pairs:
            continue
        pairs.add(frozenset((a, b)))
        edges.append(Edge(a, b, rng.randint(1, max_weight)))
    return build_topology(nodes, edges)


@st.composite
def connected_topologies(draw, max_nodes=10, max_weight=100):
    n = draw(st.integers(min_value=1, max_value=max_nodes))
    extra = draw(st.integers(min_value=0, max_value=2 * n))
    seed = draw(st.integers(min_value=0, max_value=2**32 - 1))
    return random_connected_topology(random.Random(seed), n, extra, max_weight)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
