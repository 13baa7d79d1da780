import itertools
import random

import pytest

from burling.graph import Graph


def brute_force_colorable(g: Graph, q: int) -> bool:
    """Enumerate every assignment of q colors; only for tiny graphs."""
    for colors in itertools.product(range(q), repeat=g.n):
        if all(colors[u] != colors[v] for u, v in g.edges):
            return True
    return g.n == 0


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
