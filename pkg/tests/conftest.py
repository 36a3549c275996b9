import random

import pytest

from quboreduce import Graph, QuboMatrix, complement, max_clique_qubo

# Six-vertex demo instance used across the suite.  The clique penalty couples
# every non-edge with weight 3; factoring the (1, 4) pair with its three
# shared neighbors {0, 2, 5} onto ancilla 6 drops the coupling count 9 -> 8.
DEMO_NON_EDGES = [(0, 1), (0, 4), (1, 2), (1, 4), (1, 5), (2, 3), (2, 4), (3, 5), (4, 5)]
DEMO_EDGES = [(0, 2), (0, 3), (0, 5), (1, 3), (2, 5), (3, 4)]

DEMO_FACTORED_ENTRIES = {
    (0, 0): -1, (1, 1): 2, (2, 2): -1, (3, 3): -1, (4, 4): 2, (5, 5): -1, (6, 6): 3,
    (0, 6): 3, (1, 4): 9, (1, 6): -6, (2, 3): 3, (2, 6): 3, (3, 5): 3, (4, 6): -6, (5, 6): 3,
}


@pytest.fixture
def demo_graph():
    return Graph(6, frozenset(DEMO_EDGES))


@pytest.fixture
def demo_qubo(demo_graph):
    return max_clique_qubo(demo_graph, 3)


@pytest.fixture
def demo_factored():
    return QuboMatrix(7, DEMO_FACTORED_ENTRIES)


def random_qubo(rng: random.Random, n: int, density: float = 0.5, lo: int = -5, hi: int = 5) -> QuboMatrix:
    """Random integer QUBO with roughly `density` of all upper-triangular
    cells populated."""
    q = QuboMatrix(n)
    for i in range(n):
        for j in range(i, n):
            if rng.random() < density:
                q[i, j] = rng.randint(lo, hi)
    return q
