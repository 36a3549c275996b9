"""QUBO encoders for five graph optimization problems.

Each encoder emits an integer-valued :class:`QuboMatrix` when the penalty
weight is an integer.  Double sums over variable pairs are taken over
unordered distinct pairs, each counted once, matching the upper-triangular
storage convention.

Structured variables (vertex, position) or (vertex, color) are flattened
row-major; the :class:`VariableLayout` helpers expose the index mapping.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph, all_pairs, complement
from .qubo import ParameterError, QuboMatrix


@dataclass(frozen=True)
class VariableLayout:
    """Row-major flattening of structured binary variables onto qubits."""

    kind: str
    rows: int
    cols: int = 1

    @property
    def n(self) -> int:
        return self.rows * self.cols

    def index(self, i: int, j: int = 0) -> int:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise ParameterError(f"variable ({i}, {j}) outside {self.rows}x{self.cols} layout")
        return i * self.cols + j

    def unindex(self, m: int) -> tuple[int, int]:
        if not 0 <= m < self.n:
            raise ParameterError(f"qubit {m} outside layout of size {self.n}")
        return divmod(m, self.cols)


def _check_penalty(a) -> None:
    if not a > 0:
        raise ParameterError(f"penalty weight must be positive, got {a}")


def max_clique_layout(g: Graph) -> VariableLayout:
    return VariableLayout("max_clique", g.v)


def max_clique_qubo(g: Graph, a=3) -> QuboMatrix:
    """Reward -1 per selected vertex; penalty ``a`` per selected non-edge."""
    _check_penalty(a)
    q = QuboMatrix(g.v)
    for i in range(g.v):
        q[i, i] = -1
    for i, j in complement(g).sorted_edges():
        q[i, j] = a
    return q


def hamilton_cycle_layout(g: Graph) -> VariableLayout:
    return VariableLayout("hamilton_cycles", g.v, g.v)


def _positions_adjacent(j: int, l: int, v: int) -> bool:
    # Cyclic adjacency of tour positions, including the (v-1, 0) wrap.
    d = abs(j - l)
    return d == 1 or d == v - 1


def hamilton_cycle_qubo(g: Graph, a=3) -> QuboMatrix:
    """Variables x[vertex, position]; penalties forbid reuse of a vertex or
    position and consecutive tour positions without a connecting edge."""
    _check_penalty(a)
    if g.v < 3:
        raise ParameterError(f"cycle encoding needs at least 3 vertices, got {g.v}")
    layout = hamilton_cycle_layout(g)
    q = QuboMatrix(layout.n)
    for m in range(layout.n):
        q[m, m] = -1
    for m1 in range(layout.n):
        i, j = layout.unindex(m1)
        for m2 in range(m1 + 1, layout.n):
            k, l = layout.unindex(m2)
            violates = (
                i == k
                or j == l
                or (i != k and _positions_adjacent(j, l, g.v) and not g.has_edge(i, k))
            )
            if violates:
                q[m1, m2] = a
    return q


def graph_coloring_layout(g: Graph, k: int) -> VariableLayout:
    return VariableLayout("graph_coloring", g.v, k)


def graph_coloring_qubo(g: Graph, k: int, a=3) -> QuboMatrix:
    """Variables x[vertex, color]; penalties forbid two colors on one vertex
    and equal colors on adjacent vertices."""
    _check_penalty(a)
    if k < 1:
        raise ParameterError(f"color count must be positive, got {k}")
    layout = graph_coloring_layout(g, k)
    q = QuboMatrix(layout.n)
    for m in range(layout.n):
        q[m, m] = -1
    for m1 in range(layout.n):
        i, k1 = layout.unindex(m1)
        for m2 in range(m1 + 1, layout.n):
            j, k2 = layout.unindex(m2)
            if i == j or (k1 == k2 and g.has_edge(i, j)):
                q[m1, m2] = a
    return q


def vertex_cover_layout(g: Graph) -> VariableLayout:
    return VariableLayout("vertex_cover", g.v)


def vertex_cover_qubo(g: Graph, a=3) -> QuboMatrix:
    """Expansion of a*(1-x_u)(1-x_v) per edge plus +1 per selected vertex.

    The constant from the product expansion lands in the offset: a*|E|.
    """
    _check_penalty(a)
    q = QuboMatrix(g.v, offset=a * len(g.edges))
    for v in range(g.v):
        q[v, v] = 1 - a * g.degree(v)
    for i, j in g.sorted_edges():
        q[i, j] = a
    return q


def graph_isomorphism_layout(g1: Graph) -> VariableLayout:
    return VariableLayout("graph_isomorphism", g1.v, g1.v)


def graph_isomorphism_qubo(g1: Graph, g2: Graph, a=3) -> QuboMatrix:
    """Variables x[i, j] mapping vertex i of the first graph to vertex j of the
    second; penalties enforce a bijection and matching edge structure.

    The mapping constraint is one image per source vertex (i1 == i2) together
    with injectivity (j1 == j2).
    """
    _check_penalty(a)
    if g1.v != g2.v:
        raise ParameterError(f"vertex counts differ: {g1.v} != {g2.v}")
    layout = graph_isomorphism_layout(g1)
    q = QuboMatrix(layout.n)
    for m in range(layout.n):
        q[m, m] = -1
    for m1 in range(layout.n):
        i1, j1 = layout.unindex(m1)
        for m2 in range(m1 + 1, layout.n):
            i2, j2 = layout.unindex(m2)
            e1 = g1.has_edge(i1, i2) if i1 != i2 else False
            e2 = g2.has_edge(j1, j2) if j1 != j2 else False
            violates = (
                i1 == i2
                or j1 == j2
                or (e1 and not e2 and j1 != j2)
                or (not e1 and e2 and i1 != i2)
            )
            if violates:
                q[m1, m2] = a
    return q
