"""Shared fixtures: graph builders and the worked-example instances."""
from __future__ import annotations

import random

import pytest
from hypothesis import strategies as st

from hamsolve.graph import Graph


def g1(n: int, d: dict[int, list[int]]) -> Graph:
    """Graph from a 1-based adjacency dict, as the fixtures are written."""
    lists = [[w - 1 for w in d.get(v, [])] for v in range(1, n + 1)]
    return Graph.from_adjacency_lists(n, lists)


def e1(edges) -> set[tuple[int, int]]:
    """0-based edge collection -> 1-based edge set."""
    return {(a + 1, b + 1) for a, b in edges}


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    g = Graph(n)
    for x in range(n):
        for y in range(n):
            if x != y and rng.random() < p:
                g.add_edge(x, y)
    return g


def directed_cycle(n: int) -> Graph:
    g = Graph(n)
    for v in range(n):
        g.add_edge(v, (v + 1) % n)
    return g


def complete_digraph(n: int) -> Graph:
    g = Graph(n)
    for x in range(n):
        for y in range(n):
            if x != y:
                g.add_edge(x, y)
    return g


@st.composite
def digraphs(draw, min_n: int = 1, max_n: int = 8) -> Graph:
    n = draw(st.integers(min_n, max_n))
    lists = []
    for v in range(n):
        mask = draw(st.integers(0, (1 << n) - 1)) & ~(1 << v)
        lists.append([w for w in range(n) if mask >> w & 1])
    return Graph.from_adjacency_lists(n, lists)


# Worked-example instances, 1-based as printed.

@pytest.fixture
def unique_basic_4() -> Graph:
    return g1(4, {1: [3, 4], 2: [3, 4], 3: [2, 4], 4: [1, 3]})


@pytest.fixture
def unique_basic_8() -> Graph:
    return g1(8, {1: [4, 8], 2: [1, 3, 5, 7], 3: [4, 5, 6], 4: [1, 3, 7],
                  5: [1, 4, 8], 6: [1, 3, 4, 5], 7: [3, 5], 8: [5, 7]})


@pytest.fixture
def additions_7() -> Graph:
    return g1(7, {1: [5, 6, 7], 2: [1, 4], 3: [2, 5, 7], 4: [2, 5, 6],
                  5: [2, 7], 6: [3, 2, 5], 7: [1, 4, 5]})


@pytest.fixture
def addition_table_8() -> Graph:
    return g1(8, {1: [2, 5, 6, 7], 2: [3, 5, 7], 3: [2, 5, 7], 4: [1, 2, 7, 8],
                  5: [2, 4, 7, 8], 6: [3, 4, 5, 7, 8], 7: [2, 5, 8], 8: [1, 3, 5]})


@pytest.fixture
def combinations_14() -> Graph:
    return g1(14, {1: [9, 12], 2: [1, 5, 12, 13], 3: [4, 12], 4: [6, 9, 10, 12],
                   5: [1, 4, 7, 8], 6: [4, 5, 7, 9, 10, 12], 7: [2, 6, 11, 12, 14],
                   8: [4, 7, 10], 9: [4, 6, 13, 14], 10: [3, 4, 8, 11, 14],
                   11: [3, 4, 6, 10], 12: [3, 5, 6, 7], 13: [3, 5, 8, 11, 14],
                   14: [3, 5, 7]})


@pytest.fixture
def single_direction_4() -> Graph:
    return g1(4, {1: [2, 3, 4], 2: [3], 3: [2, 4], 4: [1]})


@pytest.fixture
def deficiency_5() -> Graph:
    return g1(5, {1: [4, 5], 2: [4, 5], 3: [4, 5], 4: [1, 2], 5: [1, 3]})


def clone_set_instance(center_lists: dict[int, tuple[int, ...]], n: int) -> Graph:
    """Embed symmetric-list vertices in a graph of n vertices.

    ``center_lists`` maps each clone vertex (1-based) to its symmetric
    neighbour set.  Every vertex not used as a clone is wired into a
    complete symmetric blob with the targets so only the clone structure
    is degenerate.
    """
    g = Graph(n)
    clones = set(center_lists)
    targets = {t for ts in center_lists.values() for t in ts}
    for x, ts in center_lists.items():
        for t in ts:
            g.add_edge(x - 1, t - 1)
            g.add_edge(t - 1, x - 1)
    blob = sorted(targets | (set(range(1, n + 1)) - clones - targets))
    for a in blob:
        for b in blob:
            if a != b and not g.has_edge(a - 1, b - 1):
                g.add_edge(a - 1, b - 1)
    return g
