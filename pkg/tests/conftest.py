from __future__ import annotations

import itertools

import pytest
from hypothesis import strategies as st

from oretree.graph import Graph


def all_connected_graphs(n: int):
    """Every connected labeled graph on ``n`` vertices."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        g = Graph.from_edges(n, edges)
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v in g.adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        if len(seen) == n:
            yield g


@st.composite
def connected_graphs(draw, min_n: int = 1, max_n: int = 8):
    n = draw(st.integers(min_n, max_n))
    # random recursive tree skeleton keeps every draw connected
    edges = {(draw(st.integers(0, v - 1)), v) for v in range(1, n)}
    pairs = list(itertools.combinations(range(n), 2))
    extra = draw(st.lists(st.sampled_from(pairs), max_size=len(pairs))) if pairs else []
    return Graph.from_edges(n, sorted(edges | set(extra)))


@st.composite
def random_trees(draw, min_n: int = 1, max_n: int = 40):
    """(host graph, tree edges) where the host is the tree plus random chords."""
    n = draw(st.integers(min_n, max_n))
    tree = [(draw(st.integers(0, v - 1)), v) for v in range(1, n)]
    perm = draw(st.permutations(range(n)))
    tree = [(perm[u], perm[v]) for u, v in tree]
    pairs = list(itertools.combinations(range(n), 2))
    extra = draw(st.lists(st.sampled_from(pairs), max_size=10)) if pairs else []
    return Graph.from_edges(n, tree + extra), tree


@pytest.fixture
def k35():
    from oretree.instances import complete_bipartite

    return complete_bipartite(3, 5)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
