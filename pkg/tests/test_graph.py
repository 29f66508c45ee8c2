from __future__ import annotations

import itertools
import logging

import networkx as nx
import pytest
from hypothesis import given

from oretree.graph import (
    INFINITY,
    Graph,
    GraphParseError,
    is_connected,
    ore_profile,
    parse_graph,
    serialize_graph,
    sigma2,
)
from oretree.instances import complete, complete_bipartite, path, spider

from .conftest import connected_graphs


def brute_sigma2(n, edges):
    es = {frozenset(e) for e in edges}
    deg = [sum(1 for e in es if v in e) for v in range(n)]
    sums = [deg[u] + deg[v] for u, v in itertools.combinations(range(n), 2) if frozenset((u, v)) not in es]
    return min(sums) if sums else INFINITY


def test_parse_path():
    g = parse_graph("4 3\n0 1\n1 2\n2 3")
    assert g == path(4)
    assert g.edges() == [(0, 1), (1, 2), (2, 3)]


def test_parse_loop_reports_line():
    with pytest.raises(GraphParseError, match="loop") as exc:
        parse_graph("2 1\n0 0")
    assert exc.value.line == 2


def test_parse_k35():
    text = "8 15\n" + "".join(f"{a} {b}\n" for a in range(3) for b in range(3, 8))
    assert parse_graph(text) == complete_bipartite(3, 5)


@pytest.mark.parametrize(
    "text, line",
    [
        ("3 1\n0 5\n", 2),
        ("3 2\n0 1\n1 x\n", 3),
        ("3 2\n0 1\n", 1),
        ("3 1\n0 1\n1 2\n", 3),
        ("3\n", 1),
        ("3 1\n0 1 2\n", 2),
        ("", 1),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(GraphParseError) as exc:
        parse_graph(text)
    assert exc.value.line == line


def test_duplicates_collapsed_with_warning(caplog):
    with caplog.at_level(logging.WARNING):
        g = parse_graph("3 3\n0 1\n1 0\n1 2\n")
    assert g.m == 2
    assert "1 duplicate" in caplog.text


def test_is_connected():
    assert is_connected(path(4))
    assert not is_connected(Graph.from_edges(4, [(0, 1), (2, 3)]))
    assert is_connected(complete_bipartite(3, 5))
    assert is_connected(Graph.from_edges(1, []))


def test_sigma2_examples():
    assert sigma2(complete_bipartite(3, 5)) == 6
    assert sigma2(complete(4)) is INFINITY
    assert sigma2(spider(3)) == 2


def test_ore_profile_examples():
    assert ore_profile(complete_bipartite(3, 5)).k_min == 3
    prof = ore_profile(spider(3))
    assert (prof.sigma2, prof.k_min) == (2, 7)
    assert ore_profile(complete(4)) == ore_profile(complete(7))
    assert ore_profile(complete(4)).k_min == 1


def test_k_min_clamped_when_sigma2_reaches_n():
    # C_4 has sigma2 = 4 = n, so n - sigma2 + 1 = 1
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert ore_profile(g).k_min == 1


def test_graph_rejects_bad_adjacency():
    with pytest.raises(ValueError):
        Graph(2, (frozenset({1}), frozenset()))
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 0)])


@given(connected_graphs(max_n=9))
def test_sigma2_matches_brute_force(g):
    assert sigma2(g) == brute_sigma2(g.n, g.edges())


@given(connected_graphs(max_n=9))
def test_k_min_is_minimal(g):
    prof = ore_profile(g)
    if prof.sigma2 is INFINITY:
        assert prof.k_min == 1
        return
    assert prof.sigma2 >= g.n - prof.k_min + 1
    if prof.k_min > 1:
        assert prof.sigma2 < g.n - (prof.k_min - 1) + 1


@given(connected_graphs(max_n=9))
def test_serialize_roundtrip(g):
    text = serialize_graph(g)
    assert parse_graph(text) == g
    assert serialize_graph(parse_graph(text)) == text
    assert text.endswith("\n")


@given(connected_graphs(max_n=9))
def test_connectivity_agrees_with_networkx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    assert is_connected(g) == nx.is_connected(h)
    assert is_connected(Graph.from_edges(g.n + 1, g.edges())) is False
