"""Graph families: the two sharpness constructions plus seeded random corpora.

Vertex layouts are fixed:

* ``complete_bipartite(a, b)``: parts ``0..a-1`` and ``a..a+b-1``.
* ``spider(b)``: spine ``v_0..v_{b+1}`` is ``0..b+1``; pendant ``u_i`` is ``b+1+i``
  and hangs off ``v_i``.
* ``path``/``cycle``: consecutive ids.
"""

from __future__ import annotations

import itertools
import random

from .graph import INFINITY, Graph, sigma2


def path(n: int) -> Graph:
    if n < 1:
        raise ValueError("n must be >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a simple cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("n must be >= 1")
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise ValueError("both parts must be nonempty")
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def spider(b: int) -> Graph:
    if b < 1:
        raise ValueError("b must be >= 1")
    spine = [(i, i + 1) for i in range(b + 1)]
    legs = [(i, b + 1 + i) for i in range(1, b + 1)]
    return Graph.from_edges(2 * b + 2, spine + legs)


def random_tree_edges(n: int, rng: random.Random) -> list[tuple[int, int]]:
    """Uniform random labeled tree, decoded from a random Pruefer sequence."""
    if n == 1:
        return []
    if n == 2:
        return [(0, 1)]
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, w = (v for v in range(n) if degree[v] == 1)
    edges.append((u, w))
    return edges


def random_connected(n: int, p: float, seed: int) -> Graph:
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    rng = random.Random(seed)
    tree = {(min(u, v), max(u, v)) for u, v in random_tree_edges(n, rng)}
    extra = [e for e in itertools.combinations(range(n), 2) if e not in tree and rng.random() < p]
    return Graph.from_edges(n, sorted(tree) + extra)


def random_ore(n: int, k: int, seed: int) -> Graph:
    """Random connected graph densified until sigma2 >= n - k + 1.

    Each step joins a nonadjacent pair of minimum degree sum (lowest ids on ties).
    """
    if n < 3 or not 1 <= k <= n - 1:
        raise ValueError("need n >= 3 and 1 <= k <= n-1")
    g = random_connected(n, 0.1, seed)
    target = n - k + 1
    adj = [set(s) for s in g.adj]
    while True:
        best = None
        for u, v in itertools.combinations(range(n), 2):
            if v in adj[u]:
                continue
            total = len(adj[u]) + len(adj[v])
            if best is None or total < best[0]:
                best = (total, u, v)
        if best is None or best[0] >= target:
            break
        _, u, v = best
        adj[u].add(v)
        adj[v].add(u)
    out = Graph(n, tuple(frozenset(s) for s in adj))
    s = sigma2(out)
    assert s is INFINITY or s >= target
    return out
