"""Spanning trees of a host graph: validation, leaf/branch statistics and bound checks."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .graph import Edge, Graph, format_edge_list, norm_edge


class TreeValidationError(ValueError):
    """The edge set is not a spanning tree of the host graph."""

    def __init__(self, reason: str, message: str) -> None:
        super().__init__(message)
        self.reason = reason


class TreeInvariantError(RuntimeError):
    """A tree identity failed; the tree structure is corrupted."""


class SpanningTree:
    """Spanning tree over ``host`` kept as per-vertex neighbor sets.

    Instances are treated as values: nothing mutates ``adj`` after construction.
    """

    __slots__ = ("host", "adj")

    def __init__(self, host: Graph, adj: list[set[int]]) -> None:
        self.host = host
        self.adj = adj

    @property
    def n(self) -> int:
        return self.host.n

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def edges(self) -> list[Edge]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges())

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def leaves(self) -> list[int]:
        return [v for v in range(self.n) if len(self.adj[v]) == 1]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SpanningTree):
            return NotImplemented
        return self.host == other.host and self.adj == other.adj

    def __hash__(self) -> int:
        return hash(self.edge_set())

    def __repr__(self) -> str:
        return f"SpanningTree(n={self.n}, edges={self.edges()})"


def build_tree(g: Graph, edges: Iterable[Edge]) -> SpanningTree:
    es = {norm_edge(u, v) for u, v in edges}
    if g.n == 0:
        raise TreeValidationError("empty", "graph has no vertices")
    if len(es) != g.n - 1:
        raise TreeValidationError(
            "edge_count", f"spanning tree on {g.n} vertices needs {g.n - 1} edges, got {len(es)}"
        )
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    adj: list[set[int]] = [set() for _ in range(g.n)]
    for u, v in sorted(es):
        if not (0 <= u < g.n and 0 <= v < g.n) or u == v:
            raise TreeValidationError("not_in_host", f"edge {u}-{v} is not a valid vertex pair")
        if not g.has_edge(u, v):
            raise TreeValidationError("not_in_host", f"edge {u}-{v} is not an edge of the host graph")
        ru, rv = find(u), find(v)
        if ru == rv:
            raise TreeValidationError("cycle", f"edge {u}-{v} closes a cycle")
        parent[ru] = rv
        adj[u].add(v)
        adj[v].add(u)
    # n-1 acyclic edges on n vertices are necessarily spanning and connected
    return SpanningTree(g, adj)


def validate_tree(t: SpanningTree) -> None:
    """Re-check every SpanningTree invariant; raises TreeValidationError."""
    rebuilt = build_tree(t.host, t.edges())
    if rebuilt.adj != t.adj:
        raise TreeValidationError("asymmetric", "tree adjacency is not symmetric")


def bfs_tree(adj: Sequence[Iterable[int]], src: int) -> tuple[list[int], list[int]]:
    """Distances and parents from ``src`` (parent of ``src`` is -1)."""
    n = len(adj)
    dist = [-1] * n
    parent = [-1] * n
    dist[src] = 0
    queue = deque([src])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in adj[u]:
            if dist[v] < 0:
                dist[v] = du
                parent[v] = u
                queue.append(v)
    return dist, parent


def tree_path(t: SpanningTree, u: int, v: int) -> list[int]:
    """The unique u-v path in ``t``."""
    _, parent = bfs_tree(t.adj, v)
    path = [u]
    while path[-1] != v:
        path.append(parent[path[-1]])
    return path


def _argmax(values: list[int]) -> int:
    best = 0
    for i, x in enumerate(values):
        if x > values[best]:
            best = i
    return best


def diameter_path(t: SpanningTree) -> list[int]:
    """Canonical longest path of ``t``.

    Among all longest paths, each oriented so its first vertex is smaller than
    its last, returns the lexicographically least vertex sequence.
    """
    n = t.n
    if n < 2:
        raise ValueError("diameter path needs at least two vertices")
    adj = t.adj
    d0, _ = bfs_tree(adj, 0)
    a = _argmax(d0)
    da, pa = bfs_tree(adj, a)
    b = _argmax(da)
    db, pb = bfs_tree(adj, b)
    diam = da[b]
    # in a tree, the eccentricity of v is its distance to one of the two ends of any diameter
    start = min(v for v in range(n) if max(da[v], db[v]) == diam)
    if start == a:
        ds, ps = da, pa
    elif start == b:
        ds, ps = db, pb
    else:
        ds, ps = bfs_tree(adj, start)
    on_route = [False] * n
    for v in range(n):
        if ds[v] == diam:
            x = v
            while x >= 0 and not on_route[x]:
                on_route[x] = True
                x = ps[x]
    path = [start]
    x = start
    for _ in range(diam):
        x = min(y for y in adj[x] if ps[y] == x and on_route[y])
        path.append(x)
    return path


@dataclass(frozen=True)
class TreeStats:
    n: int
    f: int
    branch_set: frozenset[int]
    b: int
    branch_degree_sum: int
    diameter_path: tuple[int, ...]

    @property
    def s(self) -> int:
        return self.branch_degree_sum


def stats(t: SpanningTree) -> TreeStats:
    n = t.n
    if n == 1:
        return TreeStats(1, 0, frozenset(), 0, 0, (0,))
    degrees = [len(s) for s in t.adj]
    f = degrees.count(1)
    branch = frozenset(v for v in range(n) if degrees[v] >= 3)
    s = sum(degrees[v] for v in branch)
    b = len(branch)
    if f != s - 2 * b + 2:
        raise TreeInvariantError(f"leaf identity violated: f={f}, branch degrees {s}, b={b}")
    if f < b + 2:
        raise TreeInvariantError(f"leaf bound violated: f={f} < b+2={b + 2}")
    return TreeStats(n, f, branch, b, s, tuple(diameter_path(t)))


@dataclass(frozen=True)
class BoundReport:
    k: int
    thm1_bound: int
    thm2_bound: int
    thm3_bound: Fraction
    thm1_ok: bool
    thm2_ok: bool
    thm3_ok: bool

    @property
    def all_ok(self) -> bool:
        return self.thm1_ok and self.thm2_ok and self.thm3_ok


def check_bounds(st: TreeStats, k: int) -> BoundReport:
    """Compare leaf count, branch count and branch-degree sum against the three bounds for ``k``.

    Trees on at most two vertices satisfy every bound vacuously.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    trivial = st.n <= 2
    return BoundReport(
        k=k,
        thm1_bound=k - st.b + 1,
        thm2_bound=(k - 1) // 2,
        thm3_bound=Fraction(3 * (k - 1), 2),
        thm1_ok=trivial or st.f <= k - st.b + 1,
        thm2_ok=trivial or 2 * st.b <= k - 1,
        thm3_ok=trivial or 2 * st.branch_degree_sum <= 3 * (k - 1),
    )


def serialize_tree(t: SpanningTree) -> str:
    return format_edge_list(t.n, t.edges())


def tree_to_dot(t: SpanningTree, name: str = "T") -> str:
    """DOT source; branch vertices are drawn as boxes, leaves carry a ``leaf`` label."""
    lines = [f"graph {name} {{", "  node [shape=circle];"]
    for v in range(t.n):
        d = t.degree(v)
        if d >= 3:
            lines.append(f'  {v} [shape=box, style=filled, fillcolor=lightgray, label="{v}\\ndeg {d}"];')
        elif d == 1:
            lines.append(f'  {v} [shape=circle, label="{v}\\nleaf"];')
        else:
            lines.append(f"  {v};")
    for u, v in t.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
