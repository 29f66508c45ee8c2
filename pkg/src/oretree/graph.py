"""Simple undirected graphs on dense vertex ids, edge-list I/O and the Ore parameter."""

from __future__ import annotations

import enum
import itertools
import logging
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Union

log = logging.getLogger(__name__)

Edge = tuple[int, int]


class _Infinity(enum.Enum):
    INFINITY = "infinity"

    def __repr__(self) -> str:
        return "INFINITY"


INFINITY = _Infinity.INFINITY
Sigma = Union[int, _Infinity]


class GraphParseError(ValueError):
    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


class DisconnectedGraphError(ValueError):
    pass


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph; ``adj[v]`` is the neighbor set of vertex ``v``."""

    n: int
    adj: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match vertex count")
        for u, nbrs in enumerate(self.adj):
            if u in nbrs:
                raise ValueError(f"loop at vertex {u}")
            for v in nbrs:
                if not 0 <= v < self.n or u not in self.adj[v]:
                    raise ValueError(f"asymmetric or out-of-range adjacency {u}-{v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> Graph:
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop edge {u}-{v}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u}-{v} out of range for n={n}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, tuple(frozenset(s) for s in adj))

    @property
    def m(self) -> int:
        return sum(len(s) for s in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edges(self) -> list[Edge]:
        """Sorted edge list with ``u < v``."""
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    def with_edge(self, u: int, v: int) -> Graph:
        return Graph.from_edges(self.n, [*self.edges(), norm_edge(u, v)])


@dataclass(frozen=True)
class OreProfile:
    sigma2: Sigma
    k_min: int

    def sigma2_json(self) -> int | str:
        return "infinity" if self.sigma2 is INFINITY else self.sigma2


def _read_ints(line: str, lineno: int, count: int) -> list[int]:
    parts = line.split()
    if len(parts) != count:
        raise GraphParseError(lineno, f"expected {count} integers, got {line!r}")
    try:
        values = [int(p) for p in parts]
    except ValueError:
        raise GraphParseError(lineno, f"non-integer token in {line!r}") from None
    if any(x < 0 for x in values):
        raise GraphParseError(lineno, f"negative value in {line!r}")
    return values


def parse_edge_list(text: str) -> tuple[int, list[Edge], int]:
    """Parse the ``n m`` / ``u v`` format; returns (n, distinct edges, duplicate count)."""
    lines = [(i, raw.strip()) for i, raw in enumerate(text.splitlines(), start=1)]
    lines = [(i, s) for i, s in lines if s]
    if not lines:
        raise GraphParseError(1, "empty document, expected header 'n m'")
    header_no, header = lines[0]
    n, m = _read_ints(header, header_no, 2)
    body = lines[1:]
    if len(body) != m:
        lineno = body[m][0] if len(body) > m else header_no
        raise GraphParseError(lineno, f"header declares {m} edges, found {len(body)}")
    seen: set[Edge] = set()
    edges: list[Edge] = []
    duplicates = 0
    for lineno, line in body:
        u, v = _read_ints(line, lineno, 2)
        if u >= n or v >= n:
            raise GraphParseError(lineno, f"vertex id out of range 0..{n - 1} in {line!r}")
        if u == v:
            raise GraphParseError(lineno, f"loop edge {u}-{v}")
        e = norm_edge(u, v)
        if e in seen:
            duplicates += 1
            continue
        seen.add(e)
        edges.append(e)
    return n, edges, duplicates


def parse_graph(text: str) -> Graph:
    n, edges, duplicates = parse_edge_list(text)
    if duplicates:
        log.warning("collapsed %d duplicate edge(s)", duplicates)
    return Graph.from_edges(n, edges)


def format_edge_list(n: int, edges: Iterable[Edge]) -> str:
    es = sorted(norm_edge(u, v) for u, v in edges)
    return "".join([f"{n} {len(es)}\n", *(f"{u} {v}\n" for u, v in es)])


def serialize_graph(g: Graph) -> str:
    return format_edge_list(g.n, g.edges())


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    seen = [False] * g.n
    seen[0] = True
    queue = deque([0])
    count = 1
    while queue:
        u = queue.popleft()
        for v in g.adj[u]:
            if not seen[v]:
                seen[v] = True
                count += 1
                queue.append(v)
    return count == g.n


def require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise DisconnectedGraphError(f"graph on {g.n} vertices is not connected")


def sigma2(g: Graph) -> Sigma:
    """Minimum degree sum over nonadjacent pairs, or INFINITY for complete graphs."""
    best: Sigma = INFINITY
    deg = [len(s) for s in g.adj]
    for u, v in itertools.combinations(range(g.n), 2):
        if v in g.adj[u]:
            continue
        total = deg[u] + deg[v]
        if best is INFINITY or total < best:
            best = total
    return best


def ore_profile(g: Graph) -> OreProfile:
    s = sigma2(g)
    if s is INFINITY:
        return OreProfile(INFINITY, 1)
    return OreProfile(s, max(1, g.n - s + 1))
