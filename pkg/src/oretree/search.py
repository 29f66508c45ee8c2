"""Lexicographic local search over spanning trees.

The potential is ``(f, -L, -a, d1)``: leaf count, minus the vertex count of the
canonical diameter path, minus the index of its first branch vertex, and that
branch vertex's tree degree. A move is committed only when it strictly lowers
the potential, so the search always terminates.
"""

from __future__ import annotations

import enum
import logging
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Sequence

from .graph import INFINITY, Edge, Graph, OreProfile, norm_edge, ore_profile, require_connected
from .tree import (
    BoundReport,
    SpanningTree,
    TreeStats,
    check_bounds,
    diameter_path,
    stats,
)

log = logging.getLogger(__name__)


class MoveKind(enum.Enum):
    ROTATE_ABSORB = "rotate_absorb"
    CYCLE_OPEN = "cycle_open"
    EXTEND = "extend"
    ROTATE_EXTEND = "rotate_extend"
    DOUBLE_EXCHANGE = "double_exchange"
    BRANCH_SLIDE = "branch_slide"


class Potential(NamedTuple):
    f: int
    neg_length: int
    neg_offset: int
    first_branch_degree: int


@dataclass(frozen=True)
class Move:
    kind: MoveKind
    add: tuple[Edge, ...]
    delete: tuple[Edge, ...]
    key: tuple[int, int, int]
    params: tuple[tuple[str, int], ...] = ()

    def describe(self) -> dict:
        return {
            "kind": self.kind.value,
            "add": [list(e) for e in self.add],
            "delete": [list(e) for e in self.delete],
            **dict(self.params),
        }


@dataclass(frozen=True)
class SearchState:
    tree: SpanningTree
    p2: tuple[int, ...]
    phi: Potential


@dataclass(frozen=True)
class SearchConfig:
    seed: int = 0
    max_iterations: int | None = None
    max_restarts: int = 8
    rotation_closure: bool = False
    record_moves: bool = False

    def budget(self, n: int) -> int:
        return self.max_iterations if self.max_iterations is not None else 4 * n**3


@dataclass(frozen=True)
class SearchOutcome:
    tree: SpanningTree
    stats: TreeStats
    report: BoundReport
    iterations: int
    certified: bool
    restarts_used: int
    profile: OreProfile
    potential: Potential | None
    seed_used: int
    move_log: tuple[dict, ...] = ()


@dataclass
class StuckDiagnostic:
    status: str  # "pass", "fail" or "skipped"
    p2_length: int
    sigma2: int | str
    escaping: list[Edge] = field(default_factory=list)
    message: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"


class MoveError(RuntimeError):
    def __init__(self, move: Move, reason: str) -> None:
        super().__init__(f"{reason}; move={move.describe()}")
        self.move = move


class SearchBudgetExceeded(RuntimeError):
    def __init__(self, state: SearchState, iterations: int, budget: int) -> None:
        super().__init__(f"no stuck state after {iterations} commits (budget {budget}); potential {tuple(state.phi)}")
        self.state = state
        self.iterations = iterations
        self.budget = budget


def initial_tree(g: Graph, seed: int) -> SpanningTree:
    """Randomized depth-first spanning tree from a seed-chosen root."""
    require_connected(g)
    if g.n < 1:
        raise ValueError("graph has no vertices")
    rng = random.Random(seed)
    root = rng.randrange(g.n)
    adj: list[set[int]] = [set() for _ in range(g.n)]
    seen = [False] * g.n
    seen[root] = True

    def shuffled(v: int) -> list[int]:
        nbrs = sorted(g.adj[v])
        rng.shuffle(nbrs)
        return nbrs

    stack = [(root, shuffled(root))]
    while stack:
        v, pending = stack[-1]
        while pending and seen[pending[-1]]:
            pending.pop()
        if not pending:
            stack.pop()
            continue
        w = pending.pop()
        seen[w] = True
        adj[v].add(w)
        adj[w].add(v)
        stack.append((w, shuffled(w)))
    return SpanningTree(g, adj)


def _potential_of(t: SpanningTree, p2: Sequence[int]) -> Potential:
    adj = t.adj
    f = sum(1 for s in adj if len(s) == 1)
    for i, v in enumerate(p2):
        if len(adj[v]) >= 3:
            return Potential(f, -len(p2), -i, len(adj[v]))
    return Potential(f, -len(p2), -len(p2), 0)


def potential(g: Graph, t: SpanningTree) -> Potential:
    if t.n < 2:
        raise ValueError("potential needs at least two vertices")
    return _potential_of(t, diameter_path(t))


def make_state(g: Graph, t: SpanningTree) -> SearchState:
    p2 = tuple(diameter_path(t))
    return SearchState(t, p2, _potential_of(t, p2))


def apply_move(t: SpanningTree, m: Move) -> SpanningTree:
    """Apply ``m`` and re-validate the result as a spanning tree of the host."""
    host = t.host
    if len(m.add) != len(m.delete):
        raise MoveError(m, "add and delete sets differ in size")
    adj = [set(s) for s in t.adj]
    for u, v in m.delete:
        if v not in adj[u]:
            raise MoveError(m, f"deleted edge {u}-{v} is not a tree edge")
        adj[u].discard(v)
        adj[v].discard(u)
    for u, v in m.add:
        if not host.has_edge(u, v):
            raise MoveError(m, f"added edge {u}-{v} is not a host edge")
        if v in adj[u]:
            raise MoveError(m, f"added edge {u}-{v} is already a tree edge")
        adj[u].add(v)
        adj[v].add(u)
    # edge count is preserved, so connectivity alone certifies a spanning tree
    seen = [False] * host.n
    seen[0] = True
    queue = deque([0])
    count = 1
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                count += 1
                queue.append(v)
    if count != host.n:
        raise MoveError(m, "result is disconnected")
    return SpanningTree(host, adj)


class _Hanging:
    """Off-path structure of a tree relative to the path ``p2``."""

    def __init__(self, t: SpanningTree, p2: Sequence[int]) -> None:
        n = t.n
        self.pos = [-1] * n
        for i, v in enumerate(p2):
            self.pos[v] = i
        self.toward = [-1] * n  # next vertex on the way back to the path
        self.anchor = [-1] * n
        self.depth = [0] * n
        self.reach = [0] * n  # deepest off-path vertex hanging from a path vertex
        queue = deque()
        for v in p2:
            self.anchor[v] = v
            queue.append(v)
        while queue:
            u = queue.popleft()
            for w in t.adj[u]:
                if self.anchor[w] < 0:
                    self.anchor[w] = self.anchor[u]
                    self.toward[w] = u
                    self.depth[w] = self.depth[u] + 1
                    a = self.anchor[w]
                    if self.depth[w] > self.reach[a]:
                        self.reach[a] = self.depth[w]
                    queue.append(w)


def _path_edges(path: Sequence[int]) -> set[Edge]:
    return {norm_edge(path[i], path[i + 1]) for i in range(len(path) - 1)}


def _diff(old: set[Edge], new: set[Edge]) -> tuple[tuple[Edge, ...], tuple[Edge, ...]]:
    return tuple(sorted(new - old)), tuple(sorted(old - new))


def _endpoints(g: Graph, path: Sequence[int], pos: list[int], closure: bool):
    """Hamilton paths of G[V(path)] ending at ``path[-1]``, reached by rotating the front end.

    Yields ``(endpoint, pivot, path_add, path_delete)``; pivot is -1 for the unrotated path.
    """
    head = path[0]
    yield head, -1, (), ()
    if not closure:
        for u in sorted(g.adj[head]):
            i = pos[u]
            if i >= 2:
                x = path[i - 1]
                yield x, u, (norm_edge(head, u),), (norm_edge(x, u),)
        return
    # Posa closure: breadth-first over rotations, one representative path per endpoint
    base = _path_edges(path)
    seen = {head}
    queue = deque([tuple(path)])
    while queue:
        cur = queue.popleft()
        cpos = {v: i for i, v in enumerate(cur)}
        end = cur[0]
        for u in sorted(g.adj[end]):
            i = cpos.get(u, -1)
            if i < 2:
                continue
            rotated = cur[i - 1 :: -1] + cur[i:]
            x = rotated[0]
            if x in seen:
                continue
            seen.add(x)
            queue.append(rotated)
            add, delete = _diff(base, _path_edges(rotated))
            yield x, u, add, delete


def _cycles(g: Graph, path: Sequence[int], pos: list[int]):
    """Hamilton cycles of G[V(path)] formed from one chord at each end; yields (pivot, cycle)."""
    head, tail = path[0], path[-1]
    L = len(path)
    for u in sorted(g.adj[head]):
        i = pos[u]
        if i < 2 or path[i - 1] not in g.adj[tail]:
            continue
        yield u, list(path[:i]) + list(path[L - 1 : i - 1 : -1])


def _extensions(g: Graph, t: SpanningTree, hang: _Hanging, x: int):
    for v in sorted(g.adj[x]):
        if hang.pos[v] < 0 and v not in t.adj[x]:
            yield v, norm_edge(x, v), norm_edge(v, hang.toward[v])


def candidate_groups(g: Graph, state: SearchState, closure: bool = False) -> Iterator[list[Move]]:
    """Candidate moves in priority groups: absorb, extend, double exchange, branch slide."""
    t = state.tree
    p2 = state.p2
    L = len(p2)
    if L < 2:
        return
    hang = _Hanging(t, p2)
    orientations = [list(p2), list(reversed(p2))]
    n = g.n

    def oriented_pos(path: list[int]) -> list[int]:
        pos = [-1] * n
        for i, v in enumerate(path):
            pos[v] = i
        return pos

    positions = [oriented_pos(p) for p in orientations]
    base_edges = _path_edges(p2)

    absorb: dict = {}
    extend: dict = {}

    def put(bucket: dict, move: Move) -> None:
        sig = (move.add, move.delete)
        if sig not in bucket or move.key < bucket[sig].key:
            bucket[sig] = move

    for path, pos in zip(orientations, positions):
        for x, pivot, padd, pdel in _endpoints(g, path, pos, closure):
            if pivot >= 0 and len(t.adj[x]) >= 3:
                put(absorb, Move(MoveKind.ROTATE_ABSORB, padd, pdel, (x, pivot, -1),
                                 (("end", path[0]), ("pivot", pivot), ("new_end", x))))
            kind = MoveKind.EXTEND if pivot < 0 else MoveKind.ROTATE_EXTEND
            for v, add_e, del_e in _extensions(g, t, hang, x):
                add = tuple(sorted((*padd, add_e)))
                delete = tuple(sorted((*pdel, del_e)))
                put(extend, Move(kind, add, delete, (x, pivot, v),
                                 (("end", path[0]), ("pivot", pivot), ("new_end", x), ("neighbor", v))))
        for pivot, cyc in _cycles(g, path, pos):
            m = len(cyc)
            cyc_edges = {norm_edge(cyc[j], cyc[(j + 1) % m]) for j in range(m)}
            for j, w in enumerate(cyc):
                for nb in (cyc[j - 1], cyc[(j + 1) % m]):
                    opened = cyc_edges - {norm_edge(w, nb)}
                    padd, pdel = _diff(base_edges, opened)
                    if len(t.adj[w]) >= 3:
                        put(absorb, Move(MoveKind.CYCLE_OPEN, padd, pdel, (w, pivot, nb),
                                         (("open_at", w), ("pivot", pivot), ("cut", nb))))
                    for v, add_e, del_e in _extensions(g, t, hang, w):
                        add = tuple(sorted((*padd, add_e)))
                        delete = tuple(sorted((*pdel, del_e)))
                        put(extend, Move(MoveKind.CYCLE_OPEN, add, delete, (w, pivot, v),
                                         (("open_at", w), ("pivot", pivot), ("cut", nb), ("neighbor", v))))

    def ordered(bucket: dict) -> list[Move]:
        return sorted(bucket.values(), key=lambda mv: (mv.key, mv.add, mv.delete))

    yield ordered(absorb)
    yield ordered(extend)

    double: dict = {}
    for path, pos in zip(orientations, positions):
        head, tail = path[0], path[-1]
        deep = [i for i in range(1, L - 1) if hang.reach[path[i]] >= 2]
        if not deep:
            continue
        for j in range(2, L - 1):
            w = path[j]
            if path[j + 1] not in g.adj[head] or path[j - 1] not in g.adj[tail]:
                continue
            for i in deep:
                if i > j - 1:
                    break
                z = path[i]
                add = tuple(sorted((norm_edge(head, path[j + 1]), norm_edge(tail, path[j - 1]))))
                delete = tuple(sorted((norm_edge(path[i - 1], z), norm_edge(path[j - 1], w))))
                put(double, Move(MoveKind.DOUBLE_EXCHANGE, add, delete, (head, w, z),
                                 (("end", head), ("w", w), ("z", z))))
    yield ordered(double)

    slide: dict = {}
    for path, pos in zip(orientations, positions):
        a = next((i for i in range(1, L - 1) if len(t.adj[path[i]]) >= 3), -1)
        if a < 0:
            continue
        x1 = path[a]
        for leaf in sorted(t.adj[x1]):
            if pos[leaf] >= 0 or len(t.adj[leaf]) != 1:
                continue
            for v1 in sorted(g.adj[leaf]):
                if pos[v1] > a:
                    put(slide, Move(MoveKind.BRANCH_SLIDE, (norm_edge(leaf, v1),), (norm_edge(leaf, x1),),
                                    (leaf, x1, v1), (("leaf", leaf), ("from", x1), ("to", v1))))
    yield ordered(slide)


def candidate_moves(g: Graph, state: SearchState, closure: bool = False) -> list[Move]:
    out: list[Move] = []
    seen: set = set()
    for group in candidate_groups(g, state, closure):
        for m in group:
            sig = (m.add, m.delete)
            if sig not in seen:
                seen.add(sig)
                out.append(m)
    return out


def improving_move(g: Graph, state: SearchState, closure: bool = False) -> tuple[Move, SearchState] | None:
    """First candidate, in priority order, whose result has a strictly smaller potential."""
    tried: set = set()
    for group in candidate_groups(g, state, closure):
        for m in group:
            sig = (m.add, m.delete)
            if sig in tried:
                continue
            tried.add(sig)
            nt = apply_move(state.tree, m)
            ns = make_state(g, nt)
            if ns.phi < state.phi:
                return m, ns
    return None


def descend(g: Graph, t: SpanningTree, config: SearchConfig = SearchConfig()) -> tuple[SearchState, int, list[dict]]:
    """Commit improving moves until none is left; returns (stuck state, commits, move log)."""
    if g.n < 2:
        raise ValueError("descent needs at least two vertices")
    budget = config.budget(g.n)
    state = make_state(g, t)
    iterations = 0
    moves: list[dict] = []
    while True:
        found = improving_move(g, state, config.rotation_closure)
        if found is None:
            return state, iterations, moves
        m, state = found
        iterations += 1
        if config.record_moves:
            moves.append({**m.describe(), "potential": list(state.phi)})
        if iterations > budget:
            raise SearchBudgetExceeded(state, iterations, budget)


def optimize(g: Graph, config: SearchConfig = SearchConfig()) -> SearchOutcome:
    require_connected(g)
    profile = ore_profile(g)
    k = profile.k_min
    if g.n <= 2:
        t = initial_tree(g, config.seed)
        st = stats(t)
        phi = potential(g, t) if g.n == 2 else None
        return SearchOutcome(t, st, check_bounds(st, k), 0, True, 0, profile, phi, config.seed)
    best: SearchOutcome | None = None
    for r in range(config.max_restarts + 1):
        seed = config.seed + r
        state, iterations, moves = descend(g, initial_tree(g, seed), config)
        st = stats(state.tree)
        report = check_bounds(st, k)
        outcome = SearchOutcome(
            state.tree, st, report, iterations, report.all_ok, r, profile, state.phi, seed, tuple(moves)
        )
        if outcome.certified:
            return outcome
        log.info("seed %d stuck at %s with a failing bound (k=%d)", seed, tuple(state.phi), k)
        if best is None or state.phi < best.potential:
            best = outcome
    assert best is not None
    return SearchOutcome(
        best.tree, best.stats, best.report, best.iterations, False, config.max_restarts,
        profile, best.potential, best.seed_used, best.move_log,
    )


def stuck_state_invariant(g: Graph, state: SearchState) -> StuckDiagnostic:
    """Check the path-length inequality and that both path ends see only path vertices."""
    t = state.tree
    p2 = state.p2
    prof = ore_profile(g)
    sig = prof.sigma2_json()
    f = sum(1 for s in t.adj if len(s) == 1)
    if f < 3:
        return StuckDiagnostic("skipped", len(p2), sig, message=f"f={f} < 3")
    on = set(p2)
    escaping = [(x, v) for x in (p2[0], p2[-1]) for v in sorted(g.adj[x]) if v not in on]
    problems = []
    if prof.sigma2 is INFINITY:
        problems.append("sigma2 is infinite yet the tree has three or more leaves")
    elif len(p2) < prof.sigma2 + 1:
        problems.append(f"|p2|={len(p2)} < sigma2+1={prof.sigma2 + 1}")
    if escaping:
        problems.append(f"path ends have neighbors off the path: {escaping}")
    status = "fail" if problems else "pass"
    return StuckDiagnostic(status, len(p2), sig, escaping, "; ".join(problems))
