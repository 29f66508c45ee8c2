"""Command-line driver. Every command writes one JSON document (schema 1) to stdout."""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import instances
from .graph import (
    DisconnectedGraphError,
    Graph,
    GraphParseError,
    ore_profile,
    parse_edge_list,
    parse_graph,
    require_connected,
    serialize_graph,
)
from .oracle import DEFAULT_CAP, CapExceeded, verify_theorems
from .search import SearchBudgetExceeded, SearchConfig, optimize
from .tree import (
    BoundReport,
    TreeStats,
    TreeValidationError,
    build_tree,
    check_bounds,
    serialize_tree,
    stats,
    tree_to_dot,
)

SCHEMA = 1

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DISCONNECTED = 3
EXIT_BOUND_FAILURE = 4
EXIT_BUDGET = 5
EXIT_CAP = 6
EXIT_INVALID_TREE = 7


class CliError(Exception):
    def __init__(self, code: int, message: str) -> None:
        super().__init__(message)
        self.code = code


def _fraction(x: Fraction) -> dict:
    return {"numerator": x.numerator, "denominator": x.denominator}


def _bounds_block(rep: BoundReport) -> dict:
    return {
        "k": rep.k,
        "thm1_bound": rep.thm1_bound,
        "thm2_bound": rep.thm2_bound,
        "thm3_bound": _fraction(rep.thm3_bound),
        "thm1_ok": rep.thm1_ok,
        "thm2_ok": rep.thm2_ok,
        "thm3_ok": rep.thm3_ok,
    }


def _tree_block(st: TreeStats, edges) -> dict:
    return {
        "f": st.f,
        "b": st.b,
        "s": st.branch_degree_sum,
        "branch_vertices": sorted(st.branch_set),
        "diameter_length": len(st.diameter_path),
        "diameter_path": list(st.diameter_path),
        "edges": [list(e) for e in edges],
    }


def _base(command: str, g: Graph) -> dict:
    prof = ore_profile(g)
    return {
        "schema": SCHEMA,
        "command": command,
        "input": {"n": g.n, "m": g.m},
        "ore_profile": {"sigma2": prof.sigma2_json(), "k_min": prof.k_min},
    }


def _load_graph(path: str) -> Graph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"cannot read {path}: {exc.strerror}") from None
    try:
        g = parse_graph(text)
    except GraphParseError as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc}") from None
    try:
        require_connected(g)
    except DisconnectedGraphError as exc:
        raise CliError(EXIT_DISCONNECTED, f"{path}: {exc}") from None
    return g


def cmd_analyze(args: argparse.Namespace) -> tuple[dict, int]:
    g = _load_graph(args.graph)
    doc = _base("analyze", g)
    k = doc["ore_profile"]["k_min"]
    doc["static_bounds"] = {
        "k": k,
        "leaves_plus_branches_max": k + 1,
        "thm2_bound": (k - 1) // 2,
        "thm3_bound": _fraction(Fraction(3 * (k - 1), 2)),
    }
    return doc, EXIT_OK


def _emit(tree, fmt: str) -> str:
    return tree_to_dot(tree) if fmt == "dot" else serialize_tree(tree)


def cmd_optimize(args: argparse.Namespace) -> tuple[dict, int]:
    g = _load_graph(args.graph)
    config = SearchConfig(
        seed=args.seed,
        max_iterations=args.max_iters,
        max_restarts=args.restarts,
        rotation_closure=args.rotation_closure,
        record_moves=args.verbose,
    )
    doc = _base("optimize", g)
    try:
        out = optimize(g, config)
    except SearchBudgetExceeded as exc:
        st = stats(exc.state.tree)
        doc["tree"] = _tree_block(st, exc.state.tree.edges())
        doc["search"] = {"iterations": exc.iterations, "budget": exc.budget, "error": "budget exhausted"}
        return doc, EXIT_BUDGET
    doc["tree"] = _tree_block(out.stats, out.tree.edges())
    doc["bounds"] = _bounds_block(out.report)
    doc["search"] = {
        "iterations": out.iterations,
        "restarts": out.restarts_used,
        "certified": out.certified,
        "seed": out.seed_used,
        "potential": list(out.potential) if out.potential is not None else None,
    }
    if args.verbose:
        doc["moves"] = list(out.move_log)
    artifact = _emit(out.tree, args.emit)
    if args.out:
        Path(args.out).write_text(artifact)
        doc["artifact"] = {"format": args.emit, "path": args.out}
    else:
        doc["artifact"] = {"format": args.emit, "text": artifact}
    return doc, EXIT_OK if out.certified else EXIT_BOUND_FAILURE


def cmd_oracle(args: argparse.Namespace) -> tuple[dict, int]:
    g = _load_graph(args.graph)
    doc = _base("oracle", g)
    try:
        rep = verify_theorems(g, args.cap)
    except CapExceeded as exc:
        doc["oracle"] = {"tree_count": exc.count, "cap": exc.cap, "error": "cap exceeded"}
        return doc, EXIT_CAP
    res = rep.oracle
    doc["oracle"] = {
        "tree_count": res.tree_count,
        "min_leaves": res.min_leaves,
        "min_branch": res.min_branch,
        "min_branch_degree_sum": res.min_branch_degree_sum,
        "min_leaves_plus_branch": res.min_leaves_plus_branch,
        "witnesses": {name: [list(e) for e in t.edges()] for name, t in sorted(res.witnesses.items())},
    }
    doc["theorems"] = {
        "k": rep.k,
        "thm1_ok": rep.leaves_with_branches_ok,
        "thm2_ok": rep.branch_count_ok,
        "thm3_ok": rep.branch_degree_sum_ok,
        "k_ended_ok": rep.k_ended_ok,
    }
    return doc, EXIT_OK


def _generate(family: str, params: list[str], seed: int) -> Graph:
    def ints(count: int) -> list[int]:
        if len(params) != count:
            raise CliError(EXIT_PARSE, f"{family} takes {count} parameter(s), got {len(params)}")
        try:
            return [int(p) for p in params]
        except ValueError:
            raise CliError(EXIT_PARSE, f"non-integer parameter in {params}") from None

    try:
        if family == "bipartite":
            return instances.complete_bipartite(*ints(2))
        if family == "spider":
            return instances.spider(*ints(1))
        if family in ("path", "cycle", "complete"):
            return getattr(instances, family)(*ints(1))
        if family == "random":
            if len(params) != 2:
                raise CliError(EXIT_PARSE, "random takes n and p")
            return instances.random_connected(int(params[0]), float(params[1]), seed)
        if family == "ore":
            n, k = ints(2)
            return instances.random_ore(n, k, seed)
    except ValueError as exc:
        raise CliError(EXIT_PARSE, str(exc)) from None
    raise CliError(EXIT_PARSE, f"unknown family {family!r}")


def cmd_gen(args: argparse.Namespace) -> tuple[dict, int]:
    g = _generate(args.family, args.params, args.seed)
    text = serialize_graph(g)
    doc = _base("gen", g)
    doc["family"] = args.family
    doc["params"] = args.params
    doc["seed"] = args.seed
    if args.out:
        Path(args.out).write_text(text)
        doc["path"] = args.out
    else:
        doc["graph"] = text
    return doc, EXIT_OK


def cmd_verify(args: argparse.Namespace) -> tuple[dict, int]:
    g = _load_graph(args.graph)
    try:
        n, edges, _ = parse_edge_list(Path(args.tree).read_text())
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"cannot read {args.tree}: {exc.strerror}") from None
    except GraphParseError as exc:
        raise CliError(EXIT_PARSE, f"{args.tree}: {exc}") from None
    doc = _base("verify", g)
    if n != g.n:
        doc["valid"] = False
        doc["reason"] = f"tree declares {n} vertices, graph has {g.n}"
        return doc, EXIT_INVALID_TREE
    try:
        t = build_tree(g, edges)
    except TreeValidationError as exc:
        doc["valid"] = False
        doc["reason"] = f"{exc.reason}: {exc}"
        return doc, EXIT_INVALID_TREE
    st = stats(t)
    doc["valid"] = True
    doc["tree"] = _tree_block(st, t.edges())
    doc["bounds"] = _bounds_block(check_bounds(st, doc["ore_profile"]["k_min"]))
    return doc, EXIT_OK


BENCH_HEADER = f"{'family':<10} {'n':>5} {'seed':>5} {'m':>7} {'k_min':>6} {'f':>4} {'b':>4} {'s':>5} {'iters':>6} {'cert':>5} {'seconds':>8}"


def _bench_graph(family: str, n: int, seed: int, p: float) -> Graph:
    if family == "random":
        return instances.random_connected(n, p, seed)
    if family == "ore":
        return instances.random_ore(n, max(1, n // 4), seed)
    if family == "bipartite":
        return instances.complete_bipartite(max(1, n // 2 - 1), n - max(1, n // 2 - 1))
    if family == "spider":
        return instances.spider(max(1, (n - 2) // 2))
    raise CliError(EXIT_PARSE, f"unknown bench family {family!r}")


def cmd_bench(args: argparse.Namespace) -> int:
    try:
        sizes = [int(x) for x in args.sizes.split(",") if x]
    except ValueError:
        raise CliError(EXIT_PARSE, f"bad --sizes {args.sizes!r}") from None
    print(BENCH_HEADER)
    for n in sizes:
        for seed in range(args.seeds):
            g = _bench_graph(args.family, n, seed, args.p)
            start = time.perf_counter()
            out = optimize(g, SearchConfig(seed=seed))
            elapsed = time.perf_counter() - start
            st = out.stats
            print(
                f"{args.family:<10} {g.n:>5} {seed:>5} {g.m:>7} {out.profile.k_min:>6} {st.f:>4} {st.b:>4} "
                f"{st.branch_degree_sum:>5} {out.iterations:>6} {'yes' if out.certified else 'no':>5} {elapsed:>8.3f}"
            )
    return EXIT_OK


def _summary(doc: dict) -> str:
    parts = [doc["command"], f"n={doc['input']['n']}", f"m={doc['input']['m']}"]
    prof = doc["ore_profile"]
    parts.append(f"sigma2={prof['sigma2']} k_min={prof['k_min']}")
    if "tree" in doc:
        t = doc["tree"]
        parts.append(f"f={t['f']} b={t['b']} s={t['s']}")
    if "bounds" in doc:
        b = doc["bounds"]
        parts.append("bounds " + " ".join(f"{name}={'ok' if b[name + '_ok'] else 'FAIL'}" for name in ("thm1", "thm2", "thm3")))
    if "oracle" in doc and "min_leaves" in doc["oracle"]:
        o = doc["oracle"]
        parts.append(f"trees={o['tree_count']} min_leaves={o['min_leaves']} min_branch={o['min_branch']}")
    return " ".join(parts)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiet-off", action="store_true", help="also print a one-line summary to stderr")

    parser = argparse.ArgumentParser(prog="oretree", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="sigma2, k_min and static bounds")
    p.add_argument("graph")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("optimize", parents=[common], help="search for a certified spanning tree")
    p.add_argument("graph")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iters", type=int, default=None, help="commit budget (default 4n^3)")
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--emit", choices=["edges", "dot"], default="edges")
    p.add_argument("--out", help="write the tree artifact here instead of embedding it")
    p.add_argument("--rotation-closure", action="store_true", help="rotate to every reachable endpoint")
    p.add_argument("--verbose", action="store_true", help="include the move log")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("oracle", parents=[common], help="exhaustive minima and theorem check")
    p.add_argument("graph")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", parents=[common], help="generate a graph family")
    p.add_argument("family", choices=["bipartite", "spider", "path", "cycle", "complete", "random", "ore"])
    p.add_argument("params", nargs="*")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", parents=[common], help="check a given tree against the bounds")
    p.add_argument("graph")
    p.add_argument("tree")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="timing table for optimize")
    p.add_argument("--family", default="random", choices=["random", "ore", "bipartite", "spider"])
    p.add_argument("--sizes", default="50,100,200")
    p.add_argument("--seeds", type=int, default=3)
    p.add_argument("--p", type=float, default=0.05)
    p.set_defaults(func=None)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "bench":
            return cmd_bench(args)
        doc, code = args.func(args)
    except CliError as exc:
        print(f"oretree: {exc}", file=sys.stderr)
        return exc.code
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    if args.quiet_off:
        print(_summary(doc), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
