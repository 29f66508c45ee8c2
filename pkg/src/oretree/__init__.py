"""Spanning trees with few end vertices and few, cheap branch vertices."""

from .graph import INFINITY, Graph, OreProfile, is_connected, ore_profile, parse_graph, serialize_graph, sigma2
from .oracle import OracleResult, oracle_min, spanning_tree_count, verify_theorems
from .search import SearchConfig, SearchOutcome, optimize
from .tree import BoundReport, SpanningTree, TreeStats, build_tree, check_bounds, diameter_path, stats

__all__ = [
    "INFINITY",
    "BoundReport",
    "Graph",
    "OracleResult",
    "OreProfile",
    "SearchConfig",
    "SearchOutcome",
    "SpanningTree",
    "TreeStats",
    "build_tree",
    "check_bounds",
    "diameter_path",
    "is_connected",
    "optimize",
    "oracle_min",
    "ore_profile",
    "parse_graph",
    "serialize_graph",
    "sigma2",
    "spanning_tree_count",
    "stats",
    "verify_theorems",
]
