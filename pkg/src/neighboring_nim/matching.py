"""Maximum cardinality matching in general graphs, via networkx's blossom implementation."""
from __future__ import annotations

import networkx as nx

from .core import UndirectedGraph


def maximum_matching(g: UndirectedGraph) -> list[tuple[int, int]]:
    """A maximum matching of ``g`` as sorted ``(u, v)`` pairs with ``u < v``."""
    nxg = nx.Graph()
    nxg.add_nodes_from(range(g.n))
    nxg.add_edges_from(g.edges())
    return sorted((min(e), max(e)) for e in nx.max_weight_matching(nxg, maxcardinality=True))


def max_matching_size(g: UndirectedGraph) -> int:
    return len(maximum_matching(g))
