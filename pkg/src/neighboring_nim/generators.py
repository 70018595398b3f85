"""Instance families: exhaustive small digraphs and seeded random instances."""
from __future__ import annotations

import itertools
import random
from typing import Iterator, Optional

from .core import NimGPosition, UndirectedGraph
from .games import GameDag, GameDagNode, VertexGamePosition
from .geography import DirectedGraph, GeographyInstance


def vertex_labels(n: int, prefix: str = "v") -> list[str]:
    return [f"{prefix}{i}" for i in range(n)]


def all_geography_instances(max_n: int, min_n: int = 1) -> Iterator[GeographyInstance]:
    """Every loop-free digraph on ``min_n..max_n`` labelled vertices, with every start."""
    for n in range(min_n, max_n + 1):
        pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
        labels = vertex_labels(n)
        for mask in range(1 << len(pairs)):
            g = DirectedGraph(labels, [p for i, p in enumerate(pairs) if mask >> i & 1])
            for start in range(n):
                yield GeographyInstance(g, start)


def all_graphs(n: int) -> Iterator[UndirectedGraph]:
    """Every simple graph on ``n`` labelled vertices."""
    pairs = list(itertools.combinations(range(n), 2))
    labels = vertex_labels(n)
    for mask in range(1 << len(pairs)):
        yield UndirectedGraph(labels, [p for i, p in enumerate(pairs) if mask >> i & 1])


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> UndirectedGraph:
    return UndirectedGraph(
        vertex_labels(n), [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
    )


def random_geography(rng: random.Random, n: int, max_arcs: Optional[int] = None) -> GeographyInstance:
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    top = len(pairs) if max_arcs is None else min(max_arcs, len(pairs))
    arcs = rng.sample(pairs, rng.randint(0, top))
    return GeographyInstance(DirectedGraph(vertex_labels(n), arcs), rng.randrange(n))


def random_nimg(
    rng: random.Random,
    n: int,
    max_weight: int = 2,
    edge_p: float = 0.5,
    max_total: Optional[int] = None,
    with_last: bool = True,
) -> NimGPosition:
    graph = random_graph(rng, n, edge_p)
    weights = [rng.randint(0, max_weight) for _ in range(n)]
    if max_total is not None:
        while sum(weights) > max_total:
            i = rng.choice([i for i, w in enumerate(weights) if w])
            weights[i] -= 1
    last = rng.randrange(n) if with_last and n and rng.random() < 0.5 else None
    return NimGPosition(graph, tuple(weights), last)


def random_dag(rng: random.Random, size: int, max_options: int = 3, prefix: str = "n") -> GameDag:
    """Random DAG whose options always point to lower-numbered nodes."""
    options = []
    for i in range(size):
        k = rng.randint(0, min(i, max_options))
        options.append(rng.sample(range(i), k))
    return GameDag(options, [f"{prefix}{i}" for i in range(size)])


def random_vgame(rng: random.Random, n: int, dag_size: int = 5, edge_p: float = 0.5) -> VertexGamePosition:
    dag = random_dag(rng, dag_size)
    graph = random_graph(rng, n, edge_p)
    nodes = tuple(rng.randrange(dag_size) for _ in range(n))
    last = rng.randrange(n) if n and rng.random() < 0.5 else None
    return VertexGamePosition(graph, dag, nodes, last)


def star_realizations() -> list[tuple[str, GameDagNode, GameDagNode]]:
    """Structurally different games of value *1 and *2, as (name, g1, g2)."""
    heaps = GameDag([[], [0], [0, 1]], ["h0", "h1", "h2"])
    # *1 with two distinct terminal options; *2 over both of them and that *1
    wide = GameDag([[], [], [0, 1], [0, 1, 2]], ["z0", "z1", "one", "two"])
    # plain *1; *2 carrying a reversible option to *3
    rev = GameDag([[], [0], [0, 1], [0, 1, 2], [0, 1, 3]], ["h0", "h1", "h2", "h3", "two"])
    return [
        ("heaps", GameDagNode(heaps, 1), GameDagNode(heaps, 2)),
        ("wide", GameDagNode(wide, 2), GameDagNode(wide, 3)),
        ("rev", GameDagNode(rev, 1), GameDagNode(rev, 4)),
    ]


def deep_realizations() -> list[tuple[str, GameDagNode, GameDagNode]]:
    """*1 games with long play sequences.  Only tractable on very small digraphs."""
    chain = GameDag([[], [0], [1], [2], [0, 1]], ["e0", "s1", "e2", "s3", "two"])
    fork = GameDag([[], [0], [0, 1], [0, 2], [0, 1]], ["h0", "h1", "h2", "one", "two"])
    return [
        ("chain", GameDagNode(chain, 3), GameDagNode(chain, 4)),
        ("fork", GameDagNode(fork, 3), GameDagNode(fork, 4)),
    ]
