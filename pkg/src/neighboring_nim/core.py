"""Graphs, positions and move rules for Neighboring Nim.

A position is an undirected graph with a stick count on every vertex and,
after the first move, the vertex that was played last.  A move takes one or
more sticks from a single vertex, which must be the last-played vertex or one
of its neighbours.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

MAX_WEIGHT = 2**32 - 1


class GraphError(ValueError):
    """Malformed graph or position."""


class IllegalMoveError(ValueError):
    pass


class Outcome(str, enum.Enum):
    P = "P"  # previous player wins
    N = "N"  # next player wins

    def __str__(self) -> str:
        return self.value


def _label_index(labels: Sequence[str]) -> dict[str, int]:
    index: dict[str, int] = {}
    for i, label in enumerate(labels):
        if label in index:
            raise GraphError(f"duplicate vertex label {label!r}")
        index[label] = i
    return index


class UndirectedGraph:
    """Simple undirected graph on dense vertex indices ``0..n-1``.

    Labels are kept only for I/O; every algorithm works on indices.
    """

    __slots__ = ("labels", "adjacency", "_index")

    def __init__(self, labels: Sequence[str], edges: Iterable[tuple[int, int]] = ()):
        self.labels: tuple[str, ...] = tuple(labels)
        self._index = _label_index(self.labels)
        n = len(self.labels)
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for {n} vertices")
            if u == v:
                raise GraphError(f"self-loop on {self.labels[u]!r}")
            adj[u].add(v)
            adj[v].add(u)
        self.adjacency: tuple[frozenset[int], ...] = tuple(frozenset(a) for a in adj)

    @classmethod
    def from_labeled_edges(cls, labels: Sequence[str], edges: Iterable[tuple[str, str]]) -> "UndirectedGraph":
        index = _label_index(labels)
        return cls(labels, [(index[u], index[v]) for u, v in edges])

    @classmethod
    def complete(cls, n: int, prefix: str = "v") -> "UndirectedGraph":
        return cls([f"{prefix}{i}" for i in range(n)], [(i, j) for i in range(n) for j in range(i + 1, n)])

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise GraphError(f"unknown vertex {label!r}") from None

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def edges(self) -> list[tuple[int, int]]:
        """Each edge once as ``(u, v)`` with ``u < v``, sorted."""
        return sorted((u, v) for u in range(self.n) for v in self.adjacency[u] if u < v)

    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def without_edge(self, u: int, v: int) -> "UndirectedGraph":
        return UndirectedGraph(self.labels, [e for e in self.edges() if e != (min(u, v), max(u, v))])

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, UndirectedGraph)
            and self.labels == other.labels
            and self.adjacency == other.adjacency
        )

    def __hash__(self) -> int:
        return hash((self.labels, self.adjacency))

    def __repr__(self) -> str:
        return f"UndirectedGraph(n={self.n}, edges={self.edge_count()})"


@dataclass(frozen=True, order=True)
class NimGMove:
    vertex: int
    take: int

    def __post_init__(self) -> None:
        if self.take < 1:
            raise IllegalMoveError(f"take must be at least 1, got {self.take}")

    def describe(self, graph: UndirectedGraph) -> str:
        return f"{graph.labels[self.vertex]}({self.take})"


@dataclass(frozen=True)
class NimGPosition:
    graph: UndirectedGraph
    weights: tuple[int, ...]
    last: Optional[int] = None

    def __post_init__(self) -> None:
        weights = tuple(int(w) for w in self.weights)
        object.__setattr__(self, "weights", weights)
        if len(weights) != self.graph.n:
            raise GraphError(f"expected {self.graph.n} weights, got {len(weights)}")
        for label, w in zip(self.graph.labels, weights):
            if not 0 <= w <= MAX_WEIGHT:
                raise GraphError(f"weight {w} of {label!r} outside [0, {MAX_WEIGHT}]")
        if self.last is not None and not 0 <= self.last < self.graph.n:
            raise GraphError(f"last vertex {self.last} out of range")

    @classmethod
    def from_labels(
        cls,
        weights: dict[str, int],
        edges: Iterable[tuple[str, str]] = (),
        last: Optional[str] = None,
    ) -> "NimGPosition":
        labels = list(weights)
        graph = UndirectedGraph.from_labeled_edges(labels, edges)
        return cls(graph, tuple(weights.values()), None if last is None else graph.index(last))

    @property
    def total(self) -> int:
        return sum(self.weights)

    def playable_vertices(self) -> list[int]:
        """Vertices a move may be made on, ascending."""
        w = self.weights
        if self.last is None:
            return [v for v in range(self.graph.n) if w[v] > 0]
        cand = set(self.graph.neighbors(self.last))
        cand.add(self.last)
        return sorted(v for v in cand if w[v] > 0)

    def with_weights(self, weights: Sequence[int], last: Optional[int] = None) -> "NimGPosition":
        return NimGPosition(self.graph, tuple(weights), last)

    def describe_last(self) -> str:
        return "-" if self.last is None else self.graph.labels[self.last]


def legal_moves(pos: NimGPosition) -> list[NimGMove]:
    return [NimGMove(v, t) for v in pos.playable_vertices() for t in range(1, pos.weights[v] + 1)]


def is_legal(pos: NimGPosition, move: NimGMove) -> bool:
    v = move.vertex
    if not 0 <= v < pos.graph.n or not 1 <= move.take <= pos.weights[v]:
        return False
    return pos.last is None or v == pos.last or pos.graph.has_edge(pos.last, v)


def apply_move(pos: NimGPosition, move: NimGMove) -> NimGPosition:
    if not is_legal(pos, move):
        raise IllegalMoveError(f"illegal move {move.vertex}({move.take}) with last={pos.describe_last()}")
    weights = list(pos.weights)
    weights[move.vertex] -= move.take
    return NimGPosition(pos.graph, tuple(weights), move.vertex)


def validate_max_weight(pos: NimGPosition, k: int) -> bool:
    if k < 0:
        raise ValueError("k must be non-negative")
    return all(w <= k for w in pos.weights)


def parse_move(pos: NimGPosition, text: str) -> NimGMove:
    """Parse ``"<label> <take>"`` or ``"<label>(<take>)"`` against a position's labels."""
    cleaned = text.replace("(", " ").replace(")", " ").split()
    if len(cleaned) != 2:
        raise IllegalMoveError(f"expected '<vertex> <take>', got {text!r}")
    try:
        vertex = pos.graph.index(cleaned[0])
        take = int(cleaned[1])
    except (GraphError, ValueError) as exc:
        raise IllegalMoveError(str(exc)) from None
    return NimGMove(vertex, take)
