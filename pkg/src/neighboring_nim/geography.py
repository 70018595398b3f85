"""Directed vertex Geography and its undirected, matching-solvable cousin.

Geography: a token sits on a vertex of a digraph; a move slides it along an
arc to a vertex that has not been visited yet.  A player with no move loses.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .core import GraphError, NimGPosition, Outcome, UndirectedGraph, _label_index
from .matching import max_matching_size

MAX_ORACLE_VERTICES = 24


class GeographyTooLarge(RuntimeError):
    pass


class DirectedGraph:
    __slots__ = ("labels", "successors", "_index")

    def __init__(self, labels: Sequence[str], arcs: Iterable[tuple[int, int]] = ()):
        self.labels: tuple[str, ...] = tuple(labels)
        self._index = _label_index(self.labels)
        n = len(self.labels)
        succ: list[set[int]] = [set() for _ in range(n)]
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"arc ({u}, {v}) out of range for {n} vertices")
            if u == v:
                raise GraphError(f"self-loop on {self.labels[u]!r}")
            succ[u].add(v)
        self.successors: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in succ)

    @classmethod
    def from_labeled_arcs(cls, labels: Sequence[str], arcs: Iterable[tuple[str, str]]) -> "DirectedGraph":
        index = _label_index(labels)
        return cls(labels, [(index[u], index[v]) for u, v in arcs])

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise GraphError(f"unknown vertex {label!r}") from None

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.successors[u]]

    def arc_count(self) -> int:
        return sum(len(s) for s in self.successors)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, DirectedGraph) and (self.labels, self.successors) == (
            other.labels,
            other.successors,
        )

    def __hash__(self) -> int:
        return hash((self.labels, self.successors))

    def __repr__(self) -> str:
        return f"DirectedGraph(n={self.n}, arcs={self.arc_count()})"


@dataclass(frozen=True)
class GeographyInstance:
    graph: DirectedGraph
    start: int

    def __post_init__(self) -> None:
        if not 0 <= self.start < self.graph.n:
            raise GraphError(f"start vertex {self.start} out of range")

    def initial_state(self) -> "GeographyState":
        return GeographyState(self, self.start, frozenset([self.start]))


@dataclass(frozen=True)
class GeographyState:
    instance: GeographyInstance
    token: int
    visited: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.token not in self.visited:
            raise GraphError("token must be on a visited vertex")


def geo_legal_moves(s: GeographyState) -> list[int]:
    return [v for v in s.instance.graph.successors[s.token] if v not in s.visited]


def geo_outcome(s: GeographyState | GeographyInstance, max_vertices: int = MAX_ORACLE_VERTICES) -> Outcome:
    """Outcome by exhaustive search, memoized on (token, visited bitmask)."""
    if isinstance(s, GeographyInstance):
        s = s.initial_state()
    succ = s.instance.graph.successors
    if len(succ) > max_vertices:
        raise GeographyTooLarge(f"{len(succ)} vertices exceeds the oracle limit of {max_vertices}")
    memo: dict[tuple[int, int], bool] = {}

    def wins(token: int, visited: int) -> bool:
        key = (token, visited)
        r = memo.get(key)
        if r is None:
            r = any(
                not wins(v, visited | (1 << v)) for v in succ[token] if not visited >> v & 1
            )
            memo[key] = r
        return r

    mask = 0
    for v in s.visited:
        mask |= 1 << v
    return Outcome.N if wins(s.token, mask) else Outcome.P


def delete_vertex(g: UndirectedGraph, v: int) -> UndirectedGraph:
    keep = [u for u in range(g.n) if u != v]
    new = {u: i for i, u in enumerate(keep)}
    return UndirectedGraph(
        [g.labels[u] for u in keep],
        [(new[a], new[b]) for a, b in g.edges() if v not in (a, b)],
    )


def uvg_outcome(g: UndirectedGraph, token: int) -> Outcome:
    """Undirected vertex Geography with the token already on ``token``.

    The first player wins exactly when every maximum matching covers the
    token, i.e. when deleting it shrinks the maximum matching.
    """
    if not 0 <= token < g.n:
        raise GraphError(f"token {token} out of range")
    return Outcome.N if max_matching_size(delete_vertex(g, token)) < max_matching_size(g) else Outcome.P


def _fresh_label(taken: set[str], base: str = "token") -> str:
    label = base
    i = 0
    while label in taken:
        i += 1
        label = f"{base}{i}"
    return label


def nn1_to_uvg(pos: NimGPosition) -> tuple[UndirectedGraph, int]:
    """Translate a 1-bounded Neighboring Nim position into UVG (graph, token).

    Zero-weight vertices are dead and dropped.  A zero-weight ``last`` is
    kept as the token.  With no previous move, or with a ``last`` that still
    holds its stick, a fresh token vertex is joined to every vertex that is
    currently playable.
    """
    if any(w > 1 for w in pos.weights):
        raise ValueError("nn1_to_uvg requires every weight to be 0 or 1")
    g = pos.graph
    w = pos.weights
    alive = [v for v in range(g.n) if w[v] == 1]
    if pos.last is not None and w[pos.last] == 0:
        keep = sorted(alive + [pos.last])
        new = {v: i for i, v in enumerate(keep)}
        edges = [(new[a], new[b]) for a, b in g.edges() if a in new and b in new]
        return UndirectedGraph([g.labels[v] for v in keep], edges), new[pos.last]
    new = {v: i for i, v in enumerate(alive)}
    edges = [(new[a], new[b]) for a, b in g.edges() if a in new and b in new]
    token = len(alive)
    edges += [(new[v], token) for v in pos.playable_vertices()]
    labels = [g.labels[v] for v in alive]
    labels.append(_fresh_label(set(labels)))
    return UndirectedGraph(labels, edges), token


def symmetric_digraph(g: UndirectedGraph) -> DirectedGraph:
    """Both orientations of every edge; UVG is Geography on this digraph."""
    return DirectedGraph(g.labels, [(u, v) for u in range(g.n) for v in g.neighbors(u)])


def geography_from_arcs(n: int, arcs: Iterable[tuple[int, int]], start: int, labels: Optional[Sequence[str]] = None) -> GeographyInstance:
    labels = list(labels) if labels is not None else [f"v{i}" for i in range(n)]
    return GeographyInstance(DirectedGraph(labels, arcs), start)
