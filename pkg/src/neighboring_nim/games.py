"""Explicit impartial games and their Neighboring composition on a graph.

A :class:`GameDag` lists, for each node, the nodes reachable in one move.
A :class:`VertexGamePosition` puts one DAG node on every vertex of a graph;
a move plays one move of the game sitting on the last-played vertex or on
one of its neighbours.  Nim heaps are the special case where node ``k`` of a
chain has options ``0..k-1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .core import GraphError, NimGPosition, Outcome, UndirectedGraph
from .solver import DEFAULT_STATE_CAP, StateCapExceeded, _mex


class GameCycleError(ValueError):
    pass


class GameDag:
    __slots__ = ("options", "labels", "_grundy")

    def __init__(self, options: Sequence[Iterable[int]], labels: Optional[Sequence[str]] = None):
        self.options: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(set(o))) for o in options)
        n = len(self.options)
        for i, opts in enumerate(self.options):
            for j in opts:
                if not 0 <= j < n:
                    raise GraphError(f"node {i} has option {j} outside 0..{n - 1}")
        self.labels: tuple[str, ...] = tuple(labels) if labels is not None else tuple(f"n{i}" for i in range(n))
        if len(self.labels) != n or len(set(self.labels)) != n:
            raise GraphError("game DAG labels must be unique, one per node")
        self._grundy: dict[int, int] = {}

    def __len__(self) -> int:
        return len(self.options)

    def canonical(self) -> tuple[int, ...]:
        """Map each node to the lowest-numbered node with an isomorphic game tree."""
        order: list[int] = []
        done: set[int] = set()
        for i in range(len(self.options)):
            self.grundy(i)  # acyclicity check
            stack = [i]
            while stack:
                v = stack[-1]
                pending = [o for o in self.options[v] if o not in done]
                if v in done:
                    stack.pop()
                elif pending:
                    stack.extend(pending)
                else:
                    done.add(v)
                    order.append(v)
                    stack.pop()
        shape_of: dict[int, frozenset] = {}
        rep: dict[frozenset, int] = {}
        canon = [0] * len(self.options)
        for v in order:
            shape = frozenset(shape_of[o] for o in self.options[v])
            shape_of[v] = shape
            canon[v] = rep.setdefault(shape, v)
        for shape, v in rep.items():
            # lowest id of each class, independent of traversal order
            members = [u for u in range(len(canon)) if shape_of[u] == shape]
            for u in members:
                canon[u] = min(members)
        return tuple(canon)

    def node(self, i: int) -> "GameDagNode":
        return GameDagNode(self, i)

    def grundy(self, i: int) -> int:
        """Grundy value of node ``i``; raises :class:`GameCycleError` on a cycle."""
        memo = self._grundy
        if i in memo:
            return memo[i]
        on_path = {i}
        stack = [(i, 0)]
        while stack:
            v, k = stack[-1]
            opts = self.options[v]
            while k < len(opts) and opts[k] in memo:
                k += 1
            if k < len(opts):
                w = opts[k]
                if w in on_path:
                    raise GameCycleError(f"option cycle through node {self.labels[w]!r}")
                stack[-1] = (v, k + 1)
                stack.append((w, 0))
                on_path.add(w)
                continue
            memo[v] = _mex(memo[o] for o in opts)
            stack.pop()
            on_path.discard(v)
        return memo[i]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GameDag) and (self.options, self.labels) == (other.options, other.labels)

    def __hash__(self) -> int:
        return hash((self.options, self.labels))

    def __repr__(self) -> str:
        return f"GameDag({len(self)} nodes)"


@dataclass(frozen=True)
class GameDagNode:
    dag: GameDag
    node: int

    def __post_init__(self) -> None:
        if not 0 <= self.node < len(self.dag):
            raise GraphError(f"node {self.node} outside DAG of {len(self.dag)} nodes")


def dag_grundy(node: GameDagNode) -> int:
    return node.dag.grundy(node.node)


def heap_dag(n: int, prefix: str = "h") -> GameDag:
    """Nim heap chain: node ``k`` (a heap of ``k`` sticks) moves to any smaller heap."""
    return GameDag([range(k) for k in range(n + 1)], [f"{prefix}{k}" for k in range(n + 1)])


def union_dags(parts: Sequence[tuple[str, GameDag]]) -> tuple[GameDag, list[int]]:
    """Disjoint union; node labels get ``<prefix>.`` prepended.  Returns (dag, offsets)."""
    options: list[list[int]] = []
    labels: list[str] = []
    offsets = []
    for prefix, dag in parts:
        off = len(options)
        offsets.append(off)
        options.extend([o + off for o in opts] for opts in dag.options)
        labels.extend(f"{prefix}.{label}" for label in dag.labels)
    return GameDag(options, labels), offsets


@dataclass(frozen=True)
class VertexGamePosition:
    graph: UndirectedGraph
    dag: GameDag
    nodes: tuple[int, ...]
    last: Optional[int] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", tuple(self.nodes))
        if len(self.nodes) != self.graph.n:
            raise GraphError(f"expected {self.graph.n} vertex games, got {len(self.nodes)}")
        for v in self.nodes:
            if not 0 <= v < len(self.dag):
                raise GraphError(f"game node {v} outside DAG")
        if self.last is not None and not 0 <= self.last < self.graph.n:
            raise GraphError(f"last vertex {self.last} out of range")

    def vertex_game(self, v: int) -> GameDagNode:
        return GameDagNode(self.dag, self.nodes[v])


class VertexGameSolver:
    """Memoized outcome / Grundy search over VertexGamePositions of one graph and DAG.

    States store one representative per class of isomorphic DAG nodes, so
    positions differing only by interchangeable subgames share a table entry.
    """

    def __init__(self, graph: UndirectedGraph, dag: GameDag, state_cap: int = DEFAULT_STATE_CAP):
        self.graph = graph
        self.dag = dag
        self.state_cap = state_cap
        self.outcomes: dict[tuple[tuple[int, ...], int], bool] = {}
        self.grundies: dict[tuple[tuple[int, ...], int], int] = {}
        self.canon = dag.canonical()  # also rejects cyclic option graphs
        c = self.canon
        self._options = tuple(tuple(sorted({c[o] for o in opts})) for opts in dag.options)
        self._all = tuple(range(graph.n))
        self._closed = tuple(tuple(sorted(graph.neighbors(v) | {v})) for v in range(graph.n))

    def children(self, state: tuple[tuple[int, ...], int]) -> list[tuple[tuple[int, ...], int]]:
        nodes, last = state
        cand = self._all if last < 0 else self._closed[last]
        options = self._options
        out = []
        for v in cand:
            for o in options[nodes[v]]:
                out.append((nodes[:v] + (o,) + nodes[v + 1 :], v))
        return out

    def state(self, pos: VertexGamePosition) -> tuple[tuple[int, ...], int]:
        return tuple(self.canon[v] for v in pos.nodes), -1 if pos.last is None else pos.last

    def moves(self, pos: VertexGamePosition) -> list[tuple[int, int, tuple[tuple[int, ...], int]]]:
        """(vertex, option node, successor state) for every move, in vertex then option order."""
        cand = self._all if pos.last is None else self._closed[pos.last]
        nodes = self.state(pos)[0]
        out = []
        for v in cand:
            for o in self.dag.options[pos.nodes[v]]:
                out.append((v, o, (nodes[:v] + (self.canon[o],) + nodes[v + 1 :], v)))
        return out

    def is_n(self, root: tuple[tuple[int, ...], int]) -> bool:
        memo = self.outcomes
        if root in memo:
            return memo[root]
        stack = [[root, self.children(root), 0]]
        while stack:
            frame = stack[-1]
            key, kids, i = frame
            result = False
            descend = None
            while i < len(kids):
                r = memo.get(kids[i])
                if r is None:
                    descend = kids[i]
                    break
                if not r:
                    result = True
                    break
                i += 1
            if descend is not None:
                frame[2] = i
                stack.append([descend, self.children(descend), 0])
                continue
            memo[key] = result
            stack.pop()
            if len(memo) > self.state_cap:
                raise StateCapExceeded(self.state_cap)
        return memo[root]

    def grundy_state(self, root: tuple[tuple[int, ...], int]) -> int:
        memo = self.grundies
        if root in memo:
            return memo[root]
        stack = [[root, self.children(root), 0]]
        while stack:
            frame = stack[-1]
            key, kids, i = frame
            while i < len(kids) and kids[i] in memo:
                i += 1
            if i < len(kids):
                frame[2] = i + 1
                stack.append([kids[i], self.children(kids[i]), 0])
                continue
            memo[key] = _mex(memo[k] for k in kids)
            stack.pop()
            if len(memo) > self.state_cap:
                raise StateCapExceeded(self.state_cap)
        return memo[root]

    def outcome(self, pos: VertexGamePosition) -> Outcome:
        return Outcome.N if self.is_n(self.state(pos)) else Outcome.P

    def grundy(self, pos: VertexGamePosition) -> int:
        return self.grundy_state(self.state(pos))


def neighboring_outcome(pos: VertexGamePosition, state_cap: int = DEFAULT_STATE_CAP) -> Outcome:
    return VertexGameSolver(pos.graph, pos.dag, state_cap).outcome(pos)


def neighboring_grundy(pos: VertexGamePosition, state_cap: int = DEFAULT_STATE_CAP) -> int:
    return VertexGameSolver(pos.graph, pos.dag, state_cap).grundy(pos)


def nimg_as_vertex_game(pos: NimGPosition) -> VertexGamePosition:
    """Replace each stick count ``w`` by node ``w`` of a shared heap chain."""
    dag = heap_dag(max(pos.weights, default=0))
    return VertexGamePosition(pos.graph, dag, pos.weights, pos.last)
