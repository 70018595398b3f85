"""Exact outcome and Grundy evaluation of Neighboring Nim positions.

States are packed into a single integer: every vertex weight occupies a
fixed-width bit field (width set by the largest weight of the root
position) and the low bits hold ``last + 1`` (0 for "no previous move").
The transposition table maps these integers to results.
"""
from __future__ import annotations

import functools
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional

from .core import NimGMove, NimGPosition, Outcome, UndirectedGraph, legal_moves

DEFAULT_STATE_CAP = 10**7


class StateCapExceeded(RuntimeError):
    def __init__(self, cap: int):
        super().__init__(f"state cap of {cap} exceeded; instance too large for exact solve")
        self.cap = cap


@dataclass(frozen=True)
class SolveReport:
    outcome: Outcome
    grundy: Optional[int]
    best_move: Optional[NimGMove]
    states_visited: int

    def to_dict(self, graph: Optional[UndirectedGraph] = None) -> dict:
        move = None
        if self.best_move is not None:
            move = {"vertex": self.best_move.vertex, "take": self.best_move.take}
            if graph is not None:
                move["label"] = graph.labels[self.best_move.vertex]
        return {
            "outcome": self.outcome.value,
            "grundy": self.grundy,
            "best_move": move,
            "states_visited": self.states_visited,
        }


class KeyCodec:
    """Packs (weights, last) into an int and into a canonical byte string."""

    def __init__(self, n: int, max_weight: int):
        self.n = n
        self.width = max(1, max_weight.bit_length())
        self.mask = (1 << self.width) - 1
        self.last_bits = (n + 1).bit_length()
        self.last_mask = (1 << self.last_bits) - 1
        self.shifts = tuple(self.last_bits + v * self.width for v in range(n))
        self.max_weight = self.mask
        self.nbytes = max(1, (self.last_bits + n * self.width + 7) // 8)

    def encode(self, weights: Iterable[int], last: Optional[int]) -> int:
        key = 0 if last is None else last + 1
        for shift, w in zip(self.shifts, weights):
            if w > self.mask:
                raise ValueError(f"weight {w} exceeds codec width {self.width}")
            key |= w << shift
        return key

    def decode(self, key: int) -> tuple[tuple[int, ...], Optional[int]]:
        weights = tuple((key >> s) & self.mask for s in self.shifts)
        last = (key & self.last_mask) - 1
        return weights, (None if last < 0 else last)

    def weight(self, key: int, v: int) -> int:
        return (key >> self.shifts[v]) & self.mask

    def to_bytes(self, key: int) -> bytes:
        return key.to_bytes(self.nbytes, "big")


def _mex(values: Iterable[int]) -> int:
    seen = set(values)
    m = 0
    while m in seen:
        m += 1
    return m


class Solver:
    """Memoized depth-first solver bound to one graph.

    The tables persist across calls, so one instance can answer many
    queries about positions of the same game cheaply.  ``max_weight`` bounds
    every weight the solver will ever see; it defaults to the largest weight
    of the position passed to :meth:`for_position`.
    """

    def __init__(
        self,
        graph: UndirectedGraph,
        max_weight: int,
        state_cap: int = DEFAULT_STATE_CAP,
        threads: int = 1,
    ):
        self.graph = graph
        self.codec = KeyCodec(graph.n, max_weight)
        self.state_cap = state_cap
        self.threads = max(1, threads)
        self.outcomes: dict[int, bool] = {}  # True means N
        self.grundies: dict[int, int] = {}
        c = self.codec
        self._all = tuple(range(graph.n))
        # candidate vertices after a move at v: v itself and its neighbours, ascending
        self._closed = tuple(tuple(sorted(graph.neighbors(v) | {v})) for v in range(graph.n))
        self._unit = tuple(1 << s for s in c.shifts)

    @classmethod
    def for_position(cls, pos: NimGPosition, **kwargs) -> "Solver":
        return cls(pos.graph, max(pos.weights, default=0), **kwargs)

    # -- keys ---------------------------------------------------------------

    def key(self, pos: NimGPosition) -> int:
        return self.codec.encode(pos.weights, pos.last)

    def position(self, key: int) -> NimGPosition:
        weights, last = self.codec.decode(key)
        return NimGPosition(self.graph, weights, last)

    def state_key(self, key: int) -> bytes:
        return self.codec.to_bytes(key)

    def children(self, key: int) -> list[int]:
        """Successor keys in move order (ascending vertex, then ascending take)."""
        c = self.codec
        last = (key & c.last_mask) - 1
        cand = self._all if last < 0 else self._closed[last]
        base = key & ~c.last_mask
        out = []
        shifts, mask, unit = c.shifts, c.mask, self._unit
        for v in cand:
            w = (key >> shifts[v]) & mask
            if w:
                nb = base | (v + 1)
                u = unit[v]
                for t in range(1, w + 1):
                    out.append(nb - t * u)
        return out

    def moves(self, key: int) -> list[tuple[NimGMove, int]]:
        c = self.codec
        last = (key & c.last_mask) - 1
        cand = self._all if last < 0 else self._closed[last]
        base = key & ~c.last_mask
        out = []
        for v in cand:
            w = c.weight(key, v)
            for t in range(1, w + 1):
                out.append((NimGMove(v, t), (base | (v + 1)) - t * self._unit[v]))
        return out

    # -- outcome ------------------------------------------------------------

    def _solve_outcome(self, root: int) -> bool:
        memo = self.outcomes
        if root in memo:
            return memo[root]
        children = self.children
        # frame: [key, child list, next index]
        stack = [[root, children(root), 0]]
        while stack:
            frame = stack[-1]
            key, kids, i = frame
            result = False
            descend = None
            while i < len(kids):
                child = kids[i]
                r = memo.get(child)
                if r is None:
                    descend = child
                    break
                if not r:
                    result = True
                    break
                i += 1
            if descend is not None:
                frame[2] = i
                stack.append([descend, children(descend), 0])
                continue
            memo[key] = result
            stack.pop()
            if len(memo) > self.state_cap:
                raise StateCapExceeded(self.state_cap)
        return memo[root]

    def is_n(self, key: int) -> bool:
        if key in self.outcomes:
            return self.outcomes[key]
        if self.threads > 1:
            kids = self.children(key)
            with ThreadPoolExecutor(self.threads) as pool:
                results = list(pool.map(self._solve_outcome, kids))
            self.outcomes[key] = any(not r for r in results)
            return self.outcomes[key]
        return self._solve_outcome(key)

    def outcome(self, pos: NimGPosition) -> Outcome:
        return Outcome.N if self.is_n(self.key(pos)) else Outcome.P

    def expansion_count(self, root: int) -> int:
        """Number of states a single-threaded outcome search from ``root`` expands.

        Requires ``root`` to be solved.  The count is independent of the
        order in which the table was filled, so threaded and sequential
        runs report the same number.
        """
        memo = self.outcomes
        seen = {root}
        todo = [root]
        while todo:
            key = todo.pop()
            for child in self.children(key):
                if child not in seen:
                    seen.add(child)
                    todo.append(child)
                if not memo[child]:
                    break
        return len(seen)

    # -- grundy -------------------------------------------------------------

    def _solve_grundy(self, root: int) -> int:
        memo = self.grundies
        if root in memo:
            return memo[root]
        children = self.children
        stack = [[root, children(root), 0]]
        while stack:
            frame = stack[-1]
            key, kids, i = frame
            while i < len(kids) and kids[i] in memo:
                i += 1
            if i < len(kids):
                frame[2] = i + 1
                stack.append([kids[i], children(kids[i]), 0])
                continue
            memo[key] = _mex(memo[k] for k in kids)
            stack.pop()
            if len(memo) > self.state_cap:
                raise StateCapExceeded(self.state_cap)
        return memo[root]

    def grundy_key(self, key: int) -> int:
        if key in self.grundies:
            return self.grundies[key]
        if self.threads > 1:
            kids = self.children(key)
            with ThreadPoolExecutor(self.threads) as pool:
                values = list(pool.map(self._solve_grundy, kids))
            self.grundies[key] = _mex(values)
            return self.grundies[key]
        return self._solve_grundy(key)

    def grundy(self, pos: NimGPosition) -> int:
        return self.grundy_key(self.key(pos))

    # -- moves --------------------------------------------------------------

    def best_move_key(self, key: int) -> Optional[NimGMove]:
        moves = self.moves(key)
        if not moves:
            return None
        if self.is_n(key):
            for move, child in moves:
                if not self.is_n(child):
                    return move
        return moves[0][0]

    def best_move(self, pos: NimGPosition) -> Optional[NimGMove]:
        return self.best_move_key(self.key(pos))

    def reachable(self, root: int, cap: Optional[int] = None) -> dict[int, Optional[tuple[int, NimGMove]]]:
        """Breadth-first map of every reachable key to (parent key, move), root -> None."""
        cap = self.state_cap if cap is None else cap
        parents: dict[int, Optional[tuple[int, NimGMove]]] = {root: None}
        queue = deque([root])
        while queue:
            key = queue.popleft()
            for move, child in self.moves(key):
                if child not in parents:
                    parents[child] = (key, move)
                    if len(parents) > cap:
                        raise StateCapExceeded(cap)
                    queue.append(child)
        return parents


def path_to(parents: dict[int, Optional[tuple[int, NimGMove]]], key: int) -> list[NimGMove]:
    path = []
    step = parents[key]
    while step is not None:
        key, move = step
        path.append(move)
        step = parents[key]
    path.reverse()
    return path


def solve(
    pos: NimGPosition,
    *,
    with_grundy: bool = False,
    state_cap: int = DEFAULT_STATE_CAP,
    threads: int = 1,
) -> SolveReport:
    """Solve one position with a fresh transposition table."""
    solver = Solver.for_position(pos, state_cap=state_cap, threads=threads)
    root = solver.key(pos)
    is_n = solver.is_n(root)
    move = solver.best_move_key(root)
    visited = solver.expansion_count(root)
    g = None
    if with_grundy:
        g = solver.grundy_key(root)
        visited = max(visited, len(solver.grundies))
    return SolveReport(Outcome.N if is_n else Outcome.P, g, move, visited)


def outcome(pos: NimGPosition, state_cap: int = DEFAULT_STATE_CAP) -> Outcome:
    return Solver.for_position(pos, state_cap=state_cap).outcome(pos)


def grundy(pos: NimGPosition, state_cap: int = DEFAULT_STATE_CAP) -> int:
    return Solver.for_position(pos, state_cap=state_cap).grundy(pos)


def best_move(pos: NimGPosition, state_cap: int = DEFAULT_STATE_CAP) -> Optional[NimGMove]:
    return Solver.for_position(pos, state_cap=state_cap).best_move(pos)


def nim_xor_outcome(heaps: Iterable[int]) -> Outcome:
    return Outcome.N if functools.reduce(lambda a, b: a ^ b, heaps, 0) else Outcome.P


def state_key(pos: NimGPosition) -> bytes:
    codec = KeyCodec(pos.graph.n, max(pos.weights, default=0))
    return codec.to_bytes(codec.encode(pos.weights, pos.last))


def enumerate_reachable(pos: NimGPosition, cap: int) -> set[bytes]:
    if cap <= 0:
        raise ValueError("cap must be positive")
    solver = Solver.for_position(pos, state_cap=cap)
    return {solver.state_key(k) for k in solver.reachable(solver.key(pos), cap)}


__all__ = [
    "DEFAULT_STATE_CAP",
    "KeyCodec",
    "SolveReport",
    "Solver",
    "StateCapExceeded",
    "best_move",
    "enumerate_reachable",
    "grundy",
    "legal_moves",
    "nim_xor_outcome",
    "outcome",
    "path_to",
    "solve",
    "state_key",
]
