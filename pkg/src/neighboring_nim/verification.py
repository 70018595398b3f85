"""Exhaustive checks that the arc gadget behaves like a directed arc.

Each check enumerates every state reachable from a reduced Geography
instance and asks the solver about the positions it cares about:

* backward moves: after a play on ``X.z``, taking ``g`` of any gadget
  ending at ``z`` must hand the opponent a win;
* scripted traversal: after ``X.y(1), a(1)`` every move that leaves both
  forward scripts must hand the opponent a win;
* safe sequences: while walking a script, whoever is winning keeps winning.

"A move hands the opponent a win" means the position after it is N.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .core import NimGMove, NimGPosition, is_legal
from .geography import GeographyInstance
from .reduction import SCRIPTS, GadgetMap, reduce_geography
from .solver import DEFAULT_STATE_CAP, Solver, path_to


class IllegalScriptError(ValueError):
    def __init__(self, step: int, move: NimGMove):
        super().__init__(f"script move {step} ({move.vertex}({move.take})) is illegal")
        self.step = step
        self.move = move


@dataclass
class Violation:
    kind: str
    state_key: str
    move: str
    expected: Optional[str]
    actual: Optional[str]
    path: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "state_key": self.state_key,
            "move": self.move,
            "expected": self.expected,
            "actual": self.actual,
            "path": self.path,
        }


@dataclass
class VerificationReport:
    property: str
    instances_checked: int = 0
    situations: int = 0
    violations: list[Violation] = field(default_factory=list)
    coverage: Counter = field(default_factory=Counter)

    @property
    def passed(self) -> bool:
        return not self.violations

    def merge(self, other: "VerificationReport") -> None:
        self.instances_checked += other.instances_checked
        self.situations += other.situations
        self.violations.extend(other.violations)
        self.coverage.update(other.coverage)

    def to_dict(self) -> dict:
        return {
            "property": self.property,
            "instances_checked": self.instances_checked,
            "situations": self.situations,
            "violations": [v.to_dict() for v in self.violations],
            "coverage": dict(sorted(self.coverage.items())),
            "pass": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def render(self, max_violations: int = 10) -> str:
        lines = [
            f"{self.property}: {'PASS' if self.passed else 'FAIL'}",
            f"  instances checked: {self.instances_checked}",
            f"  situations checked: {self.situations}",
            f"  violations: {len(self.violations)}",
        ]
        for name, count in sorted(self.coverage.items()):
            lines.append(f"  covered {name}: {count}")
        for v in self.violations[:max_violations]:
            lines.append(
                f"  ! {v.kind}: {v.move} (expected {v.expected}, got {v.actual}) after {' '.join(v.path) or '<start>'}"
            )
        if len(self.violations) > max_violations:
            lines.append(f"  ... {len(self.violations) - max_violations} more")
        return "\n".join(lines)


class _Context:
    """A reduced instance with its solver and reachable-state map."""

    def __init__(self, pos: NimGPosition, gmap: GadgetMap, state_cap: int):
        self.pos = pos
        self.gmap = gmap
        # room for weights up to 2 even when a mutated position has smaller ones
        self.solver = Solver(pos.graph, max(2, max(pos.weights, default=0)), state_cap=state_cap)
        self.root = self.solver.key(pos)
        self.parents = self.solver.reachable(self.root)
        self.x_of = {xv: v for v, xv in enumerate(gmap.x)}

    def last(self, key: int) -> Optional[int]:
        return (key & self.solver.codec.last_mask) - 1

    def weight(self, key: int, v: int) -> int:
        return self.solver.codec.weight(key, v)

    def play(self, key: int, vertex: int, take: int = 1) -> int:
        return (key & ~self.solver.codec.last_mask | (vertex + 1)) - take * self.solver._unit[vertex]

    def with_zeroed(self, key: int, vertices: Sequence[int], last: int) -> int:
        c = self.solver.codec
        for v in vertices:
            key &= ~(c.mask << c.shifts[v])
        return key & ~c.last_mask | (last + 1)

    def path(self, key: int, extra: Sequence[NimGMove] = ()) -> list[str]:
        g = self.pos.graph
        return [m.describe(g) for m in [*path_to(self.parents, key), *extra]]

    def violation(self, kind: str, key: int, move: NimGMove, expected, actual, extra=()) -> Violation:
        return Violation(
            kind,
            self.solver.state_key(key).hex(),
            move.describe(self.pos.graph),
            expected,
            actual,
            self.path(key, extra),
        )


def _context(gg: GeographyInstance, reduced, state_cap: int) -> _Context:
    pos, gmap = reduced if reduced is not None else reduce_geography(gg)
    return _Context(pos, gmap, state_cap)


def verify_no_backwards(
    gg: GeographyInstance,
    *,
    reduced: Optional[tuple[NimGPosition, GadgetMap]] = None,
    state_cap: int = DEFAULT_STATE_CAP,
) -> VerificationReport:
    """Every play on ``g`` of an arc into ``z``, made right after a play on ``X.z``, loses."""
    return _no_backwards(_context(gg, reduced, state_cap))


def _no_backwards(ctx: _Context) -> VerificationReport:
    gmap, solver = ctx.gmap, ctx.solver
    report = VerificationReport("no-backwards", instances_checked=1)
    for key in ctx.parents:
        last = ctx.last(key)
        z = ctx.x_of.get(last)
        if z is None:
            continue
        for arc in gmap.incoming(z):
            gadget = gmap.gadget(arc)
            if not ctx.weight(key, gadget.g):
                continue
            report.situations += 1
            child = ctx.play(key, gadget.g)
            # which way the game would go if play left the gadget at X.y
            xy = gmap.x[arc[0]]
            if ctx.weight(key, xy):
                exit_key = ctx.with_zeroed(key, [*gadget, xy], xy)
                report.coverage["X_y-winning" if not solver.is_n(exit_key) else "X_y-losing"] += 1
            else:
                report.coverage["X_y-losing"] += 1
            if not solver.is_n(child):
                move = NimGMove(gadget.g, 1)
                report.violations.append(
                    ctx.violation("backward-move-not-losing", key, move, "N", "P", [move])
                )
    return report


def _move_name(gmap: GadgetMap, arc: tuple[int, int], move: NimGMove, labels) -> str:
    names = {gmap.x[arc[0]]: "X_y", gmap.x[arc[1]]: "X_z"}
    names.update({v: letter for letter, v in gmap.gadget(arc)._asdict().items()})
    return f"{names.get(move.vertex, labels[move.vertex])}({move.take})"


def verify_scripts(
    gg: GeographyInstance,
    *,
    reduced: Optional[tuple[NimGPosition, GadgetMap]] = None,
    state_cap: int = DEFAULT_STATE_CAP,
) -> VerificationReport:
    """After ``X.y(1), a(1)`` every move off both forward scripts must lose.

    Deviations are tallied in ``coverage`` under names like
    ``"c(1) instead of e(1)"``; ``X_y``/``X_z`` stand for the arc's ends.
    Where the scripts fork, the expected move is named after the longer script.
    """
    return _scripts(_context(gg, reduced, state_cap))


def _scripts(ctx: _Context) -> VerificationReport:
    gmap, solver = ctx.gmap, ctx.solver
    labels = ctx.pos.graph.labels
    report = VerificationReport("stick-to-the-script", instances_checked=1)
    for key in ctx.parents:
        y = ctx.x_of.get(ctx.last(key))
        if y is None:
            continue
        for arc in gmap.outgoing(y):
            a = gmap.gadget(arc).a
            if ctx.weight(key, a) != 1:
                continue
            report.situations += 1
            entry = ctx.play(key, a)
            head = gmap.x[arc[1]]
            if ctx.weight(entry, head):
                exit_key = ctx.with_zeroed(entry, [*gmap.gadget(arc), head], head)
                report.coverage["X_z-winning" if not solver.is_n(exit_key) else "X_z-losing"] += 1
            else:
                report.coverage["X_z-visited"] += 1
            scripts = [[gmap.vertex(arc, letter) for letter in s] for s in SCRIPTS]
            prefixes: dict[tuple[int, ...], int] = {(): entry}
            frontier = [()]
            while frontier:
                prefix = frontier.pop()
                state = prefixes[prefix]
                i = len(prefix)
                following = [s for s in scripts if tuple(s[:i]) == prefix and len(s) > i]
                if not following:
                    continue
                expected = {s[i] for s in following}
                shown = NimGMove(following[-1][i], 1)
                here = [NimGMove(gmap.x[arc[0]], 1), NimGMove(a, 1), *(NimGMove(v, 1) for v in prefix)]
                for move, child in solver.moves(state):
                    if move.take == 1 and move.vertex in expected:
                        continue
                    name = f"{_move_name(gmap, arc, move, labels)} instead of {_move_name(gmap, arc, shown, labels)}"
                    report.coverage[name] += 1
                    if not solver.is_n(child):
                        report.violations.append(
                            ctx.violation("deviation-not-losing", key, move, "N", "P", [*here[1:], move])
                        )
                for v in sorted(expected):
                    move = NimGMove(v, 1)
                    if not ctx.weight(state, v) or not _adjacent(ctx, state, v):
                        if v == head and not ctx.weight(state, v):
                            report.coverage["exit blocked (X_z visited)"] += 1
                            continue
                        report.violations.append(
                            ctx.violation("script-illegal", key, move, "legal", "illegal", [*here[1:], move])
                        )
                        continue
                    nxt = (*prefix, v)
                    if nxt not in prefixes:
                        prefixes[nxt] = ctx.play(state, v)
                        frontier.append(nxt)
    return report


def _adjacent(ctx: _Context, key: int, v: int) -> bool:
    last = ctx.last(key)
    return last < 0 or last == v or ctx.pos.graph.has_edge(last, v)


def verify_optimal_sequence(
    pos: NimGPosition,
    script: Sequence[NimGMove],
    *,
    solver: Optional[Solver] = None,
    state_cap: int = DEFAULT_STATE_CAP,
) -> VerificationReport:
    """Along ``script``, every move made by a player who is winning must keep them winning."""
    solver = solver or Solver.for_position(pos, state_cap=state_cap)
    report = VerificationReport("optimal-sequence", instances_checked=1)
    graph = pos.graph
    current = pos
    for step, move in enumerate(script):
        if not is_legal(current, move):
            raise IllegalScriptError(step, move)
        key = solver.key(current)
        weights = list(current.weights)
        weights[move.vertex] -= move.take
        nxt = NimGPosition(graph, tuple(weights), move.vertex)
        report.situations += 1
        if solver.is_n(key) and solver.is_n(solver.key(nxt)):
            report.violations.append(
                Violation(
                    "scripted-move-loses-win",
                    solver.state_key(key).hex(),
                    f"step {step}: {move.describe(graph)}",
                    "P",
                    "N",
                    [m.describe(graph) for m in script[: step + 1]],
                )
            )
        current = nxt
    return report


def verify_safe_sequences(
    gg: GeographyInstance,
    *,
    reduced: Optional[tuple[NimGPosition, GadgetMap]] = None,
    state_cap: int = DEFAULT_STATE_CAP,
) -> VerificationReport:
    """Both forward scripts are optimal from every reachable gadget entry with ``X.z`` unvisited."""
    return _safe_sequences(_context(gg, reduced, state_cap))


def _safe_sequences(ctx: _Context) -> VerificationReport:
    gmap = ctx.gmap
    report = VerificationReport("safe-sequences", instances_checked=1)
    for key in ctx.parents:
        y = ctx.x_of.get(ctx.last(key))
        if y is None:
            continue
        for arc in gmap.outgoing(y):
            if ctx.weight(key, gmap.gadget(arc).a) != 1 or not ctx.weight(key, gmap.x[arc[1]]):
                continue
            enter = NimGMove(gmap.gadget(arc).a, 1)
            entry = ctx.solver.position(ctx.play(key, enter.vertex))
            for letters in SCRIPTS:
                script = [NimGMove(gmap.vertex(arc, letter), 1) for letter in letters]
                report.situations += 1
                try:
                    sub = verify_optimal_sequence(entry, script, solver=ctx.solver)
                except IllegalScriptError as exc:
                    report.violations.append(
                        ctx.violation("script-illegal", key, exc.move, "legal", "illegal", [enter, *script[: exc.step + 1]])
                    )
                    continue
                report.violations.extend(sub.violations)
    return report


CHECKS = {
    "no-backwards": _no_backwards,
    "stick-to-the-script": _scripts,
    "safe-sequences": _safe_sequences,
}


def verify_family(
    instances,
    checks: Sequence[str] = tuple(CHECKS),
    state_cap: int = DEFAULT_STATE_CAP,
) -> list[VerificationReport]:
    """Run the named checks over many instances, merging one report per check."""
    totals = {name: VerificationReport(name) for name in checks}
    for gg in instances:
        ctx = _context(gg, None, state_cap)
        for name in checks:
            totals[name].merge(CHECKS[name](ctx))
    return list(totals.values())
