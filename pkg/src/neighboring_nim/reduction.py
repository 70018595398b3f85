"""Geography -> Neighboring Nim compiler.

Every Geography vertex ``v`` becomes a one-stick vertex ``X.v``.  Every arc
``y -> z`` becomes a seven-vertex gadget::

    X.y - a - b - c - d - g - X.z
              |       |  /
              e ----- f

with two sticks on ``d`` and one on each other gadget vertex.  The start
vertex is emptied and recorded as the last-played vertex.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .core import NimGMove, NimGPosition, UndirectedGraph
from .games import GameDag, GameDagNode, VertexGamePosition, dag_grundy, union_dags
from .geography import GeographyInstance

GADGET_LETTERS = "abcdefg"
GADGET_WEIGHTS = {"a": 1, "b": 1, "c": 1, "d": 2, "e": 1, "f": 1, "g": 1}
# endpoints are letters or "X" (tail) / "Z" (head of the arc)
GADGET_EDGES = (
    ("X", "a"), ("a", "b"), ("b", "c"), ("c", "d"), ("b", "e"),
    ("e", "f"), ("d", "f"), ("d", "g"), ("f", "g"), ("g", "Z"),
)  # fmt: skip

# Forward traversals of a gadget after the entry moves X_y(1), a(1).
SCRIPTS = (
    ("b", "e", "f", "d", "g", "Z"),
    ("b", "e", "f", "d", "c", "d", "g", "Z"),
)


class Gadget(NamedTuple):
    a: int
    b: int
    c: int
    d: int
    e: int
    f: int
    g: int


class UnknownArcError(KeyError):
    pass


class WrongGameValueError(ValueError):
    def __init__(self, which: str, expected: int, actual: int):
        super().__init__(f"{which} must have Grundy value {expected}, got {actual}")
        self.which = which
        self.expected = expected
        self.actual = actual


@dataclass(frozen=True)
class GadgetMap:
    instance: GeographyInstance
    x: tuple[int, ...]  # reduced vertex of each original vertex
    gadgets: dict[tuple[int, int], Gadget]

    def gadget(self, arc: tuple[int, int]) -> Gadget:
        try:
            return self.gadgets[arc]
        except KeyError:
            raise UnknownArcError(f"arc {arc} is not in the instance") from None

    def vertex(self, arc: tuple[int, int], letter: str) -> int:
        """Reduced vertex for a gadget letter; ``X`` and ``Z`` name the arc's tail and head."""
        y, z = arc
        if letter == "X":
            return self.x[y]
        if letter == "Z":
            return self.x[z]
        return getattr(self.gadget(arc), letter)

    def incoming(self, z: int) -> list[tuple[int, int]]:
        return [arc for arc in self.gadgets if arc[1] == z]

    def outgoing(self, y: int) -> list[tuple[int, int]]:
        return [arc for arc in self.gadgets if arc[0] == y]

    def sidecar_lines(self, reduced: UndirectedGraph) -> list[str]:
        labels = self.instance.graph.labels
        return [f"map {labels[v]} {reduced.labels[xv]}" for v, xv in enumerate(self.x)]


def gadget_label(letter: str, y: str, z: str) -> str:
    return f"{letter}.{y}.{z}"


def _layout(gg: GeographyInstance) -> tuple[list[str], list[tuple[int, int]], GadgetMap]:
    g = gg.graph
    labels = [f"X.{label}" for label in g.labels]
    x = tuple(range(g.n))
    gadgets: dict[tuple[int, int], Gadget] = {}
    edges: list[tuple[int, int]] = []
    for y, z in g.arcs():
        base = len(labels)
        labels.extend(gadget_label(letter, g.labels[y], g.labels[z]) for letter in GADGET_LETTERS)
        gadget = Gadget(*range(base, base + 7))
        gadgets[(y, z)] = gadget
        ends = {"X": x[y], "Z": x[z], **gadget._asdict()}
        edges.extend((ends[u], ends[v]) for u, v in GADGET_EDGES)
    return labels, edges, GadgetMap(gg, x, gadgets)


def reduce_geography(gg: GeographyInstance) -> tuple[NimGPosition, GadgetMap]:
    labels, edges, gmap = _layout(gg)
    graph = UndirectedGraph(labels, edges)
    weights = [1] * gg.graph.n
    for _ in gmap.gadgets:
        weights.extend(GADGET_WEIGHTS[letter] for letter in GADGET_LETTERS)
    start = gmap.x[gg.start]
    weights[start] = 0
    return NimGPosition(graph, tuple(weights), start), gmap


def without_gadget_edge(pos: NimGPosition, gmap: GadgetMap, arc: tuple[int, int], u: str, v: str) -> NimGPosition:
    """Copy of a reduced position with one gadget edge deleted (for negative controls)."""
    graph = pos.graph.without_edge(gmap.vertex(arc, u), gmap.vertex(arc, v))
    return NimGPosition(graph, pos.weights, pos.last)


def gadget_scripts(gmap: GadgetMap, arc: tuple[int, int]) -> tuple[list[NimGMove], list[NimGMove]]:
    """The two forward scripts through ``arc``'s gadget, to be played after X_y(1), a(1)."""
    gmap.gadget(arc)  # raises UnknownArcError
    first, second = (
        [NimGMove(gmap.vertex(arc, letter), 1) for letter in script] for script in SCRIPTS
    )
    return first, second


def reduce_generic(
    gg: GeographyInstance, g1: GameDagNode, g2: GameDagNode
) -> tuple[VertexGamePosition, GadgetMap]:
    """Same construction with game ``g1`` on one-stick slots and ``g2`` on every ``d``."""
    for which, node, expected in (("g1", g1, 1), ("g2", g2, 2)):
        actual = dag_grundy(node)
        if actual != expected:
            raise WrongGameValueError(which, expected, actual)
    zero = GameDag([[]], ["0"])
    dag, (off1, off2, off0) = union_dags([("g1", g1.dag), ("g2", g2.dag), ("zero", zero)])
    one, two = g1.node + off1, g2.node + off2
    labels, edges, gmap = _layout(gg)
    graph = UndirectedGraph(labels, edges)
    nodes = [one] * gg.graph.n
    for _ in gmap.gadgets:
        nodes.extend(two if letter == "d" else one for letter in GADGET_LETTERS)
    start = gmap.x[gg.start]
    nodes[start] = off0
    return VertexGamePosition(graph, dag, tuple(nodes), start), gmap
