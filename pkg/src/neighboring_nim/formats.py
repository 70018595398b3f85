"""Line-based instance files.

::

    nimg                      geography            vgame
    vertex a 1                vertex y             node z0
    vertex d 2                vertex z             node z1 z0
    edge a d                  arc y z              vertex a z1
    last a                    start y              edge ...   last ...

``#`` starts a comment.  Every label is declared before it is referenced,
which also makes ``node`` option lists acyclic by construction.  A
``gamedag`` file holds only ``node`` lines plus an optional ``root``.
"""
from __future__ import annotations

import re
from typing import Optional, Union

from .core import MAX_WEIGHT, NimGPosition, UndirectedGraph
from .games import GameDag, GameDagNode, VertexGamePosition
from .geography import DirectedGraph, GeographyInstance

LABEL_RE = re.compile(r"[A-Za-z0-9_.]+\Z")
KINDS = ("nimg", "geography", "vgame", "gamedag")

Instance = Union[NimGPosition, GeographyInstance, VertexGamePosition, GameDagNode]


class ParseError(ValueError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


def _tokens(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        toks = raw.split("#", 1)[0].split()
        if toks:
            yield number, toks


class _Builder:
    def __init__(self, kind: str):
        self.kind = kind
        self.labels: list[str] = []
        self.index: dict[str, int] = {}
        self.values: list[int] = []  # weights, or DAG node ids for vgame
        self.pairs: list[tuple[int, int]] = []
        self.seen_pairs: set[tuple[int, int]] = set()
        self.marker: Optional[int] = None  # last / start
        self.node_labels: list[str] = []
        self.node_index: dict[str, int] = {}
        self.options: list[list[int]] = []
        self.root: Optional[int] = None

    def label(self, line: int, tok: str) -> str:
        if not LABEL_RE.match(tok):
            raise ParseError(line, f"bad label {tok!r}")
        return tok

    def vertex_ref(self, line: int, tok: str) -> int:
        try:
            return self.index[tok]
        except KeyError:
            raise ParseError(line, f"unknown vertex {tok!r}") from None

    def node_ref(self, line: int, tok: str) -> int:
        try:
            return self.node_index[tok]
        except KeyError:
            raise ParseError(line, f"unknown node {tok!r}") from None

    def add_vertex(self, line: int, args: list[str]) -> None:
        if self.kind == "gamedag":
            raise ParseError(line, "'vertex' not allowed in a gamedag file")
        want = 1 if self.kind == "geography" else 2
        if len(args) != want:
            form = {"nimg": "vertex <label> <weight>", "geography": "vertex <label>", "vgame": "vertex <label> <node>"}
            raise ParseError(line, f"expected '{form[self.kind]}'")
        label = self.label(line, args[0])
        if label in self.index:
            raise ParseError(line, f"duplicate vertex {label!r}")
        value = 0
        if self.kind == "nimg":
            if not re.fullmatch(r"[0-9]+", args[1]):
                raise ParseError(line, f"bad weight {args[1]!r}")
            value = int(args[1])
            if value > MAX_WEIGHT:
                raise ParseError(line, f"weight {value} exceeds {MAX_WEIGHT}")
        elif self.kind == "vgame":
            value = self.node_ref(line, args[1])
        self.index[label] = len(self.labels)
        self.labels.append(label)
        self.values.append(value)

    def add_pair(self, line: int, keyword: str, args: list[str]) -> None:
        wanted = "arc" if self.kind == "geography" else "edge"
        if keyword != wanted or self.kind == "gamedag":
            raise ParseError(line, f"'{keyword}' not allowed in a {self.kind} file")
        if len(args) != 2:
            raise ParseError(line, f"expected '{keyword} <u> <v>'")
        u, v = (self.vertex_ref(line, t) for t in args)
        if u == v:
            raise ParseError(line, f"self-loop on {args[0]!r}")
        key = (u, v) if keyword == "arc" else (min(u, v), max(u, v))
        if key not in self.seen_pairs:
            self.seen_pairs.add(key)
            self.pairs.append((u, v))

    def set_marker(self, line: int, keyword: str, args: list[str]) -> None:
        wanted = "start" if self.kind == "geography" else "last"
        if keyword != wanted or self.kind == "gamedag":
            raise ParseError(line, f"'{keyword}' not allowed in a {self.kind} file")
        if len(args) != 1:
            raise ParseError(line, f"expected '{keyword} <label>'")
        if self.marker is not None:
            raise ParseError(line, f"'{keyword}' given twice")
        self.marker = self.vertex_ref(line, args[0])

    def add_node(self, line: int, args: list[str]) -> None:
        if self.kind not in ("vgame", "gamedag"):
            raise ParseError(line, f"'node' not allowed in a {self.kind} file")
        if not args:
            raise ParseError(line, "expected 'node <label> [<option>...]'")
        label = self.label(line, args[0])
        if label in self.node_index:
            raise ParseError(line, f"duplicate node {label!r}")
        opts = [self.node_ref(line, t) for t in args[1:]]
        self.node_index[label] = len(self.node_labels)
        self.node_labels.append(label)
        self.options.append(opts)

    def set_root(self, line: int, args: list[str]) -> None:
        if self.kind != "gamedag":
            raise ParseError(line, f"'root' not allowed in a {self.kind} file")
        if len(args) != 1:
            raise ParseError(line, "expected 'root <node>'")
        self.root = self.node_ref(line, args[0])

    def build(self, end_line: int) -> Instance:
        if self.kind == "nimg":
            return NimGPosition(UndirectedGraph(self.labels, self.pairs), tuple(self.values), self.marker)
        if self.kind == "geography":
            if self.marker is None:
                raise ParseError(end_line, "missing 'start'")
            return GeographyInstance(DirectedGraph(self.labels, self.pairs), self.marker)
        dag = GameDag(self.options, self.node_labels)
        if self.kind == "vgame":
            return VertexGamePosition(UndirectedGraph(self.labels, self.pairs), dag, tuple(self.values), self.marker)
        if not self.node_labels:
            raise ParseError(end_line, "gamedag file declares no nodes")
        return GameDagNode(dag, len(dag) - 1 if self.root is None else self.root)


def parse_instance(text: str) -> Instance:
    lines = list(_tokens(text))
    if not lines:
        raise ParseError(1, "empty file; expected a header")
    line, head = lines[0]
    if len(head) != 1 or head[0] not in KINDS:
        raise ParseError(line, f"expected header {'|'.join(KINDS)}, got {' '.join(head)!r}")
    b = _Builder(head[0])
    for line, (keyword, *args) in lines[1:]:
        if keyword == "vertex":
            b.add_vertex(line, args)
        elif keyword in ("edge", "arc"):
            b.add_pair(line, keyword, args)
        elif keyword in ("last", "start"):
            b.set_marker(line, keyword, args)
        elif keyword == "node":
            b.add_node(line, args)
        elif keyword == "root":
            b.set_root(line, args)
        else:
            raise ParseError(line, f"unknown declaration {keyword!r}")
    end = lines[-1][0]
    return b.build(end)


def _topological(dag: GameDag) -> list[int]:
    order: list[int] = []
    placed: set[int] = set()
    for i in range(len(dag)):
        stack = [i]
        while stack:
            v = stack[-1]
            if v in placed:
                stack.pop()
                continue
            pending = [o for o in dag.options[v] if o not in placed]
            if pending:
                stack.extend(reversed(pending))
            else:
                placed.add(v)
                order.append(v)
                stack.pop()
    return order


def _render_nodes(dag: GameDag) -> list[str]:
    lines = []
    for v in _topological(dag):
        opts = " ".join(dag.labels[o] for o in dag.options[v])
        lines.append(f"node {dag.labels[v]} {opts}".rstrip())
    return lines


def render_instance(obj: Instance) -> str:
    """Inverse of :func:`parse_instance` (DAG nodes are written in topological order)."""
    if isinstance(obj, NimGPosition):
        g = obj.graph
        lines = ["nimg"]
        lines += [f"vertex {label} {w}" for label, w in zip(g.labels, obj.weights)]
        lines += [f"edge {g.labels[u]} {g.labels[v]}" for u, v in g.edges()]
        if obj.last is not None:
            lines.append(f"last {g.labels[obj.last]}")
    elif isinstance(obj, GeographyInstance):
        g = obj.graph
        lines = ["geography"]
        lines += [f"vertex {label}" for label in g.labels]
        lines += [f"arc {g.labels[u]} {g.labels[v]}" for u, v in g.arcs()]
        lines.append(f"start {g.labels[obj.start]}")
    elif isinstance(obj, VertexGamePosition):
        g, dag = obj.graph, obj.dag
        lines = ["vgame", *_render_nodes(dag)]
        lines += [f"vertex {label} {dag.labels[node]}" for label, node in zip(g.labels, obj.nodes)]
        lines += [f"edge {g.labels[u]} {g.labels[v]}" for u, v in g.edges()]
        if obj.last is not None:
            lines.append(f"last {g.labels[obj.last]}")
    elif isinstance(obj, GameDagNode):
        lines = ["gamedag", *_render_nodes(obj.dag), f"root {obj.dag.labels[obj.node]}"]
    else:
        raise TypeError(f"cannot render {type(obj).__name__}")
    return "\n".join(lines) + "\n"


def parse_map(text: str) -> dict[str, str]:
    """Read a reduction sidecar: ``map <original> <reduced>`` per line."""
    out: dict[str, str] = {}
    for line, toks in _tokens(text):
        if len(toks) != 3 or toks[0] != "map":
            raise ParseError(line, "expected 'map <original> <reduced>'")
        if toks[1] in out:
            raise ParseError(line, f"duplicate mapping for {toks[1]!r}")
        out[toks[1]] = toks[2]
    return out
