"""``nbnim`` command line.

Exit codes: 0 success, 1 usage or parse error, 2 state cap hit,
3 verification violation.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .core import (
    GraphError,
    IllegalMoveError,
    NimGPosition,
    apply_move,
    legal_moves,
    parse_move,
    validate_max_weight,
)
from .formats import ParseError, parse_instance, render_instance
from .games import GameCycleError, GameDagNode, VertexGamePosition, VertexGameSolver, dag_grundy
from .generators import all_geography_instances, random_geography, random_nimg, random_vgame
from .geography import GeographyInstance, GeographyState, GeographyTooLarge, geo_legal_moves, geo_outcome
from .reduction import WrongGameValueError, reduce_generic, reduce_geography
from .solver import DEFAULT_STATE_CAP, Solver, StateCapExceeded
from .verification import verify_family

EXIT_OK, EXIT_USAGE, EXIT_CAP, EXIT_VIOLATION = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str, kinds: Sequence[type]):
    obj = parse_instance(_read(path))
    if not isinstance(obj, tuple(kinds)):
        names = ", ".join(k.__name__ for k in kinds)
        raise UsageError(f"{path}: expected one of {names}, got {type(obj).__name__}")
    return obj


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _check_bound(pos, k: Optional[int]) -> None:
    if k is None:
        return
    if not isinstance(pos, NimGPosition):
        raise UsageError("--max-weight applies to nimg instances only")
    if not validate_max_weight(pos, k):
        worst = max(pos.weights)
        raise UsageError(f"instance is not {k}-bounded (largest weight {worst})")


def _emit(args, data: dict, text_lines: list[str]) -> None:
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        print("\n".join(text_lines))


# -- commands -----------------------------------------------------------------


def cmd_solve(args) -> int:
    obj = _load(args.file, [NimGPosition, GeographyInstance, VertexGamePosition])
    _check_bound(obj, args.max_weight)
    if isinstance(obj, NimGPosition):
        solver = Solver.for_position(obj, state_cap=args.state_cap, threads=args.threads)
        root = solver.key(obj)
        out = solver.outcome(obj).value
        move = solver.best_move_key(root)
        visited = solver.expansion_count(root)
        best = None if move is None else f"{obj.graph.labels[move.vertex]} {move.take}"
    elif isinstance(obj, VertexGamePosition):
        vs = VertexGameSolver(obj.graph, obj.dag, args.state_cap)
        state = vs.state(obj)
        out = "N" if vs.is_n(state) else "P"
        best = None
        for v, option, child in vs.moves(obj):
            if out == "P" or not vs.is_n(child):
                best = f"{obj.graph.labels[v]} {obj.dag.labels[option]}"
                break
        visited = len(vs.outcomes)
    else:
        out = geo_outcome(obj).value
        start = obj.initial_state()
        best = None
        for v in geo_legal_moves(start):
            nxt = GeographyState(obj, v, start.visited | {v})
            if out == "P" or geo_outcome(nxt).value == "P":
                best = obj.graph.labels[v]
                break
        visited = None
    data = {"outcome": out, "best_move": best, "states_visited": visited}
    lines = [f"outcome: {out}", f"best_move: {best or 'none'}"]
    if visited is not None:
        lines.append(f"states_visited: {visited}")
    _emit(args, data, lines)
    return EXIT_OK


def cmd_grundy(args) -> int:
    obj = _load(args.file, [NimGPosition, VertexGamePosition, GameDagNode])
    _check_bound(obj, args.max_weight)
    if isinstance(obj, NimGPosition):
        value = Solver.for_position(obj, state_cap=args.state_cap, threads=args.threads).grundy(obj)
    elif isinstance(obj, VertexGamePosition):
        value = VertexGameSolver(obj.graph, obj.dag, args.state_cap).grundy(obj)
    else:
        value = dag_grundy(obj)
    _emit(args, {"grundy": value}, [f"grundy: {value}"])
    return EXIT_OK


def cmd_reduce(args) -> int:
    gg = _load(args.file, [GeographyInstance])
    if (args.g1 is None) != (args.g2 is None):
        raise UsageError("--g1 and --g2 must be given together")
    if args.g1 is not None:
        g1 = _load(args.g1, [GameDagNode])
        g2 = _load(args.g2, [GameDagNode])
        out, gmap = reduce_generic(gg, g1, g2)
    else:
        out, gmap = reduce_geography(gg)
        _check_bound(out, args.max_weight)
    _write(args.output, render_instance(out))
    if args.map:
        Path(args.map).write_text("\n".join(gmap.sidecar_lines(out.graph)) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.files:
        instances = [_load(f, [GeographyInstance]) for f in args.files]
    else:
        instances = list(all_geography_instances(args.family))
    reports = verify_family(instances, state_cap=args.state_cap)
    if args.json:
        print(json.dumps([r.to_dict() for r in reports], sort_keys=True))
    else:
        print("\n".join(r.render() for r in reports))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VIOLATION


def cmd_gen(args) -> int:
    rng = random.Random(args.seed)
    if args.kind == "geography":
        make = lambda: random_geography(rng, args.vertices, args.arcs)  # noqa: E731
    elif args.kind == "nimg":
        make = lambda: random_nimg(rng, args.vertices, args.max_weight if args.max_weight is not None else 2, args.edge_prob)  # noqa: E731
    else:
        make = lambda: random_vgame(rng, args.vertices, args.dag_size, args.edge_prob)  # noqa: E731
    if args.count == 1:
        _write(args.output, render_instance(make()))
        return EXIT_OK
    if not args.output:
        raise UsageError("--count > 1 needs --output DIR")
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    for i in range(args.count):
        (out / f"{args.kind}_{i:04d}.txt").write_text(render_instance(make()))
    return EXIT_OK


def _board(pos: NimGPosition) -> str:
    g = pos.graph
    cells = " ".join(f"{label}:{w}" for label, w in zip(g.labels, pos.weights))
    return f"[{cells}] last={pos.describe_last()}"


def cmd_play(args) -> int:
    pos = _load(args.file, [NimGPosition])
    _check_bound(pos, args.max_weight)
    solver = Solver.for_position(pos, state_cap=args.state_cap)
    human_turn = not args.engine_first
    stdin = sys.stdin
    print("enter moves as '<vertex> <take>'; 'moves' lists legal moves, 'quit' stops")
    while True:
        print(_board(pos))
        moves = legal_moves(pos)
        if not moves:
            loser = "you" if human_turn else "engine"
            print(f"no legal move: {loser} cannot move and {'lose' if human_turn else 'loses'}")
            return EXIT_OK
        if human_turn:
            sys.stdout.write("> ")
            sys.stdout.flush()
            line = stdin.readline()
            if not line:
                print()
                return EXIT_OK
            line = line.strip()
            if line == "quit":
                return EXIT_OK
            if line == "moves":
                print(" ".join(m.describe(pos.graph) for m in moves))
                continue
            if not line:
                continue
            try:
                pos = apply_move(pos, parse_move(pos, line))
            except IllegalMoveError as exc:
                print(f"illegal: {exc}")
                continue
        else:
            move = solver.best_move(pos)
            print(f"engine plays {pos.graph.labels[move.vertex]} {move.take}")
            pos = apply_move(pos, move)
        human_turn = not human_turn


def bench_rows(family: str, sizes: Sequence[int], count: int, seed: int, state_cap: int) -> list[dict]:
    rows = []
    for n in sizes:
        rng = random.Random(f"{seed}:{family}:{n}")
        states, seconds, vertices, capped = [], [], [], 0
        for _ in range(count):
            if family == "reduced":
                pos, _ = reduce_geography(random_geography(rng, n))
            else:
                pos = random_nimg(rng, n, max_weight=2)
            solver = Solver.for_position(pos, state_cap=state_cap)
            t0 = time.perf_counter()
            try:
                solver.outcome(pos)
            except StateCapExceeded:
                capped += 1
                continue
            seconds.append(time.perf_counter() - t0)
            states.append(len(solver.outcomes))
            vertices.append(pos.graph.n)
        k = max(len(states), 1)
        rows.append(
            {
                "family": family,
                "n": n,
                "instances": len(states),
                "vertices_mean": round(sum(vertices) / k, 2),
                "states_mean": round(sum(states) / k, 2),
                "seconds_mean": round(sum(seconds) / k, 6),
                "capped": capped,
            }
        )
    return rows


BENCH_FIELDS = ["family", "n", "instances", "vertices_mean", "states_mean", "seconds_mean", "capped"]


def cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s]
    rows = []
    for family in args.family:
        rows += bench_rows(family, sizes, args.count, args.seed, args.state_cap)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=BENCH_FIELDS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    sys.stdout.write(buf.getvalue())
    if args.csv:
        Path(args.csv).write_text(buf.getvalue())
    if args.figure:
        from .plotting import plot_bench

        plot_bench(rows, args.figure)
    return EXIT_OK


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="nbnim", description="Neighboring Nim solver, Geography reduction and gadget verifier.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, threads: bool = False, bound: bool = True, json_out: bool = True):
        sp.add_argument("--state-cap", type=int, default=DEFAULT_STATE_CAP, metavar="N")
        if threads:
            sp.add_argument("--threads", type=int, default=1, metavar="N")
        if bound:
            sp.add_argument("--max-weight", type=int, default=None, metavar="K")
        if json_out:
            sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("solve", help="outcome class and best move")
    sp.add_argument("file")
    common(sp, threads=True)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("grundy", help="Grundy value (nimber)")
    sp.add_argument("file")
    common(sp, threads=True)
    sp.set_defaults(func=cmd_grundy)

    sp = sub.add_parser("reduce", help="compile a geography file into nimg (or vgame with --g1/--g2)")
    sp.add_argument("file")
    sp.add_argument("-o", "--output")
    sp.add_argument("--map", metavar="FILE", help="write the vertex map sidecar here")
    sp.add_argument("--g1", metavar="GAMEDAG", help="game of value *1 for one-stick slots")
    sp.add_argument("--g2", metavar="GAMEDAG", help="game of value *2 for d slots")
    sp.add_argument("--max-weight", type=int, default=None, metavar="K")
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("verify", help="check the arc gadget exhaustively")
    sp.add_argument("files", nargs="*", help="geography files (default: the whole small-digraph family)")
    sp.add_argument("--family", type=int, default=3, metavar="N", help="all digraphs on up to N vertices")
    common(sp, bound=False)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("gen", help="seeded random instances")
    sp.add_argument("kind", choices=["geography", "nimg", "vgame"])
    sp.add_argument("--vertices", type=int, default=4)
    sp.add_argument("--arcs", type=int, default=None, help="maximum arc count (geography)")
    sp.add_argument("--max-weight", type=int, default=None, metavar="K")
    sp.add_argument("--edge-prob", type=float, default=0.5)
    sp.add_argument("--dag-size", type=int, default=5)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=1)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("play", help="play against the engine in the terminal")
    sp.add_argument("file")
    sp.add_argument("--engine-first", action="store_true")
    common(sp, json_out=False)
    sp.set_defaults(func=cmd_play)

    sp = sub.add_parser("bench", help="time solves over generated families")
    sp.add_argument("--family", action="append", choices=["reduced", "random"])
    sp.add_argument("--sizes", default="2,3,4")
    sp.add_argument("--count", type=int, default=10)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--csv", metavar="FILE")
    sp.add_argument("--figure", metavar="FILE", help="render a matplotlib figure (png/pdf/svg)")
    sp.add_argument("--state-cap", type=int, default=DEFAULT_STATE_CAP, metavar="N")
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "family", None) is None and args.command == "bench":
        args.family = ["reduced"]
    try:
        return args.func(args)
    except (ParseError, UsageError, GraphError, GameCycleError, WrongGameValueError, GeographyTooLarge) as exc:
        print(f"nbnim: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except StateCapExceeded as exc:
        print(f"nbnim: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
