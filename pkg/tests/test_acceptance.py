"""Acceptance gate: one test per criterion, one PASS/FAIL line each.

Lines are collected in ``RESULTS`` and printed in the terminal summary by
conftest.py.  ``python3 tests/test_acceptance.py`` runs the gate on its own.
"""
import contextlib
import functools
import io
import itertools
import random
import sys
import time

import pytest

from neighboring_nim.cli import EXIT_CAP, EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, main
from neighboring_nim.core import NimGPosition, UndirectedGraph
from neighboring_nim.formats import parse_instance, render_instance
from neighboring_nim.games import GameDag, GameDagNode, neighboring_outcome
from neighboring_nim.generators import all_geography_instances, random_geography, random_graph, star_realizations
from neighboring_nim.geography import geo_outcome, uvg_outcome
from neighboring_nim.matching import max_matching_size
from neighboring_nim.reduction import WrongGameValueError, reduce_generic, reduce_geography, without_gadget_edge
from neighboring_nim.solver import Solver, nim_xor_outcome, outcome
from neighboring_nim.verification import verify_family, verify_scripts
from oracles import adjacency, brute_matching, geography_brute, negamax, uvg_brute
from test_formats import generated_instances

RESULTS: list[str] = []

NAMED_DEVIATIONS = (
    "c(1) instead of e(1)",
    "d(2) instead of d(1)",
    "g(1) instead of d(1)",
    "d(1) instead of c(1)",
    "d(1) instead of X_z(1)",
)


def criterion(number: int, title: str):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            t0 = time.perf_counter()
            try:
                detail = fn(*args, **kwargs)
            except BaseException as exc:
                RESULTS.append(f"FAIL criterion {number} ({title}): {type(exc).__name__}: {exc}".splitlines()[0])
                raise
            took = time.perf_counter() - t0
            RESULTS.append(f"PASS criterion {number} ({title}): {detail} [{took:.1f}s]")

        return run

    return wrap


@functools.lru_cache(maxsize=None)
def small_family():
    return tuple(all_geography_instances(3))


@criterion(1, "reduction equivalence")
def test_reduction_equivalence():
    t0 = time.perf_counter()
    exhaustive = 0
    for gg in small_family():
        assert geo_outcome(gg) == outcome(reduce_geography(gg)[0]), render_instance(gg)
        exhaustive += 1
    elapsed = time.perf_counter() - t0
    assert exhaustive == 1 + 4 * 2 + 64 * 3
    assert elapsed < 300
    rng = random.Random(2024)
    for _ in range(200):
        gg = random_geography(rng, rng.choice([4, 5]), max_arcs=8)
        assert gg.graph.arc_count() <= 8
        want = geography_brute(gg.graph.n, gg.graph.arcs(), gg.start)
        assert geo_outcome(gg).value == want
        assert outcome(reduce_geography(gg)[0]).value == want
    return f"{exhaustive} exhaustive in {elapsed:.1f}s + 200 random, 0 failures"


@functools.lru_cache(maxsize=None)
def family_reports():
    return {r.property: r for r in verify_family(small_family())}


@criterion(2, "no backward moves")
def test_no_backwards():
    rep = family_reports()["no-backwards"]
    assert rep.passed, rep.render()
    assert rep.situations >= 10
    return f"{rep.situations} backward situations, 0 violations"


@criterion(3, "forward scripts")
def test_scripts():
    rep = family_reports()["stick-to-the-script"]
    assert rep.passed, rep.render()
    missing = [name for name in NAMED_DEVIATIONS if not rep.coverage[name]]
    assert not missing, missing
    safe = family_reports()["safe-sequences"]
    assert safe.passed, safe.render()
    branches = family_reports()["no-backwards"].coverage
    assert branches["X_y-winning"] >= 1 and branches["X_y-losing"] >= 1
    one_arc = small_family()[1 + 2]  # n=2, arc v0->v1, start v0
    assert one_arc.graph.arcs() == [(0, 1)] and one_arc.start == 0
    pos, gmap = reduce_geography(one_arc)
    mutant = without_gadget_edge(pos, gmap, (0, 1), "c", "d")
    control = verify_scripts(one_arc, reduced=(mutant, gmap))
    assert not control.passed
    return (
        f"{rep.situations} entries, all five named deviations covered, "
        f"c-d control fails with {len(control.violations)} violations"
    )


@criterion(4, "complete graph is the disjunctive sum")
def test_complete_graph_nim():
    multisets = [
        m for k in range(5) for m in itertools.combinations_with_replacement(range(1, 5), k)
    ]
    assert len(multisets) == 70
    t0 = time.perf_counter()
    for heaps in multisets:
        pos = NimGPosition(UndirectedGraph.complete(len(heaps)), heaps, None)
        assert outcome(pos) == nim_xor_outcome(heaps), heaps
    elapsed = time.perf_counter() - t0
    assert elapsed < 30
    return f"70 multisets in {elapsed:.1f}s"


@criterion(5, "undirected vertex geography by matching")
def test_uvg_and_matching():
    games = 0
    for n in range(1, 6):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            edges = [e for i, e in enumerate(pairs) if mask >> i & 1]
            g = UndirectedGraph([f"v{i}" for i in range(n)], edges)
            for token in range(n):
                assert uvg_outcome(g, token).value == uvg_brute(n, edges, token), (edges, token)
                games += 1
    rng = random.Random(5)
    for _ in range(500):
        g = random_graph(rng, 6, rng.random())
        for token in range(6):
            assert uvg_outcome(g, token).value == uvg_brute(6, g.edges(), token)
    for _ in range(1000):
        n = rng.randint(1, 8)
        g = random_graph(rng, n, rng.random())
        assert max_matching_size(g) == brute_matching(n, g.edges()), g.edges()
    return f"{games} exhaustive games + 500 random graphs; 1000 matchings, 0 failures"


@criterion(6, "generic *1/*2 substitution")
def test_generic_realizations():
    realizations = star_realizations()
    assert len(realizations) == 3
    shapes = {tuple(map(tuple, g1.dag.options)) + tuple(map(tuple, g2.dag.options)) for _, g1, g2 in realizations}
    assert len(shapes) == 3
    rng = random.Random(6)
    family = [random_geography(rng, rng.randint(1, 3)) for _ in range(25)]
    for name, g1, g2 in realizations:
        for gg in family:
            vg, _ = reduce_generic(gg, g1, g2)
            assert neighboring_outcome(vg) == geo_outcome(gg), (name, render_instance(gg))
    heaps = GameDag([[], [0], [0, 1], [0, 1, 2]])
    with pytest.raises(WrongGameValueError) as err:
        reduce_generic(family[0], GameDagNode(heaps, 1), GameDagNode(heaps, 3))
    assert err.value.which == "g2" and err.value.actual == 3
    return "3 realizations x 25 digraphs match; *3 impostor rejected"


@criterion(7, "solver self-consistency")
def test_solver_consistency():
    rng = random.Random(7)
    entries = 0
    for _ in range(500):
        n = rng.randint(1, 5)
        edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.5]
        weights = [0] * n
        for _ in range(rng.randint(0, 6)):
            weights[rng.randrange(n)] += 1
        last = rng.choice([None, *range(n)])
        pos = NimGPosition(UndirectedGraph([f"v{i}" for i in range(n)], edges), tuple(weights), last)
        solver = Solver.for_position(pos)
        assert solver.outcome(pos).value == negamax(adjacency(n, edges), tuple(weights), last)
        solver.grundy(pos)
        for key, value in solver.grundies.items():
            assert (value == 0) == (not solver.is_n(key))
            entries += 1
    for h in range(9):
        pos = NimGPosition(UndirectedGraph(["v"]), (h,), None)
        assert Solver.for_position(pos).grundy(pos) == h
    return f"500 positions match negamax; {entries} memo entries consistent; heaps 0..8"


def _cli(*argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    old_in = sys.stdin
    sys.stdin = io.StringIO(stdin)
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            try:
                code = main([str(a) for a in argv])
            except SystemExit as exc:
                code = exc.code
    finally:
        sys.stdin = old_in
    return code, out.getvalue()


@criterion(8, "plumbing")
def test_plumbing(tmp_path):
    instances = generated_instances(200)
    for obj in instances:
        text = render_instance(obj)
        assert render_instance(parse_instance(text)) == text
    for i, gg in enumerate(small_family()):
        path = tmp_path / f"r{i}.txt"
        path.write_text(render_instance(reduce_geography(gg)[0]))
        single = _cli("solve", path, "--threads", 1)
        assert single == _cli("solve", path, "--threads", 4), render_instance(gg)
        assert single[0] == EXIT_OK
    bad = tmp_path / "bad.txt"
    bad.write_text("nimg\nvertex a 1\nedge a a\n")
    big = tmp_path / "big.txt"
    big.write_text(render_instance(NimGPosition(UndirectedGraph.complete(5), (3,) * 5, None)))
    geo = tmp_path / "g.txt"
    geo.write_text("geography\nvertex y\nvertex z\narc y z\narc z y\nstart y\n")
    assert _cli("solve", bad)[0] == EXIT_USAGE
    assert _cli("bogus")[0] == EXIT_USAGE
    assert _cli("solve", big, "--state-cap", 10)[0] == EXIT_CAP
    assert _cli("verify", geo)[0] == EXIT_OK
    from neighboring_nim import reduction

    saved = reduction.GADGET_EDGES
    reduction.GADGET_EDGES = tuple(e for e in saved if set(e) != {"c", "d"})
    try:
        assert _cli("verify", geo)[0] == EXIT_VIOLATION
    finally:
        reduction.GADGET_EDGES = saved
    return f"{len(instances)} round-trips; {len(small_family())} instances identical across thread counts; exit codes 0/1/2/3"


if __name__ == "__main__":
    code = pytest.main([__file__, "-q", "-p", "no:cacheprovider"])
    sys.exit(code)
