import io
import json
import subprocess
import sys

import pytest

from neighboring_nim import reduction
from neighboring_nim.cli import EXIT_CAP, EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, main
from neighboring_nim.formats import parse_instance, parse_map

ONE_ARC = "geography\nvertex y\nvertex z\narc y z\nstart y\n"


@pytest.fixture
def run(capsys):
    def _run(*argv):
        try:
            code = main([str(a) for a in argv])
        except SystemExit as exc:
            code = exc.code
        out, err = capsys.readouterr()
        return code, out, err

    return _run


@pytest.fixture
def one_arc(tmp_path):
    path = tmp_path / "one_arc.txt"
    path.write_text(ONE_ARC)
    return path


def test_reduce_counts_and_map(run, one_arc, tmp_path):
    out_file, map_file = tmp_path / "r.txt", tmp_path / "r.map"
    code, _, _ = run("reduce", one_arc, "-o", out_file, "--map", map_file)
    assert code == EXIT_OK
    lines = out_file.read_text().splitlines()
    assert sum(line.startswith("vertex ") for line in lines) == 9
    assert sum(line.startswith("edge ") for line in lines) == 10
    assert "last X.y" in lines
    assert parse_map(map_file.read_text()) == {"y": "X.y", "z": "X.z"}


def test_solve_reduced_one_arc(run, one_arc, tmp_path):
    reduced = tmp_path / "r.txt"
    run("reduce", one_arc, "-o", reduced)
    code, out, _ = run("solve", reduced)
    assert code == EXIT_OK
    assert out.splitlines()[0] == "outcome: N"
    code, out, _ = run("solve", reduced, "--json")
    data = json.loads(out)
    assert data["outcome"] == "N" and data["best_move"] == "a.y.z 1"
    assert data["states_visited"] > 0


def test_solve_geography_and_vgame(run, one_arc, tmp_path):
    code, out, _ = run("solve", one_arc)
    assert (code, out) == (EXIT_OK, "outcome: N\nbest_move: z\n")
    vg = tmp_path / "vg.txt"
    vg.write_text("vgame\nnode z\nnode one z\nnode two z one\nvertex a two\nvertex b one\n")
    # no edges: emptying a strands the opponent on it
    assert run("solve", vg)[1].startswith("outcome: N\nbest_move: a z\n")
    vg.write_text(vg.read_text() + "edge a b\n")
    # complete graph: the disjunctive sum *2 + *1
    assert run("solve", vg)[1].startswith("outcome: N\nbest_move: a one\n")
    assert run("grundy", vg)[1] == "grundy: 3\n"


def test_grundy_gamedag(run, tmp_path):
    dag = tmp_path / "g.txt"
    dag.write_text("gamedag\nnode z\nnode one z\nnode two z one\nnode odd one two\n")
    assert run("grundy", dag, "--json")[1] == '{"grundy": 0}\n'


def test_threads_do_not_change_output(run, tmp_path):
    for i in range(4):
        run("gen", "geography", "--vertices", 3, "--seed", i, "-o", tmp_path / f"g{i}.txt")
        run("reduce", tmp_path / f"g{i}.txt", "-o", tmp_path / f"r{i}.txt")
        single = run("solve", tmp_path / f"r{i}.txt", "--threads", 1)
        multi = run("solve", tmp_path / f"r{i}.txt", "--threads", 4)
        assert single == multi


def test_gen_seed_is_deterministic(run):
    a = run("gen", "geography", "--vertices", 5, "--seed", 7)[1]
    b = run("gen", "geography", "--vertices", 5, "--seed", 7)[1]
    c = run("gen", "geography", "--vertices", 5, "--seed", 8)[1]
    assert a == b != c
    parse_instance(a)


def test_gen_many_files(run, tmp_path):
    code, _, _ = run("gen", "nimg", "--count", 3, "--seed", 1, "-o", tmp_path / "out")
    assert code == EXIT_OK
    assert sorted(p.name for p in (tmp_path / "out").iterdir()) == [
        "nimg_0000.txt",
        "nimg_0001.txt",
        "nimg_0002.txt",
    ]
    assert run("gen", "nimg", "--count", 3)[0] == EXIT_USAGE


def test_usage_errors(run, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("nimg\nvertex a 1\nedge a a\n")
    code, _, err = run("solve", bad)
    assert code == EXIT_USAGE and "line 3" in err and "self-loop" in err
    assert run("solve", tmp_path / "missing.txt")[0] == EXIT_USAGE
    assert run("frobnicate")[0] == EXIT_USAGE
    heavy = tmp_path / "heavy.txt"
    heavy.write_text("nimg\nvertex a 3\n")
    code, _, err = run("solve", heavy, "--max-weight", 2)
    assert code == EXIT_USAGE and "2-bounded" in err
    assert run("solve", heavy, "--max-weight", 3)[0] == EXIT_OK


def test_reduce_generic_rejects_impostor(run, one_arc, tmp_path):
    h = tmp_path / "h.txt"
    h.write_text("gamedag\nnode h0\nnode h1 h0\nnode h2 h0 h1\nnode h3 h0 h1 h2\nroot h1\n")
    three = tmp_path / "three.txt"
    three.write_text(h.read_text().replace("root h1", "root h3"))
    code, _, err = run("reduce", one_arc, "--g1", h, "--g2", three)
    assert code == EXIT_USAGE and "g2" in err
    two = tmp_path / "two.txt"
    two.write_text(h.read_text().replace("root h1", "root h2"))
    code, out, _ = run("reduce", one_arc, "--g1", h, "--g2", two)
    assert code == EXIT_OK and out.startswith("vgame\n")


def test_state_cap_exit(run, tmp_path):
    big = tmp_path / "big.txt"
    edges = "".join(f"edge v{i} v{j}\n" for i in range(6) for j in range(i + 1, 6))
    big.write_text("nimg\n" + "".join(f"vertex v{i} 3\n" for i in range(6)) + edges)
    code, _, err = run("solve", big, "--state-cap", 50)
    assert code == EXIT_CAP and "50" in err


def test_verify_exit_codes(run, tmp_path, monkeypatch):
    code, out, _ = run("verify", "--family", 2)
    assert code == EXIT_OK and "violations: 0" in out and "FAIL" not in out

    monkeypatch.setattr(
        reduction, "GADGET_EDGES", tuple(e for e in reduction.GADGET_EDGES if set(e) != {"c", "d"})
    )
    path = tmp_path / "cyc.txt"
    path.write_text("geography\nvertex y\nvertex z\narc y z\narc z y\nstart y\n")
    code, out, _ = run("verify", path, "--json")
    assert code == EXIT_VIOLATION
    assert any(not r["pass"] for r in json.loads(out))


def test_bench_csv_and_figure(run, tmp_path):
    csv_path, fig = tmp_path / "b.csv", tmp_path / "b.png"
    code, out, _ = run(
        "bench", "--family", "reduced", "--family", "random", "--sizes", "1,2",
        "--count", 3, "--csv", csv_path, "--figure", fig,
    )
    assert code == EXIT_OK
    rows = out.splitlines()
    assert rows[0] == "family,n,instances,vertices_mean,states_mean,seconds_mean,capped"
    assert [r.split(",")[:2] for r in rows[1:]] == [
        ["reduced", "1"], ["reduced", "2"], ["random", "1"], ["random", "2"]
    ]
    assert csv_path.read_text() == out
    assert fig.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_play_session(run, tmp_path, monkeypatch):
    game = tmp_path / "p.txt"
    game.write_text("nimg\nvertex a 1\nvertex b 1\nedge a b\n")
    monkeypatch.setattr(sys, "stdin", io.StringIO("moves\nc 1\na 1\n"))
    code, out, _ = run("play", game)
    assert code == EXIT_OK
    assert "a(1) b(1)" in out
    assert "illegal" in out
    assert "engine plays b 1" in out
    assert out.rstrip().endswith("no legal move: you cannot move and lose")


def test_play_engine_first_quit(run, tmp_path, monkeypatch):
    game = tmp_path / "p.txt"
    game.write_text("nimg\nvertex a 2\n")
    monkeypatch.setattr(sys, "stdin", io.StringIO("quit\n"))
    code, out, _ = run("play", game, "--engine-first")
    assert code == EXIT_OK
    assert "engine plays a 2" in out


def test_console_script_entry_point(one_arc):
    proc = subprocess.run(
        [sys.executable, "-m", "neighboring_nim", "solve", str(one_arc)],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("outcome: N")
