import math

import pytest
from click.testing import CliRunner

from contig import generate, oracle, planar, treewidth
from contig.cli import main
from contig.graph import dump_graph, load_graph


@pytest.fixture
def runner():
    return CliRunner()


def write_graph(tmp_path, g, name="g.txt"):
    p = tmp_path / name
    p.write_text(dump_graph(g))
    return str(p)


def triangle():
    from contig.graph import ContinuousGraph, Edge
    return ContinuousGraph(3, [Edge(0, 1, 1.0, True), Edge(1, 2, 1.0, True),
                               Edge(2, 0, 1.0, True)])


def test_compute_oracle_triangle_diameter(runner, tmp_path):
    gf = write_graph(tmp_path, triangle())
    out = tmp_path / "out.txt"
    res = runner.invoke(main, ["compute", "--engine", "oracle",
                               "--task", "diameter", "--out", str(out), gf])
    assert res.exit_code == 0, res.output
    fields = out.read_text().strip().split(",")
    assert fields[0] == "diameter"
    assert float(fields[1]) == pytest.approx(1.5)
    # witness: two edge,offset pairs
    assert len(fields) == 6


def test_compute_treewidth_mean_verified(runner, tmp_path):
    gf = write_graph(tmp_path, generate.cycle(8, unit=True))
    out = tmp_path / "out.txt"
    res = runner.invoke(main, ["compute", "--engine", "treewidth",
                               "--task", "mean", "--verify",
                               "--out", str(out), gf])
    assert res.exit_code == 0, res.output
    fields = out.read_text().strip().split(",")
    assert fields[0] == "mean"
    assert float(fields[1]) == pytest.approx(2.0)


def test_compute_planar_checked_equals_oracle(runner, tmp_path):
    from contig.graph import ContinuousGraph, Edge
    edges = [Edge(a, b, 1.0, True) for a in range(4) for b in range(a + 1, 4)]
    g = ContinuousGraph(4, edges)
    gf = write_graph(tmp_path, g)
    vals = {}
    for engine, mode in (("planar", "checked"), ("oracle", "fast")):
        out = tmp_path / f"{engine}.txt"
        res = runner.invoke(main, ["compute", "--engine", engine,
                                   "--task", "diameter", "--mode", mode,
                                   "--out", str(out), gf])
        assert res.exit_code == 0, res.output
        vals[engine] = float(out.read_text().split(",")[1])
    assert vals["planar"] == pytest.approx(vals["oracle"], abs=1e-9)


def test_compute_ecc_face_rows(runner, tmp_path):
    gf = write_graph(tmp_path, generate.cycle(4, unit=True))
    out = tmp_path / "rows.csv"
    res = runner.invoke(main, ["compute", "--engine", "planar",
                               "--task", "ecc-face", "--out", str(out), gf])
    assert res.exit_code == 0, res.output
    rows = [line.split(",") for line in out.read_text().splitlines()]
    assert len(rows) == 2
    for f, blen, ecc, integral in rows:
        assert float(blen) == pytest.approx(4.0)
        assert float(ecc) == pytest.approx(2.0)
        assert float(integral) == pytest.approx(16.0)


def test_compute_ecc_face_needs_planar(runner, tmp_path):
    gf = write_graph(tmp_path, triangle())
    res = runner.invoke(main, ["compute", "--engine", "oracle",
                               "--task", "ecc-face", gf])
    assert res.exit_code == 2


def test_compute_dump_distances(runner, tmp_path):
    gf = write_graph(tmp_path, generate.path(4, unit=True))
    out = tmp_path / "d.csv"
    res = runner.invoke(main, ["compute", "--task", "dump-distances",
                               "--out", str(out), gf])
    assert res.exit_code == 0, res.output
    rows = {(int(a), int(b)): float(v) for a, b, v in
            (line.split(",") for line in out.read_text().splitlines())}
    assert rows[(0, 3)] == pytest.approx(3.0)
    assert len(rows) == 6


def test_compute_rejects_bad_graph(runner, tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("this is not a graph\n")
    res = runner.invoke(main, ["compute", str(p)])
    assert res.exit_code == 2


def test_verify_disagreement_exit_code(runner, tmp_path):
    # a negative tolerance makes any pair of engines "disagree", which
    # exercises the exit-3 path without a broken engine
    gf = write_graph(tmp_path, triangle())
    res = runner.invoke(main, ["compute", "--engine", "treewidth",
                               "--verify", "--tolerance", "-1", gf])
    assert res.exit_code == 3


def test_generate_cycle_unit(runner, tmp_path):
    out = tmp_path / "c8.txt"
    res = runner.invoke(main, ["generate", "cycle", "-n", "8", "--unit",
                               "--seed", "1", "--out", str(out)])
    assert res.exit_code == 0, res.output
    g = load_graph(out.read_text())
    assert g.n == 8 and g.m == 8
    assert all(e.length == 1.0 for e in g.edges)


def test_generate_deterministic(runner, tmp_path):
    outs = []
    for name in ("a.txt", "b.txt"):
        out = tmp_path / name
        res = runner.invoke(main, ["generate", "planar-triangulation",
                                   "-n", "20", "--seed", "7",
                                   "--out", str(out)])
        assert res.exit_code == 0, res.output
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_generate_ktree_with_witness(runner, tmp_path):
    out = tmp_path / "k.txt"
    td_out = tmp_path / "k.td"
    res = runner.invoke(main, ["generate", "ktree", "-n", "50", "-k", "3",
                               "--seed", "1", "--out", str(out),
                               "--decomposition-out", str(td_out)])
    assert res.exit_code == 0, res.output
    g = load_graph(out.read_text())
    td = treewidth.load_decomposition(td_out.read_text())
    treewidth.check_decomposition(g, td)
    assert td.width == 3


def test_generate_grid_embeds(runner, tmp_path):
    out = tmp_path / "grid.txt"
    res = runner.invoke(main, ["generate", "planar-grid", "--rows", "10",
                               "--cols", "10", "--out", str(out)])
    assert res.exit_code == 0, res.output
    g = load_graph(out.read_text())
    pg = planar.embed(g)
    assert g.n - g.m + pg.F == 2


def test_generate_rejects_bad_params(runner):
    res = runner.invoke(main, ["generate", "ktree", "-n", "2", "-k", "3"])
    assert res.exit_code != 0


def test_bench_csv_and_gnuplot(runner, tmp_path):
    out = tmp_path / "bench.csv"
    gp = tmp_path / "bench.dat"
    res = runner.invoke(main, ["bench", "--engines", "oracle,planar-fast",
                               "--sizes", "8,12", "--reps", "2",
                               "--seed", "3", "--out", str(out),
                               "--gnuplot", str(gp)])
    assert res.exit_code == 0, res.output
    lines = out.read_text().splitlines()
    assert lines[0] == "engine,n,k_or_F,rep,wall_ns,pivots_or_canonical_sets"
    body = [line.split(",") for line in lines[1:]]
    assert len(body) == 2 * 2 * 2  # engines x sizes x reps
    assert all(int(row[4]) > 0 for row in body)
    planar_rows = [row for row in body if row[0] == "planar-fast"]
    assert all(int(row[5]) > 0 for row in planar_rows)
    blocks = gp.read_text()
    assert "# oracle" in blocks and "# planar-fast" in blocks
