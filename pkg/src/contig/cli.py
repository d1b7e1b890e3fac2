"""Command-line front end: compute, generate, bench.

``compute`` prints machine-readable ``metric,value[,witness...]`` lines
(exit 0 on success, 2 on domain errors, 3 when --verify detects a
cross-engine disagreement), ``generate`` writes deterministic instances
in the graph file format, ``bench`` emits a CSV of wall times plus a
gnuplot-ready file of medians.
"""

import os
import random
import statistics
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import click

from . import generate as gen
from . import oracle, planar, treewidth
from .graph import DomainError, GraphFormatError, dump_graph, load_graph

EXIT_DOMAIN = 2
EXIT_DISAGREE = 3

ENGINES = ("oracle", "treewidth", "planar")
TASKS = ("diameter", "mean", "ecc-face", "dump-distances")


def _threads():
    try:
        return max(1, int(os.environ.get("CONTIG_THREADS", "1")))
    except ValueError:
        return 1


def _pmap(fn, items):
    workers = _threads()
    if workers == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _fmt(value):
    return repr(float(value))


def _fmt_point(p):
    return f"{p.edge},{_fmt(p.offset)}"


@click.group()
def main():
    """Diameter, eccentricity and mean distance of continuous graphs."""


# -- compute -----------------------------------------------------------


def _load(graph_file, rational):
    text = graph_file.read()
    return load_graph(text, rational=rational)


def _run_scalar(engine, task, g, mode, td):
    """One engine's diameter or mean: (value, witness lines)."""
    if engine == "oracle":
        if task == "diameter":
            val, (p, q) = oracle.diameter_brute(g)
            return float(val), [_fmt_point(p), _fmt_point(q)]
        return float(oracle.mean_brute(g)), []
    if engine == "treewidth":
        if task == "diameter":
            val, (p, q) = treewidth.diameter_tw(g, td=td, with_witness=True)
            return float(val), [_fmt_point(p), _fmt_point(q)]
        return float(treewidth.mean_tw(g, td=td)), []
    pg = planar.embed(g)
    pmode = mode if mode in ("fast", "checked") else "fast"
    if task == "diameter":
        vals = _pmap(
            lambda f: planar.face_eccentricity(pg, f, mode=pmode,
                                               h_only=True)[0]
            if pg.face_h_darts(f) else float("-inf"),
            range(pg.F))
        return max(vals), []
    vals = _pmap(lambda f: planar.face_mean_integral(pg, f, mode=pmode),
                 range(pg.F))
    hl = float(g.h_length())
    return sum(vals) / 2.0 / (hl * hl), []


@main.command()
@click.argument("graph_file", type=click.File("r"))
@click.option("--engine", type=click.Choice(ENGINES), default="oracle")
@click.option("--task", type=click.Choice(TASKS), default="diameter")
@click.option("--mode", type=click.Choice(("fast", "checked", "rational")),
              default="fast")
@click.option("--tolerance", type=float, default=1e-7,
              help="Relative tolerance for --verify.")
@click.option("--verify", is_flag=True,
              help="Run a second engine and require agreement.")
@click.option("--seed", type=int, default=0, help="Unused for compute; "
              "accepted so configs are interchangeable with bench.")
@click.option("--out", type=click.File("w"), default="-")
@click.option("--decomposition", type=click.File("r"), default=None,
              help="Precomputed tree decomposition (treewidth engine).")
def compute(graph_file, engine, task, mode, tolerance, verify, seed, out,
            decomposition):
    """Compute TASK on GRAPH_FILE with ENGINE."""
    try:
        g = _load(graph_file, rational=(mode == "rational"))
        td = None
        if decomposition is not None:
            td = treewidth.load_decomposition(decomposition.read())
        if task == "ecc-face":
            if engine != "planar":
                raise DomainError("task ecc-face requires --engine planar")
            pg = planar.embed(g)
            pmode = mode if mode in ("fast", "checked") else "fast"

            def row(f):
                ecc, _ = planar.face_eccentricity(pg, f, mode=pmode)
                integral = planar.face_mean_integral(pg, f, mode=pmode)
                return (f, pg.boundary_length(f), ecc, integral)

            for f, blen, ecc, integral in _pmap(row, range(pg.F)):
                out.write(f"{f},{_fmt(blen)},{_fmt(ecc)},{_fmt(integral)}\n")
            click.echo(f"{pg.F} faces", err=True)
            return
        if task == "dump-distances":
            dist = g.all_pairs()
            for u in range(g.n):
                for v in range(u + 1, g.n):
                    out.write(f"{u},{v},{_fmt(dist[u][v])}\n")
            click.echo(f"{g.n * (g.n - 1) // 2} vertex pairs", err=True)
            return
        val, witness = _run_scalar(engine, task, g, mode, td)
        out.write(",".join([task, _fmt(val)] + witness) + "\n")
        if verify:
            other = "oracle" if engine != "oracle" else "treewidth"
            ref, _ = _run_scalar(other, task, g, mode, None)
            if abs(val - ref) > tolerance * (1.0 + abs(ref)):
                click.echo(f"verify failed: {engine}={val!r} vs "
                           f"{other}={ref!r}", err=True)
                sys.exit(EXIT_DISAGREE)
            click.echo(f"verify ok against {other}", err=True)
        click.echo(f"{task} = {val:.9g} ({engine})", err=True)
    except (DomainError, GraphFormatError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_DOMAIN)


# -- generate ----------------------------------------------------------


KINDS = ("ktree", "planar-grid", "planar-triangulation", "cycle", "path",
         "theta")


@main.command("generate")
@click.argument("kind", type=click.Choice(KINDS))
@click.option("-n", "n", type=int, default=16)
@click.option("-k", "k", type=int, default=2, help="ktree width.")
@click.option("--rows", type=int, default=None, help="planar-grid rows.")
@click.option("--cols", type=int, default=None, help="planar-grid cols.")
@click.option("--unit", is_flag=True, help="All edge lengths 1.")
@click.option("--seed", type=int, default=0)
@click.option("--out", type=click.File("w"), default="-")
@click.option("--decomposition-out", type=click.File("w"), default=None,
              help="Write the ktree witness decomposition here.")
def generate_cmd(kind, n, k, rows, cols, unit, seed, out, decomposition_out):
    """Write a deterministic random instance of KIND."""
    rng = random.Random(seed)
    try:
        if kind == "ktree":
            if n < k + 1:
                raise DomainError(f"ktree needs n > k (got n={n}, k={k})")
            g, witness = gen.ktree(rng, n, k, unit=unit)
            if decomposition_out is not None:
                treewidth.check_decomposition(g, witness)
                decomposition_out.write(treewidth.dump_decomposition(witness))
        elif kind == "planar-grid":
            r = rows if rows is not None else max(2, int(n ** 0.5))
            c = cols if cols is not None else max(2, (n + r - 1) // r)
            g = gen.grid(r, c, unit=unit, rng=rng)
        elif kind == "planar-triangulation":
            g = gen.triangulation(rng, n, unit=unit)
        elif kind == "cycle":
            g = gen.cycle(n, unit=unit, rng=rng)
        elif kind == "path":
            g = gen.path(n, unit=unit, rng=rng)
        else:
            third = max(1, n // 3)
            g = gen.theta(third, third, max(1, n - 2 * third),
                          unit=unit, rng=rng)
    except (DomainError, ValueError) as exc:
        raise click.UsageError(str(exc))
    out.write(dump_graph(g))
    click.echo(f"{kind}: n={g.n} m={g.m}", err=True)


# -- bench -------------------------------------------------------------


BENCH_ENGINES = ("oracle", "treewidth", "planar-fast", "planar-checked")


def _bench_instance(engine, n, k, seed):
    rng = random.Random(seed)
    if engine == "oracle":
        return gen.cycle(n, unit=False, rng=rng), None
    if engine == "treewidth":
        g, witness = gen.ktree(rng, n, k)
        return g, witness
    g = gen.triangulation(rng, n)
    return g, planar.embed(g)


def _bench_once(engine, g, aux):
    """One timed run; returns (wall_ns, pivot count or 0)."""
    if engine == "oracle":
        t0 = time.perf_counter_ns()
        oracle.diameter_brute(g)
        return time.perf_counter_ns() - t0, 0
    if engine == "treewidth":
        t0 = time.perf_counter_ns()
        treewidth.diameter_tw(g, td=aux)
        return time.perf_counter_ns() - t0, 0
    mode = "fast" if engine == "planar-fast" else "checked"
    pg = aux
    f = 0
    t0 = time.perf_counter_ns()
    planar.face_eccentricity(pg, f, mode=mode)
    dt = time.perf_counter_ns() - t0
    return dt, len(planar.pivot_sequence(pg, f, None))


@main.command()
@click.option("--engines", default="oracle",
              help="Comma list of " + ",".join(BENCH_ENGINES) + ".")
@click.option("--sizes", default="256,512,1024",
              help="Comma list of instance sizes.")
@click.option("--reps", type=int, default=3,
              help="Timed repetitions (one extra warmup rep is discarded).")
@click.option("-k", "k", type=int, default=2, help="ktree width.")
@click.option("--seed", type=int, default=0)
@click.option("--out", type=click.File("w"), default="-")
@click.option("--gnuplot", "gnuplot_out", type=click.File("w"), default=None,
              help="Write per-engine median blocks for gnuplot here.")
def bench(engines, sizes, reps, k, seed, out, gnuplot_out):
    """Time engines over a size ladder and emit CSV."""
    try:
        engine_list = [e.strip() for e in engines.split(",") if e.strip()]
        for e in engine_list:
            if e not in BENCH_ENGINES:
                raise click.UsageError(f"unknown engine {e!r}")
        size_list = [int(s) for s in sizes.split(",")]
    except ValueError as exc:
        raise click.UsageError(str(exc))
    out.write("engine,n,k_or_F,rep,wall_ns,pivots_or_canonical_sets\n")
    medians = {e: [] for e in engine_list}
    for engine in engine_list:
        for n in size_list:
            g, aux = _bench_instance(engine, n, k, seed)
            k_or_f = aux.F if engine.startswith("planar") else k
            walls = []
            for rep in range(reps + 1):
                wall, extra = _bench_once(engine, g, aux)
                if rep == 0:
                    continue  # warmup
                walls.append(wall)
                out.write(f"{engine},{n},{k_or_f},{rep},{wall},{extra}\n")
            medians[engine].append((n, int(statistics.median(walls))))
    if gnuplot_out is not None:
        for engine in engine_list:
            gnuplot_out.write(f"# {engine}\n")
            for n, med in medians[engine]:
                gnuplot_out.write(f"{n} {med}\n")
            gnuplot_out.write("\n\n")


if __name__ == "__main__":
    main()
