import math
import random

import pytest

from contig import generate, oracle, planar
from contig.graph import ContinuousGraph, DomainError, Edge, EdgePoint
from contig.planar import (SlidingState, _FaceSweep, embed, face_eccentricity,
                           face_mean_integral, pivot_sequence, planar_diameter,
                           planar_mean)


def unit_triangle():
    return ContinuousGraph(3, [Edge(0, 1, 1.0, True), Edge(1, 2, 1.0, True),
                               Edge(2, 0, 1.0, True)])


def theta_parallel():
    # two vertices joined by three parallel unit edges
    return ContinuousGraph(2, [Edge(0, 1, 1.0, True)] * 3,
                           rotations={0: [0, 1, 2], 1: [2, 1, 0]})


def k4():
    edges = [Edge(a, b, 1.0, True)
             for a in range(4) for b in range(a + 1, 4)]
    return ContinuousGraph(4, edges)


def with_random_h(g, rng):
    edges = [Edge(e.tail, e.head, e.length, rng.random() < 0.6)
             for e in g.edges]
    if not any(e.in_H for e in edges):
        e = edges[0]
        edges[0] = Edge(e.tail, e.head, e.length, True)
    return ContinuousGraph(g.n, edges, rotations=g.rotations)


def mirrored(g):
    rot = {v: list(reversed(order)) for v, order in g.rotations.items()}
    return ContinuousGraph(g.n, g.edges, rotations=rot)


def planar_instances(count, seed, max_n=30):
    rng = random.Random(seed)
    out = []
    for i in range(count):
        kind = rng.randrange(4)
        if kind == 0:
            out.append(generate.grid(rng.randrange(2, 4), rng.randrange(2, 4),
                                     unit=False, rng=rng))
        elif kind == 1:
            out.append(generate.triangulation(rng, rng.randrange(5, max_n)))
        elif kind == 2:
            out.append(generate.theta(rng.randrange(0, 3), rng.randrange(1, 3),
                                      rng.randrange(2, 4), unit=False, rng=rng))
        else:
            out.append(generate.cycle(rng.randrange(3, 9), unit=False, rng=rng))
    return out


# -- embedding ---------------------------------------------------------


def test_embed_c4_two_faces():
    pg = embed(generate.cycle(4, unit=True))
    assert pg.F == 2
    assert sorted(len(w) for w in pg.walks) == [4, 4]


def test_embed_k4_four_triangles():
    pg = embed(k4())
    assert pg.F == 4
    assert all(len(w) == 3 for w in pg.walks)


def test_embed_triangulation_euler():
    g = generate.triangulation(random.Random(0), 100)
    pg = embed(g)
    assert g.n - g.m + pg.F == 2
    assert all(len(w) == 3 for w in pg.walks)


def test_embed_walks_cover_every_dart_once():
    for g in planar_instances(6, seed=1):
        pg = embed(g)
        darts = [d for w in pg.walks for d in w]
        assert sorted(darts) == list(range(2 * g.m))
        assert g.n - g.m + pg.F == 2
        for e in range(g.m):
            assert pg.dual_edge(e) == (pg.dart_face[2 * e],
                                       pg.dart_face[2 * e + 1])


def test_embed_nonplanar_raises():
    edges = [Edge(a, b, 1.0, True)
             for a in range(5) for b in range(a + 1, 5)]
    g = ContinuousGraph(5, edges)
    with pytest.raises(DomainError):
        embed(g)


def test_embed_rejects_inconsistent_rotation():
    g = ContinuousGraph(3, [Edge(0, 1, 1.0, True), Edge(1, 2, 1.0, True),
                            Edge(2, 0, 1.0, True)],
                        rotations={0: [0, 0], 1: [0, 1], 2: [1, 2]})
    with pytest.raises(DomainError):
        embed(g)


def test_embed_parallel_edges_need_rotations():
    g = ContinuousGraph(2, [Edge(0, 1, 1.0, True)] * 3)
    with pytest.raises(DomainError):
        embed(g)


# -- pivot sequences ---------------------------------------------------


def test_pivot_sequence_c4():
    pg = embed(generate.cycle(4, unit=True))
    for f in range(pg.F):
        events = pivot_sequence(pg, f, 0)
        # each tree edge pivots a bounded number of times
        assert len(events) <= 5
        per_edge = {}
        for ev in events:
            per_edge[ev.edge_in] = per_edge.get(ev.edge_in, 0) + 1
        assert all(c <= 2 for c in per_edge.values())


def test_pivot_positions_monotone_along_walk():
    for g in planar_instances(8, seed=2):
        pg = embed(g)
        for f in range(pg.F):
            sw = _FaceSweep(pg, f)
            order = {d: i for i, d in enumerate(sw.walk)}
            events = pivot_sequence(pg, f, None)
            last = (-1, -1.0)
            for ev in events:
                d = 2 * ev.s.edge
                if d not in order:
                    d += 1
                # offsets are stored from the edge tail; convert to
                # walk direction for the monotonicity check
                off = float(ev.s.offset)
                if d % 2 == 1:
                    off = float(g.edges[ev.s.edge].length) - off
                key = (order[d], off)
                assert key >= last
                last = key


def test_pivot_count_linear_in_size():
    total_m = total_ev = 0
    for g in planar_instances(8, seed=3):
        pg = embed(g)
        for f in range(pg.F):
            events = pivot_sequence(pg, f, None)
            walk = len(pg.walks[f])
            assert len(events) <= walk * (g.n + 2)
            total_m += g.m * walk
            total_ev += len(events)
    # logged, soft bound: a small constant per dart-edge pair
    assert total_ev <= 4 * total_m


def test_checked_mode_revalidates_every_event():
    # checked mode raises if the incremental labels or the tree ever
    # disagree with a fresh Dijkstra run
    for g in planar_instances(10, seed=4):
        pg = embed(g)
        for f in range(pg.F):
            face_eccentricity(pg, f, mode="checked")


# -- face eccentricity -------------------------------------------------


def test_face_ecc_c4_unit():
    pg = embed(generate.cycle(4, unit=True))
    for f in range(pg.F):
        for mode in ("fast", "checked"):
            val, _ = face_eccentricity(pg, f, mode=mode)
            assert val == pytest.approx(2.0, abs=1e-12)


def test_pendant_triangle_outer_face():
    g = ContinuousGraph(4, [Edge(0, 1, 1.0, True), Edge(1, 2, 1.0, True),
                            Edge(2, 0, 1.0, True), Edge(0, 3, 1.0, True)])
    pg = embed(g)
    outer = max(range(pg.F), key=lambda f: len(pg.walks[f]))
    assert len(pg.walks[outer]) == 5
    val, wit = face_eccentricity(pg, outer)
    assert val == pytest.approx(2.5, abs=1e-12)
    assert float(oracle.eccentricity_point(g, wit)) == pytest.approx(2.5)


def test_face_ecc_matches_dense_sampling():
    for g in planar_instances(6, seed=5, max_n=14):
        pg = embed(g)
        for f in range(pg.F):
            val, wit = face_eccentricity(pg, f)
            assert float(oracle.eccentricity_point(g, wit)) == \
                pytest.approx(val, abs=1e-9)
            best = gap = 0.0
            for d in pg.walks[f]:
                e = d // 2
                L = float(g.edges[e].length)
                gap = max(gap, L / 64.0)
                for i in range(65):
                    p = EdgePoint(e, L * i / 64.0)
                    best = max(best, float(oracle.eccentricity_point(g, p)))
            assert val >= best - 1e-9
            # eccentricity is 1-Lipschitz along the walk, so the dense
            # samples cannot miss the maximum by more than half a gap
            assert val <= best + gap / 2.0 + 1e-9


def test_face_ecc_fast_equals_checked():
    for g in planar_instances(10, seed=6):
        rng = random.Random(7)
        for gg in (g, with_random_h(g, rng), mirrored(g)):
            pg = embed(gg)
            for f in range(pg.F):
                for h_only in (False, True):
                    vf, _ = face_eccentricity(pg, f, mode="fast",
                                              h_only=h_only)
                    vc, _ = face_eccentricity(pg, f, mode="checked",
                                              h_only=h_only)
                    assert vf == pytest.approx(vc, abs=1e-9, rel=1e-9)


def test_forest_values_track_labels():
    # after every event the vertex-forest labels and the stored cotree
    # balance values must equal what the sweep labels imply
    class Audit(SlidingState):
        def _sample(self, sw):
            for x in range(sw.g.n):
                assert self.pf.get_node_value(x) == \
                    pytest.approx(sw.label(x), abs=1e-9)
            for e, h in self.dual.items():
                got = self.df.get_edge_value(h)
                if e == sw.e0:
                    if sw.su_in_T:
                        want = (sw.L0 - sw.pos + sw.label(sw.v0)) / 2.0
                    else:
                        want = (sw.pos + sw.label(sw.u0)) / 2.0
                else:
                    ed = sw.g.edges[e]
                    want = (sw.label(ed.tail) + float(ed.length)
                            + sw.label(ed.head)) / 2.0
                assert got == pytest.approx(want, abs=1e-9)
            super()._sample(sw)

    for g in planar_instances(5, seed=8):
        pg = embed(g)
        for f in range(pg.F):
            _FaceSweep(pg, f).run([Audit()])


# -- face mean integrals -----------------------------------------------


def test_face_mean_c4():
    pg = embed(generate.cycle(4, unit=True))
    for f in range(pg.F):
        for mode in ("fast", "checked"):
            assert face_mean_integral(pg, f, mode=mode) == \
                pytest.approx(16.0, abs=1e-12)
    # every point of a unit C4 has mean distance 1
    assert planar_mean(pg) == pytest.approx(1.0, abs=1e-12)


def test_segment_mean_is_third_of_length():
    g = ContinuousGraph(2, [Edge(0, 1, 5.0, True)])
    pg = embed(g)
    assert pg.F == 1
    L = 5.0
    assert face_mean_integral(pg, 0) == pytest.approx(2 * L ** 3 / 3)
    assert planar_mean(pg) == pytest.approx(L / 3)


def test_face_mean_h_subset_argument():
    g = generate.grid(2, 3, unit=True)
    pg = embed(g)
    full = sum(face_mean_integral(pg, f) for f in range(pg.F))
    sub = sum(face_mean_integral(pg, f, h_edges=list(range(g.m)))
              for f in range(pg.F))
    assert sub == pytest.approx(full)


def test_face_mean_fast_equals_checked():
    for g in planar_instances(10, seed=9):
        rng = random.Random(10)
        for gg in (g, with_random_h(g, rng)):
            pg = embed(gg)
            for f in range(pg.F):
                vf = face_mean_integral(pg, f, mode="fast")
                vc = face_mean_integral(pg, f, mode="checked")
                assert vf == pytest.approx(vc, abs=1e-9, rel=1e-9)


def test_mean_monte_carlo():
    rng = random.Random(11)
    g = generate.triangulation(rng, 20)
    pg = embed(g)
    exact = planar_mean(pg)
    hs = g.h_edges()
    weights = [float(g.edges[e].length) for e in hs]
    vals = []
    for _ in range(20000):
        pe, qe = rng.choices(hs, weights=weights, k=2)
        p = EdgePoint(pe, rng.random() * float(g.edges[pe].length))
        q = EdgePoint(qe, rng.random() * float(g.edges[qe].length))
        vals.append(float(g.point_distance(p, q)))
    mu = sum(vals) / len(vals)
    var = sum((v - mu) ** 2 for v in vals) / (len(vals) - 1)
    sigma = math.sqrt(var / len(vals))
    assert abs(exact - mu) <= 3 * sigma + 1e-12


# -- whole-graph operations --------------------------------------------


def test_unit_triangle_diameter_and_mean():
    pg = embed(unit_triangle())
    for mode in ("fast", "checked"):
        assert planar_diameter(pg, mode=mode) == pytest.approx(1.5)
        assert planar_mean(pg, mode=mode) == pytest.approx(0.75)


def test_theta_graph():
    g = theta_parallel()
    pg = embed(g)
    assert pg.F == 3
    assert planar_diameter(pg) == pytest.approx(1.0)
    assert planar_mean(pg) == pytest.approx(float(oracle.mean_brute(g)))


def test_matches_oracle_random():
    rng = random.Random(12)
    for g in planar_instances(12, seed=13):
        for gg in (g, with_random_h(g, rng)):
            pg = embed(gg)
            do, _ = oracle.diameter_brute(gg)
            do = float(do)
            mo = float(oracle.mean_brute(gg))
            assert planar_diameter(pg) == pytest.approx(do, abs=1e-9)
            assert planar_mean(pg) == pytest.approx(mo, rel=1e-7)


def test_zero_length_edge():
    g = ContinuousGraph(4, [Edge(0, 1, 2.0, True), Edge(1, 2, 0.0, True),
                            Edge(2, 3, 3.0, True)])
    pg = embed(g)
    do, _ = oracle.diameter_brute(g)
    assert planar_diameter(pg) == pytest.approx(float(do), abs=1e-12)
    assert planar_mean(pg) == pytest.approx(float(oracle.mean_brute(g)))


def test_self_loop_boundary_rejected():
    g = ContinuousGraph(1, [Edge(0, 0, 1.0, True)], rotations={0: [0, 0]})
    pg = embed(g)
    with pytest.raises(DomainError):
        face_eccentricity(pg, 0)
