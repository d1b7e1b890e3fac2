import math
import random
from fractions import Fraction

import pytest

from contig import generate, oracle, treewidth
from contig.graph import ContinuousGraph, DomainError, Edge
from contig.roof import xi
from contig.treewidth import (PortalFrame, Separation, balanced_separation,
                              augment, check_decomposition, cross_diameter,
                              cross_sumdist, decompose, diameter_tw,
                              dump_decomposition, load_decomposition, mean_tw,
                              split_h_edges, sumdist_tw)

from reference import random_connected_graph


def unit_path(n):
    return ContinuousGraph(n, [Edge(i, i + 1, 1.0, True)
                               for i in range(n - 1)])


def unit_cycle(n):
    return ContinuousGraph(n, [Edge(i, (i + 1) % n, 1.0, True)
                               for i in range(n)])


# -- decomposition ---------------------------------------------------

def test_decompose_tree_width_one():
    rng = random.Random(0)
    edges = []
    for v in range(1, 20):
        edges.append(Edge(rng.randrange(v), v, 1.0, True))
    g = ContinuousGraph(20, edges)
    td = decompose(g)
    assert td.width == 1


def test_decompose_ladder_width_two():
    n = 6
    edges = []
    for i in range(n - 1):
        edges.append(Edge(i, i + 1, 1.0, True))
        edges.append(Edge(n + i, n + i + 1, 1.0, True))
    for i in range(n):
        edges.append(Edge(i, n + i, 1.0, True))
    g = ContinuousGraph(2 * n, edges)
    assert decompose(g).width == 2


def test_decompose_partial_ktree_bounded():
    rng = random.Random(1)
    for _ in range(10):
        g, witness = generate.ktree(rng, rng.randrange(8, 40), 3, drop=0.4)
        td = decompose(g)
        assert td.width <= witness.width
        check_decomposition(g, td)


def test_checker_rejects_missing_edge():
    g = unit_path(3)
    bad = treewidth.TreeDecomposition([frozenset({0, 1}), frozenset({2})],
                                      [(0, 1)])
    with pytest.raises(ValueError):
        check_decomposition(g, bad)


def test_checker_rejects_disconnected_vertex_subtree():
    g = unit_path(4)
    bad = treewidth.TreeDecomposition(
        [frozenset({0, 1}), frozenset({1, 2}), frozenset({2, 3, 0})],
        [(0, 1), (1, 2)])
    with pytest.raises(ValueError):
        check_decomposition(g, bad)


def test_decomposition_file_roundtrip():
    g, td = generate.ktree(random.Random(2), 25, 2, drop=0.2)
    text = dump_decomposition(td)
    back = load_decomposition(text)
    assert back.bags == td.bags
    assert sorted(back.tree) == sorted(td.tree)
    check_decomposition(g, back)


def test_decompose_rejects_self_loop():
    g = ContinuousGraph(2, [Edge(0, 1, 1.0, True), Edge(1, 1, 2.0, True)])
    with pytest.raises(DomainError):
        decompose(g)


# -- separation ------------------------------------------------------

def test_separation_path_is_balanced():
    g = unit_path(9)
    sep = balanced_separation(g, decompose(g))
    assert 2 <= len(sep.A) <= 7
    assert 2 <= len(sep.B) <= 7
    assert sep.A | sep.B == set(range(9))
    assert set(sep.portals) == sep.A & sep.B


def test_separation_star_center():
    g = ContinuousGraph(9, [Edge(0, v, 1.0, True) for v in range(1, 9)])
    sep = balanced_separation(g, decompose(g))
    assert 0 in sep.portals


def test_separation_balance_predicate():
    rng = random.Random(3)
    for _ in range(15):
        g, td = generate.ktree(rng, rng.randrange(12, 60), 3, drop=0.3)
        sep = balanced_separation(g, td)
        k = len(sep.portals)
        bound = (k / (k + 1)) * g.n + k
        assert len(sep.A) <= bound
        assert len(sep.B) <= bound
        # no edge may connect the two open sides
        for e in g.edges:
            assert not (e.tail in sep.A - sep.B and e.head in sep.B - sep.A)
            assert not (e.head in sep.A - sep.B and e.tail in sep.B - sep.A)


# -- augmentation ----------------------------------------------------

def test_augment_single_portal_keeps_side():
    # bowtie: two triangles sharing vertex 0
    edges = [Edge(0, 1, 1.0, True), Edge(1, 2, 1.0, True),
             Edge(2, 0, 1.0, True), Edge(0, 3, 1.0, True),
             Edge(3, 4, 1.0, True), Edge(4, 0, 1.0, True)]
    g = ContinuousGraph(5, edges)
    td = decompose(g)
    sep = Separation({0, 1, 2}, {0, 3, 4}, [0])
    pa, pb, _ = augment(g, td, sep)
    assert pa.graph.m == 3 and pb.graph.m == 3
    assert all(e.length == 1.0 for e in pa.graph.edges)


def test_augment_c4_chord_length():
    g = unit_cycle(4)
    td = decompose(g)
    sep = Separation({0, 1, 2}, {0, 2, 3}, [0, 2])
    pa, _, _ = augment(g, td, sep)
    clique = [e for i, e in enumerate(pa.graph.edges)
              if pa.orig_edge[i] is None]
    assert len(clique) == 1 and clique[0].length == 2.0


def test_piece_distances_match_global():
    rng = random.Random(4)
    for _ in range(8):
        g, td = generate.ktree(rng, rng.randrange(14, 40), 2, drop=0.3)
        sep = balanced_separation(g, td)
        pa, pb, _ = augment(g, td, sep)
        for piece in (pa, pb):
            pg = piece.graph
            check_decomposition(pg, piece.td)
            for _ in range(20):
                u, v = rng.randrange(pg.n), rng.randrange(pg.n)
                du = pg.dist(u, v)
                dg = g.dist(piece.orig_vertex[u], piece.orig_vertex[v])
                assert math.isclose(float(du), float(dg), abs_tol=1e-9)


def test_portal_h_edges_stay_on_a_side():
    rng = random.Random(5)
    g, td = generate.ktree(rng, 24, 3, drop=0.0)
    sep = balanced_separation(g, td)
    pa, pb, _ = augment(g, td, sep)
    sset = set(sep.portals)
    s_h = [i for i in g.h_edges()
           if g.edges[i].tail in sset and g.edges[i].head in sset]
    assert s_h, "instance should have portal-portal H-edges"
    kept = [piece_e for piece_e, orig in enumerate(pa.orig_edge)
            if orig in s_h]
    assert all(pa.graph.edges[i].in_H for i in kept)
    dropped = [piece_e for piece_e, orig in enumerate(pb.orig_edge)
               if orig in s_h]
    assert all(not pb.graph.edges[i].in_H for i in dropped)


# -- portal frame ----------------------------------------------------

def test_first_portal_unique():
    rng = random.Random(6)
    g, td = generate.ktree(rng, 30, 3, drop=0.3)
    sep = balanced_separation(g, td)
    frame = PortalFrame(g, sep.portals)
    k = len(sep.portals)
    for _ in range(60):
        a = rng.choice(sorted(sep.A))
        b = rng.choice(sorted(sep.B))
        matches = []
        for i in range(k):
            ok = True
            for j in range(k):
                if j == i:
                    continue
                lhs = frame.dist[i, a] - frame.dist[j, a]
                rhs = frame.dist[j, b] - frame.dist[i, b]
                if j < i and not lhs < rhs:
                    ok = False
                if j > i and not lhs <= rhs:
                    ok = False
            if ok:
                matches.append(i)
        assert len(matches) == 1


# -- cross step ------------------------------------------------------

def oracle_cross_max(g, e_a, e_b):
    best = float("-inf")
    for e in e_a:
        for f in e_b:
            best = max(best, oracle.walk_length(g, e, f).walk_length / 2.0)
    return best


def oracle_cross_sum(g, e_a, e_b):
    return sum(float(oracle.cross_term(g, e, f)) for e in e_a for f in e_b)


def test_cross_diameter_c4():
    g = unit_cycle(4)
    sep = Separation({0, 1, 2}, {0, 2, 3}, [0, 2])
    for method in ("direct", "rangetree"):
        assert cross_diameter(g, sep, method=method) == pytest.approx(2.0)


def test_cross_single_portal():
    edges = [Edge(0, 1, 1.5, True), Edge(1, 2, 1.0, True),
             Edge(2, 0, 2.0, True), Edge(0, 3, 1.0, True),
             Edge(3, 4, 2.5, True), Edge(4, 0, 1.0, True)]
    g = ContinuousGraph(5, edges)
    sep = Separation({0, 1, 2}, {0, 3, 4}, [0])
    e_a, e_b = split_h_edges(g, sep)
    want = oracle_cross_max(g, e_a, e_b)
    for method in ("direct", "rangetree"):
        assert cross_diameter(g, sep, method=method) == pytest.approx(want)


def test_cross_single_pair_is_xi():
    g = unit_cycle(4)
    sep = Separation({0, 1, 2}, {0, 2, 3}, [0, 2])
    e_a, e_b = [0], [2]
    want = float(xi(1.0, 1.0, 1.0, 2.0, 2.0, 1.0))
    a, b = g.edges[0], g.edges[2]
    assert want == pytest.approx(float(oracle.cross_term(g, 0, 2)))
    for method in ("direct", "rangetree"):
        got = cross_sumdist(g, sep, e_a, e_b, method=method)
        assert got == pytest.approx(want, rel=1e-9)


@pytest.mark.parametrize("unit", [False, True])
def test_cross_against_oracle(unit):
    rng = random.Random(11 if unit else 12)
    for _ in range(12):
        g, td = generate.ktree(rng, rng.randrange(10, 45),
                               rng.choice((2, 3)), unit=unit, drop=0.3)
        sep = balanced_separation(g, td)
        e_a, e_b = split_h_edges(g, sep)
        if not e_a or not e_b:
            continue
        want_max = oracle_cross_max(g, e_a, e_b)
        want_sum = oracle_cross_sum(g, e_a, e_b)
        for method in ("direct", "rangetree"):
            got = cross_diameter(g, sep, e_a, e_b, method=method)
            assert got == pytest.approx(want_max, abs=1e-9)
            got = cross_sumdist(g, sep, e_a, e_b, method=method)
            assert got == pytest.approx(want_sum, rel=1e-7)


def test_cross_empty_side():
    g = unit_cycle(4)
    sep = Separation({0, 1, 2}, {0, 2, 3}, [0, 2])
    assert cross_diameter(g, sep, [], [2]) == float("-inf")
    assert cross_sumdist(g, sep, [0], []) == 0.0


# -- drivers ---------------------------------------------------------

def test_diameter_tw_long_path():
    g = unit_path(50)
    assert diameter_tw(g) == pytest.approx(49.0)
    val, wit = diameter_tw(g, with_witness=True)
    p, q = wit
    assert g.point_distance(p, q) == pytest.approx(val)


def test_diameter_tw_unit_cycle():
    g = unit_cycle(40)
    assert diameter_tw(g) == pytest.approx(20.0)
    assert mean_tw(g) == pytest.approx(10.0, rel=1e-9)


def test_random_tree_leaf_to_leaf():
    rng = random.Random(13)
    edges = []
    for v in range(1, 45):
        edges.append(Edge(rng.randrange(v), v, rng.uniform(0.1, 5.0), True))
    g = ContinuousGraph(45, edges)
    want, _ = oracle.diameter_brute(g)
    assert diameter_tw(g) == pytest.approx(float(want), abs=1e-9)


@pytest.mark.parametrize("method", ["direct", "rangetree"])
def test_drivers_match_oracle(method):
    rng = random.Random(14)
    for _ in range(6):
        g, td = generate.ktree(rng, rng.randrange(34, 60),
                               rng.choice((2, 3)), drop=0.3)
        want_d, _ = oracle.diameter_brute(g)
        want_s = float(oracle.sumdist_brute(g))
        assert diameter_tw(g, td, method=method) == pytest.approx(
            float(want_d), abs=1e-9)
        assert sumdist_tw(g, td, method=method) == pytest.approx(
            want_s, rel=1e-7)


def test_driver_witness_realizes_value():
    rng = random.Random(15)
    for _ in range(5):
        g, td = generate.ktree(rng, rng.randrange(34, 55), 2, drop=0.3)
        val, wit = diameter_tw(g, td, with_witness=True)
        p, q = wit
        assert float(g.point_distance(p, q)) == pytest.approx(val, abs=1e-9)


def test_driver_h_subset():
    rng = random.Random(16)
    for _ in range(5):
        g, td = generate.ktree(rng, rng.randrange(34, 50), 2,
                               drop=0.3, h_prob=0.5)
        want_d, _ = oracle.diameter_brute(g)
        want_s = float(oracle.sumdist_brute(g))
        assert diameter_tw(g, td) == pytest.approx(float(want_d), abs=1e-9)
        assert sumdist_tw(g, td) == pytest.approx(want_s, rel=1e-7)


def test_reorientation_and_relabel_invariance():
    rng = random.Random(17)
    g, td = generate.ktree(rng, 40, 2, drop=0.3)
    base_d = diameter_tw(g, td)
    base_s = sumdist_tw(g, td)
    flipped = ContinuousGraph(
        g.n, [Edge(e.head, e.tail, e.length, e.in_H)
              if rng.random() < 0.5 else e for e in g.edges])
    assert diameter_tw(flipped) == pytest.approx(base_d, abs=1e-9)
    assert sumdist_tw(flipped) == pytest.approx(base_s, rel=1e-9)
    perm = list(range(g.n))
    rng.shuffle(perm)
    relabeled = ContinuousGraph(
        g.n, [Edge(perm[e.tail], perm[e.head], e.length, e.in_H)
              for e in g.edges])
    assert diameter_tw(relabeled) == pytest.approx(base_d, abs=1e-9)
    assert sumdist_tw(relabeled) == pytest.approx(base_s, rel=1e-9)


def test_rational_graph_supported():
    edges = [Edge(i, (i + 1) % 8, Fraction(1), True) for i in range(8)]
    g = ContinuousGraph(8, edges)
    assert diameter_tw(g) == pytest.approx(4.0)


def test_empty_h_rejected():
    g = ContinuousGraph(2, [Edge(0, 1, 1.0, False)])
    with pytest.raises(ValueError):
        diameter_tw(g)
    with pytest.raises(ValueError):
        sumdist_tw(g)


def test_supplied_decomposition_used():
    g, td = generate.ktree(random.Random(18), 40, 3, drop=0.2)
    want, _ = oracle.diameter_brute(g)
    assert diameter_tw(g, td) == pytest.approx(float(want), abs=1e-9)
