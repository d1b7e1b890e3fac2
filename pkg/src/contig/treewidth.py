"""Divide-and-conquer engines for bounded-treewidth graphs.

A balanced separation (A, B, S) is cut out of a tree decomposition (S
is a bag).  Distances between the two sides are resolved through the
ordered portals s_1..s_k of S: for each 4-tuple of portal indices the
edge pairs whose four endpoint shortest paths first cross S at exactly
those portals are collected by orthogonal range searching, so the
maximum walk length (diameter) or the summed roof volumes (mean) over
all cross pairs come out of canonical-set aggregates instead of a
pairwise loop.  Within a side, the graph is augmented with a portal
clique carrying exact distances and recursed on.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field

import numpy as np

from . import oracle
from .graph import ContinuousGraph, DomainError, Edge, EdgePoint
from .rangetree import Interval, Monoid, RangeTree
from .rangetree import max_with_witness_monoid as rt_max_monoid
from .roof import TYPE1, TYPE2, poly5_basis, shifted_poly, xi_array

NEG_INF = float("-inf")


# -- tree decomposition ----------------------------------------------

@dataclass
class TreeDecomposition:
    bags: list                  # list of frozensets of vertex ids
    tree: list                  # list of (i, j) bag-index pairs
    width: int = field(init=False)

    def __post_init__(self):
        self.width = max((len(b) for b in self.bags), default=1) - 1


def _simple_adjacency(g):
    adj = [set() for _ in range(g.n)]
    for e in g.edges:
        if e.tail == e.head:
            raise DomainError("self-loops are not supported here; "
                              "subdivide them first")
        adj[e.tail].add(e.head)
        adj[e.head].add(e.tail)
    return adj


def _eliminate(adj, order_key):
    """Elimination-ordering heuristic; returns bags and tree edges."""
    n = len(adj)
    adj = [set(s) for s in adj]
    alive = set(range(n))
    bags = []
    bag_of = {}          # vertex -> index of the bag created at its elimination
    elim_pos = {}
    order = []
    for step in range(n):
        v = min(alive, key=lambda u: order_key(u, adj))
        nbrs = set(adj[v])
        bags.append(frozenset({v} | nbrs))
        bag_of[v] = len(bags) - 1
        elim_pos[v] = step
        order.append(v)
        for a in nbrs:
            adj[a].discard(v)
        for a in nbrs:
            for b in nbrs:
                if a < b:
                    adj[a].add(b)
                    adj[b].add(a)
        adj[v].clear()
        alive.remove(v)
    tree = []
    for v in order:
        nbrs = bags[bag_of[v]] - {v}
        if nbrs:
            nxt = min(nbrs, key=lambda u: elim_pos[u])
            tree.append((bag_of[v], bag_of[nxt]))
    return bags, tree


def _min_degree_key(u, adj):
    return (len(adj[u]), u)


def _min_fill_key(u, adj):
    nbrs = adj[u]
    fill = sum(1 for a, b in itertools.combinations(nbrs, 2)
               if b not in adj[a])
    return (fill, len(nbrs), u)


def decompose(g):
    """Tree decomposition by min-fill and min-degree; best width wins."""
    adj = _simple_adjacency(g)
    best = None
    for key in (_min_fill_key, _min_degree_key):
        bags, tree = _eliminate(adj, key)
        td = TreeDecomposition(bags, tree)
        if best is None or td.width < best.width:
            best = td
    check_decomposition(g, best)
    return best


def check_decomposition(g, td):
    """Raise unless td is a valid tree decomposition of g."""
    covered = set().union(*td.bags) if td.bags else set()
    if covered != set(range(g.n)):
        raise ValueError("bags do not cover all vertices")
    for e in g.edges:
        if not any(e.tail in b and e.head in b for b in td.bags):
            raise ValueError(f"edge {e.tail}-{e.head} not inside any bag")
    # per-vertex bag sets must induce connected subtrees
    nbags = len(td.bags)
    tadj = [[] for _ in range(nbags)]
    for i, j in td.tree:
        tadj[i].append(j)
        tadj[j].append(i)
    for v in range(g.n):
        holding = [i for i in range(nbags) if v in td.bags[i]]
        if not holding:
            raise ValueError(f"vertex {v} in no bag")
        seen = {holding[0]}
        stack = [holding[0]]
        holdset = set(holding)
        while stack:
            i = stack.pop()
            for j in tadj[i]:
                if j in holdset and j not in seen:
                    seen.add(j)
                    stack.append(j)
        if seen != holdset:
            raise ValueError(f"bags containing vertex {v} are not connected")
    return True


def load_decomposition(text):
    """Parse 'bag v1 v2 ...' and 'tedge i j' lines."""
    bags = []
    tree = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if toks[0] == "bag":
            bags.append(frozenset(int(t) for t in toks[1:]))
        elif toks[0] == "tedge":
            tree.append((int(toks[1]), int(toks[2])))
        else:
            raise ValueError(f"line {lineno}: expected 'bag' or 'tedge'")
    return TreeDecomposition(bags, tree)


def dump_decomposition(td):
    out = ["bag " + " ".join(map(str, sorted(b))) for b in td.bags]
    out += [f"tedge {i} {j}" for i, j in td.tree]
    return "\n".join(out) + "\n"


# -- balanced separation ---------------------------------------------

@dataclass
class Separation:
    A: set
    B: set
    portals: list  # S ordered by vertex id


def balanced_separation(g, td):
    """Pick a centroid bag S and split the remaining vertices.

    Removing a bag's node from the decomposition tree splits the other
    vertices into groups (one per tree component); the centroid bag
    minimizes the largest group, and the groups are then packed
    greedily into the two sides.
    """
    nbags = len(td.bags)
    if nbags == 1:
        s = sorted(td.bags[0])
        return Separation(set(range(g.n)), set(s), s)
    tadj = [[] for _ in range(nbags)]
    for i, j in td.tree:
        tadj[i].append(j)
        tadj[j].append(i)
    best = None
    for c in range(nbags):
        S = td.bags[c]
        seen = [False] * nbags
        seen[c] = True
        groups = []
        for start in tadj[c]:
            if seen[start]:
                continue
            verts = set()
            stack = [start]
            seen[start] = True
            while stack:
                i = stack.pop()
                verts |= td.bags[i]
                for j in tadj[i]:
                    if not seen[j]:
                        seen[j] = True
                        stack.append(j)
            groups.append(verts - S)
        groups = [gr for gr in groups if gr]
        maxw = max((len(gr) for gr in groups), default=0)
        cand = (maxw, len(S), c)
        if best is None or cand < best[0]:
            best = (cand, c, groups)
    _, c, groups = best
    S = sorted(td.bags[c])
    groups.sort(key=len, reverse=True)
    side_a, side_b = set(), set()
    for gr in groups:
        if len(side_a) <= len(side_b):
            side_a |= gr
        else:
            side_b |= gr
    sset = set(S)
    return Separation(side_a | sset, side_b | sset, S)


# -- augmentation ----------------------------------------------------

@dataclass
class Piece:
    graph: ContinuousGraph
    td: TreeDecomposition
    orig_edge: list   # piece edge id -> parent edge id (None for clique edges)
    orig_vertex: list  # piece vertex id -> parent vertex id


def _restrict(g, td, vertices, portals, pdist, keep_s_h):
    """Build one side's augmented piece.

    Keeps every induced edge; adds a portal-clique edge (flagged out of
    H) per portal pair with the exact distance; portal-portal original
    edges keep their length but keep H status only when keep_s_h.
    """
    verts = sorted(vertices)
    new_id = {v: i for i, v in enumerate(verts)}
    sset = set(portals)
    edges = []
    orig = []
    for ei, e in enumerate(g.edges):
        if e.tail in vertices and e.head in vertices:
            in_s = e.tail in sset and e.head in sset
            in_h = e.in_H and (keep_s_h or not in_s)
            edges.append(Edge(new_id[e.tail], new_id[e.head], e.length, in_h))
            orig.append(ei)
    for ia, ib in itertools.combinations(range(len(portals)), 2):
        s, t = portals[ia], portals[ib]
        edges.append(Edge(new_id[s], new_id[t], pdist[ia][t], False))
        orig.append(None)
    piece = ContinuousGraph(len(verts), edges)
    bags = [frozenset(new_id[v] for v in bag if v in vertices)
            for bag in td.bags]
    keep = [i for i, b in enumerate(bags) if b]
    remap = {i: pos for pos, i in enumerate(keep)}
    # contract dropped (empty) bags onto their nearest kept neighbor by
    # collapsing tree edges through them
    parent_edges = []
    if keep:
        nbags = len(bags)
        tadj = [[] for _ in range(nbags)]
        for i, j in td.tree:
            tadj[i].append(j)
            tadj[j].append(i)
        rep = list(range(nbags))

        def find(i):
            while rep[i] != i:
                rep[i] = rep[rep[i]]
                i = rep[i]
            return i

        for i in range(nbags):
            if not bags[i]:
                # merge an empty node into any neighbor
                for j in tadj[i]:
                    rep[find(i)] = find(j)
                    break
        for i, j in td.tree:
            ri, rj = find(i), find(j)
            if ri != rj and bags[ri] and bags[rj]:
                parent_edges.append((remap[ri], remap[rj]))
        # fallthrough merges can leave representatives pointing at
        # empty bags when chains of empties end the tree; drop those
        parent_edges = [(i, j) for i, j in set(parent_edges)]
    new_td = TreeDecomposition([bags[i] for i in keep], parent_edges)
    return Piece(piece, new_td, orig, verts)


def augment(g, td, sep):
    """The two augmented pieces for a separation."""
    pdist = [g.sssp(s)[0] for s in sep.portals]
    piece_a = _restrict(g, td, sep.A, sep.portals, pdist, keep_s_h=True)
    piece_b = _restrict(g, td, sep.B, sep.portals, pdist, keep_s_h=False)
    return piece_a, piece_b, pdist


# -- the cross step --------------------------------------------------

class PortalFrame:
    """Distances from every portal, as one (k, n) float matrix.

    Distances are snapped to a power-of-two grid fine enough to move
    each value by at most ~3e-14 relative, yet coarse enough that sums
    and differences of up to four snapped values are exact in doubles.
    Mathematically equal portal sums d(a,s_i)+d(s_i,b) (ubiquitous once
    clique shortcuts exist) would otherwise compare inconsistently
    across the first-portal inequalities and drop edge pairs from every
    portal tuple.
    """

    def __init__(self, g, portals):
        self.portals = list(portals)
        dist = np.array([[float(x) for x in g.sssp(s)[0]]
                         for s in self.portals])
        top = float(np.max(dist, initial=1.0))
        eta = 2.0 ** (math.floor(math.log2(max(top, 1.0))) - 44)
        self.dist = np.round(dist / eta) * eta


def split_h_edges(g, sep):
    """H-edges of each side; portal-portal edges go to the A side."""
    e_a, e_b = [], []
    for ei in g.h_edges():
        e = g.edges[ei]
        if e.tail in sep.A and e.head in sep.A:
            e_a.append(ei)
        else:
            e_b.append(ei)
    return e_a, e_b


def _edge_arrays(g, edge_ids):
    tails = np.array([g.edges[e].tail for e in edge_ids], dtype=np.intp)
    heads = np.array([g.edges[e].head for e in edge_ids], dtype=np.intp)
    lengths = np.array([float(g.edges[e].length) for e in edge_ids])
    return tails, heads, lengths


def _pair_max_monoid():
    mw = rt_max_monoid()
    ident = (mw.identity, mw.identity)

    def combine(a, b):
        return (mw.combine(a[0], b[0]), mw.combine(a[1], b[1]))

    return Monoid(ident, combine)


def _triple_sum_monoid():
    zero = np.zeros(56)

    def combine(a, b):
        return (a[0] + b[0], a[1] + b[1], a[2] + b[2])

    return Monoid((zero, zero, 0), combine)


def _cross_rangetree(g, frame, e_a, e_b, want_sum):
    """Per portal 4-tuple, collect the matching edge pairs by rectangle
    queries over canonical families and read the answers off aggregates.

    Point coordinates keep the j == i slot (always 0, bounded by a
    closed 0), which makes every block exactly k coordinates wide.
    Returns (max walk value, (a-edge, b-edge)) or (sum of roof volumes,
    pair count) depending on want_sum.
    """
    k = len(frame.portals)
    D = frame.dist
    at, ah, al = _edge_arrays(g, e_a)
    bt, bh, bl = _edge_arrays(g, e_b)
    m_a, m_b = len(e_a), len(e_b)
    best = (NEG_INF, None)
    total = 0.0
    count = 0
    monoid = _triple_sum_monoid() if want_sum else _pair_max_monoid()
    for kappa in itertools.product(range(k), repeat=4):
        i00, i01, i10, i11 = kappa
        cols = []
        for i, av in ((i00, at), (i01, at), (i10, ah), (i11, ah)):
            for j in range(k):
                if j != i:
                    cols.append(D[i, av] - D[j, av])
        cols.append(D[i00, at] + D[i11, ah] - D[i01, at] - D[i10, ah])
        pts = np.column_stack(cols) if m_a else np.zeros((0, 1))
        d00, d01 = D[i00, at], D[i01, at]
        d10, d11 = D[i10, ah], D[i11, ah]
        if want_sum:
            values = [(shifted_poly(al[x], d00[x], d01[x], d10[x], d11[x],
                                    TYPE1),
                       shifted_poly(al[x], d00[x], d01[x], d10[x], d11[x],
                                    TYPE2), 1)
                      for x in range(m_a)]
        else:
            w1 = d00 + al + d11
            w2 = d01 + al + d10
            values = [((w1[x], e_a[x]), (w2[x], e_a[x])) for x in range(m_a)]
        tree = RangeTree([tuple(p) for p in pts], values, monoid,
                         leaf_cutoff=8, lazy=True)
        bnds = []
        for i, bv in ((i00, bt), (i01, bh), (i10, bt), (i11, bh)):
            for j in range(k):
                if j != i:
                    bnds.append((D[j, bv] - D[i, bv], j < i))
        v_extra = D[i01, bh] + D[i10, bt] - D[i00, bt] - D[i11, bh]
        eps00, eps01 = D[i00, bt], D[i01, bh]
        eps10, eps11 = D[i10, bt], D[i11, bh]
        for y in range(m_b):
            base = tuple(Interval(None, arr[y], hi_open=op)
                         for arr, op in bnds)
            r1 = base + (Interval(None, v_extra[y]),)
            r2 = base + (Interval(v_extra[y], None, lo_open=True),)
            if want_sum:
                f1 = tree.query_fold(r1)
                f2 = tree.query_fold(r2)
                count += f1[2] + f2[2]
                if f1[2] or f2[2]:
                    basis = poly5_basis(bl[y], eps00[y], eps01[y],
                                        eps10[y], eps11[y])
                    total += float(f1[0] @ basis) + float(f2[1] @ basis)
            else:
                omega = tree.query_fold(r1)[0]
                if omega[1] is not None:
                    lam = omega[0] + eps00[y] + bl[y] + eps11[y]
                    cand = (lam, (omega[1], e_b[y]))
                    if cand[0] > best[0] or (cand[0] == best[0]
                                             and best[1] is not None
                                             and cand[1] < best[1]):
                        best = cand
                omega = tree.query_fold(r2)[1]
                if omega[1] is not None:
                    lam = omega[0] + eps10[y] + bl[y] + eps01[y]
                    cand = (lam, (omega[1], e_b[y]))
                    if cand[0] > best[0] or (cand[0] == best[0]
                                             and best[1] is not None
                                             and cand[1] < best[1]):
                        best = cand
    if want_sum:
        if count != m_a * m_b:
            raise ArithmeticError(
                f"portal partition covered {count} of {m_a * m_b} pairs; "
                "coordinate roundoff broke the first-portal order")
        return total, count
    return best


def _cross_direct(g, frame, e_a, e_b, want_sum, chunk=1024):
    """Same cross values through dense portal-distance minimization.

    Every A-to-B shortest path crosses a portal, so each endpoint
    distance is min_i d(a,s_i)+d(s_i,b); the per-pair walk lengths or
    roof volumes then vectorize over edge-pair blocks.
    """
    D = frame.dist
    at, ah, al = _edge_arrays(g, e_a)
    bt, bh, bl = _edge_arrays(g, e_b)
    k = len(frame.portals)
    best = (NEG_INF, None)
    total = 0.0
    for lo in range(0, len(e_b), chunk):
        sl = slice(lo, lo + chunk)
        parts = {}
        for tag, av, bv in (("00", at, bt[sl]), ("01", at, bh[sl]),
                            ("10", ah, bt[sl]), ("11", ah, bh[sl])):
            acc = None
            for i in range(k):
                cand = D[i, av][:, None] + D[i, bv][None, :]
                acc = cand if acc is None else np.minimum(acc, cand)
            parts[tag] = acc
        if want_sum:
            vol = xi_array(al[:, None], bl[sl][None, :], parts["00"],
                           parts["01"], parts["10"], parts["11"])
            total += float(vol.sum())
        else:
            walk = al[:, None] + bl[sl][None, :] + np.minimum(
                parts["00"] + parts["11"], parts["01"] + parts["10"])
            if walk.size:
                x, y = np.unravel_index(np.argmax(walk), walk.shape)
                v = float(walk[x, y])
                if v > best[0]:
                    best = (v, (e_a[x], e_b[lo + y]))
    if want_sum:
        return total, len(e_a) * len(e_b)
    return best


def _cross_method(method):
    if method == "auto":
        method = os.environ.get("CONTIG_CROSS", "direct")
    if method not in ("direct", "rangetree"):
        raise ValueError(f"unknown cross method {method!r}")
    return method


def cross_diameter(g, sep, e_a=None, e_b=None, frame=None,
                   method="rangetree"):
    """Max distance over pairs with one point on each side's H-edges.

    Returns -inf when either side is empty.
    """
    if e_a is None or e_b is None:
        e_a, e_b = split_h_edges(g, sep)
    if not e_a or not e_b:
        return NEG_INF
    if frame is None:
        frame = PortalFrame(g, sep.portals)
    fn = _cross_rangetree if _cross_method(method) == "rangetree" \
        else _cross_direct
    value, _ = fn(g, frame, e_a, e_b, want_sum=False)
    return value / 2.0


def cross_sumdist(g, sep, e_a=None, e_b=None, frame=None,
                  method="rangetree"):
    """Integral of d(p,q) over A-side x B-side H-points (one order)."""
    if e_a is None or e_b is None:
        e_a, e_b = split_h_edges(g, sep)
    if not e_a or not e_b:
        return 0.0
    if frame is None:
        frame = PortalFrame(g, sep.portals)
    fn = _cross_rangetree if _cross_method(method) == "rangetree" \
        else _cross_direct
    total, _ = fn(g, frame, e_a, e_b, want_sum=True)
    return total


# -- divide and conquer ----------------------------------------------

BASE_VERTICES = 32


def _separate(g, td):
    """A progress-making separation, or None to fall back to the oracle."""
    if g.n <= BASE_VERTICES:
        return None
    sep = balanced_separation(g, td)
    k = len(sep.portals)
    if g.n <= max(2 * k + 2, BASE_VERTICES):
        return None
    if len(sep.A) >= g.n or len(sep.B) >= g.n:
        return None
    return sep


def _map_witness(piece, witness):
    if witness is None:
        return None
    p, q = witness
    return (EdgePoint(piece.orig_edge[p.edge], p.offset),
            EdgePoint(piece.orig_edge[q.edge], q.offset))


def _order_witness(w):
    if w is None:
        return None
    p, q = w
    return (q, p) if q.key() < p.key() else (p, q)


def _cross_pair_witness(g, frame, pair):
    """Exact maximizing points for the best cross edge pair."""
    ea, eb = pair
    a, b = g.edges[ea], g.edges[eb]
    D = frame.dist
    x = {}
    for tag, u, v in (("00", a.tail, b.tail), ("01", a.tail, b.head),
                      ("10", a.head, b.tail), ("11", a.head, b.head)):
        x[tag] = float(np.min(D[:, u] + D[:, v]))
    s1 = x["00"] + x["11"]
    s2 = x["01"] + x["10"]
    y, z = float(a.length), float(b.length)
    walk = y + z + min(s1, s2)
    return oracle.cross_witness(ea, eb, y, z, x["00"], x["01"], x["10"],
                                x["11"], walk, 1 if s1 <= s2 else 2)


def _diameter_rec(g, td, method):
    h = g.h_edges()
    if not h:
        return NEG_INF, None
    sep = _separate(g, td)
    if sep is None:
        val, wit = oracle.diameter_brute(g)
        return float(val), wit
    e_a, e_b = split_h_edges(g, sep)
    frame = PortalFrame(g, sep.portals)
    candidates = []
    if e_a and e_b:
        fn = _cross_rangetree if method == "rangetree" else _cross_direct
        walk, pair = fn(g, frame, e_a, e_b, want_sum=False)
        if pair is not None:
            wit = _order_witness(_cross_pair_witness(g, frame, pair))
            candidates.append((walk / 2.0, wit))
    piece_a, piece_b, _ = augment(g, td, sep)
    for piece in (piece_a, piece_b):
        val, wit = _diameter_rec(piece.graph, piece.td, method)
        if wit is not None:
            candidates.append((val, _order_witness(_map_witness(piece, wit))))
    if not candidates:
        return NEG_INF, None
    return max(candidates,
               key=lambda c: (c[0], tuple(-v for p in c[1]
                                          for v in (p.edge, p.offset))))


def _sumdist_rec(g, td, method):
    h = g.h_edges()
    if not h:
        return 0.0
    sep = _separate(g, td)
    if sep is None:
        return float(oracle.sumdist_brute(g))
    e_a, e_b = split_h_edges(g, sep)
    frame = PortalFrame(g, sep.portals)
    cross = 0.0
    if e_a and e_b:
        fn = _cross_rangetree if method == "rangetree" else _cross_direct
        cross, _ = fn(g, frame, e_a, e_b, want_sum=True)
    piece_a, piece_b, _ = augment(g, td, sep)
    return (2.0 * cross + _sumdist_rec(piece_a.graph, piece_a.td, method)
            + _sumdist_rec(piece_b.graph, piece_b.td, method))


def diameter_tw(g, td=None, method="auto", with_witness=False):
    """Diameter of the H-part by balanced-separation recursion.

    Portal-portal H-edges stay intact (as extra parallel edges beside
    the re-lengthed clique) on the A side, so every H-edge reaches a
    base case and no separate correction term is needed.
    """
    if not g.h_edges():
        raise ValueError("H is empty")
    if td is None:
        td = decompose(g)
    val, wit = _diameter_rec(g, td, _cross_method(method))
    return (val, wit) if with_witness else val


def sumdist_tw(g, td=None, method="auto"):
    """Integral of d over ordered H-point pairs, by the same recursion."""
    if not g.h_edges():
        raise ValueError("H is empty")
    if td is None:
        td = decompose(g)
    return _sumdist_rec(g, td, _cross_method(method))


def mean_tw(g, td=None, method="auto"):
    length = float(g.h_length())
    return sumdist_tw(g, td, method) / (length * length)
