"""Quadratic-time reference engine.

Diameter, sum of distances, mean distance, and point eccentricity from
all-pairs vertex distances.  The key fact: for two distinct edges aa'
and bb', the farthest pair of points, one on each edge, realizes half
the length of the shortest closed walk through both edges,

    len(W) = l(aa') + l(bb') + min{d(a,b) + d(a',b'), d(a,b') + d(a',b)}.

Pairs on a single edge are a degenerate case handled separately (the
walk formula would let the walk traverse the edge twice for free).
Every other engine in the package is tested against this one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graph import EdgePoint, subdivide
from .roof import xi


@dataclass(frozen=True)
class ClosedWalkValue:
    walk_length: object
    pairing: int  # 1: (a-b, a'-b'), 2: (a-b', a'-b)


def prepare(g):
    """Subdivide every self-loop once; the formulas below then never
    see an edge with equal endpoints."""
    cuts = {i: [e.length / 2] for i, e in enumerate(g.edges) if e.tail == e.head}
    if not cuts:
        return g
    return subdivide(g, cuts)[0]


def _half(val):
    return val / 2 if isinstance(val, Fraction) else val / 2.0


def walk_length(g, e1, e2):
    """Shortest closed walk through two distinct edges."""
    if e1 == e2:
        raise ValueError("same-edge pairs are handled by max_same_edge")
    a, b = g.edges[e1], g.edges[e2]
    s1 = g.dist(a.tail, b.tail) + g.dist(a.head, b.head)
    s2 = g.dist(a.tail, b.head) + g.dist(a.head, b.tail)
    total = a.length + b.length + min(s1, s2)
    return ClosedWalkValue(total, 1 if s1 <= s2 else 2)


def max_same_edge(g, e):
    """Farthest pair of points both on edge e.

    With D = d(tail, head) and t = |lam - mu|, the distance between two
    offsets is min(t, D + l - t), maximized at t = (l + D)/2.
    """
    edge = g.edges[e]
    return _half(edge.length + g.dist(edge.tail, edge.head))


def cross_witness(e1, e2, y, z, x00, x01, x10, x11, walk_total, pairing):
    """A maximizing point pair for two distinct edges.

    The two active planes of the realizing pairing balance along a
    segment of maximizers; take the smallest feasible offset on e1.
    """
    v = _half(walk_total)
    zero = 0 * y
    if pairing == 1:
        # planes x00 + lam + mu and x11 + (y-lam) + (z-mu) both equal v;
        # feasibility of the other two planes bounds lam
        c = v - x00  # lam + mu on the balance segment
        lo = max(zero, c - z, _half(v - x01 - z + c))
        lam = min(max(lo, zero), y)
        mu = c - lam
    else:
        # planes x01 + lam + (z-mu) and x10 + (y-lam) + mu equal v
        c = v - x01 - z  # lam - mu
        lo = max(zero, c, _half(v - x00 + c))
        lam = min(max(lo, zero), y)
        mu = lam - c
    mu = min(max(mu, 0 * z), z)
    return EdgePoint(e1, lam), EdgePoint(e2, mu)


def _cross_witness(g, e1, e2, wl):
    a, b = g.edges[e1], g.edges[e2]
    return cross_witness(e1, e2, a.length, b.length,
                         g.dist(a.tail, b.tail), g.dist(a.tail, b.head),
                         g.dist(a.head, b.tail), g.dist(a.head, b.head),
                         wl.walk_length, wl.pairing)


def _wkey(witness):
    p, q = witness
    return (p.key(), q.key())


def diameter_brute(g, h_edges=None):
    """Diameter of the H-part with a witness point pair."""
    if h_edges is None:
        h_edges = g.h_edges()
    if not h_edges:
        raise ValueError("H is empty")
    best = None
    best_witness = None
    for idx, e in enumerate(h_edges):
        edge = g.edges[e]
        v = max_same_edge(g, e)
        t0 = _half(edge.length + g.dist(edge.tail, edge.head))
        w = (EdgePoint(e, 0 * edge.length), EdgePoint(e, t0))
        if best is None or v > best or (v == best and _wkey(w) < _wkey(best_witness)):
            best, best_witness = v, w
        for f in h_edges[idx + 1:]:
            wl = walk_length(g, e, f)
            v = _half(wl.walk_length)
            if v < best:
                continue
            w = _cross_witness(g, e, f, wl)
            if w[1].key() < w[0].key():
                w = (w[1], w[0])
            if v > best or (v == best and _wkey(w) < _wkey(best_witness)):
                best, best_witness = v, w
    return best, best_witness


def _self_term(g, e):
    """Integral of d(p, q) over ordered point pairs of a single edge.

    Splits the distance min(t, D + L - t), t = |lam - mu|, at
    t0 = (L + D)/2 and uses that |lam - mu| = t on a set of measure
    2(L - t) dt.
    """
    edge = g.edges[e]
    L = edge.length
    D = g.dist(edge.tail, edge.head)
    t0 = _half(L + D)
    s0 = _half(L - D)
    third = Fraction(2, 3) if isinstance(L, Fraction) else (2.0 / 3.0)
    return L * t0 ** 2 - third * t0 ** 3 + D * s0 ** 2 + third * s0 ** 3


def cross_term(g, e, f):
    """Integral of d(p, q) over e x f (one ordering), e != f."""
    a, b = g.edges[e], g.edges[f]
    return xi(a.length, b.length,
              g.dist(a.tail, b.tail), g.dist(a.tail, b.head),
              g.dist(a.head, b.tail), g.dist(a.head, b.head))


def sumdist_brute(g, h_edges=None):
    """Integral of d(p, q) over ordered pairs of points of the H-part."""
    if h_edges is None:
        h_edges = g.h_edges()
    if not h_edges:
        raise ValueError("H is empty")
    total = 0
    for e in h_edges:
        total = total + _self_term(g, e)
    if g.rational or len(h_edges) < 2:
        for idx, e in enumerate(h_edges):
            for f in h_edges[idx + 1:]:
                total = total + 2 * cross_term(g, e, f)
        return total
    import numpy as np
    from .roof import xi_array
    dm = np.asarray(g.all_pairs(), dtype=float)
    tails = np.array([g.edges[e].tail for e in h_edges])
    heads = np.array([g.edges[e].head for e in h_edges])
    lens = np.array([float(g.edges[e].length) for e in h_edges])
    iu, ju = np.triu_indices(len(h_edges), 1)
    cross = xi_array(lens[iu], lens[ju],
                     dm[tails[iu], tails[ju]], dm[tails[iu], heads[ju]],
                     dm[heads[iu], tails[ju]], dm[heads[iu], heads[ju]])
    return total + 2.0 * float(cross.sum())


def mean_brute(g, h_edges=None):
    if h_edges is None:
        h_edges = g.h_edges()
    length = sum(g.edges[e].length for e in h_edges)
    return sumdist_brute(g, h_edges) / (length * length)


def eccentricity_point(g, p):
    """Largest distance from point p to any point of the graph.

    An edge xy (other than p's own) contributes
    (d(p,x) + d(p,y) + l(xy)) / 2: the two routes toward an interior
    point balance there, and a shortest-path-tree edge degenerates to
    the far vertex distance.  On p's own edge the direct route caps the
    reachable |lam - mu| at max(lam, l - lam).
    """
    dist_to = {}
    for e in g.edges:
        for v in (e.tail, e.head):
            if v not in dist_to:
                dist_to[v] = g.point_distance(p, g.vertex_point(v))
    best = None
    for i, e in enumerate(g.edges):
        if i == p.edge:
            lam = p.offset
            around = g.dist(e.tail, e.head)
            cand = min(max(lam, e.length - lam), _half(around + e.length))
        else:
            cand = _half(dist_to[e.tail] + dist_to[e.head] + e.length)
        if best is None or cand > best:
            best = cand
    return best
