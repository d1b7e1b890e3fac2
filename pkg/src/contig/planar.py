"""Sliding-source sweeps over the faces of a plane graph.

A plane graph is a continuous graph together with a rotation system
(clockwise incidence order at every vertex).  Faces are the orbits of
the dart successor map.  The engine slides a source point along a
facial walk while maintaining a shortest-path tree rooted at the
moving source, and evaluates either the maximum eccentricity over the
face boundary or the double integral of distances from boundary
sources to the whole H-part.

The tree changes at discrete pivot events: an edge enters the tree and
the previous parent edge of its far endpoint leaves.  Two execution
modes share one event loop.  "fast" maintains the distance labels in a
vertex forest and the non-tree edges, as an embedded tree in the dual,
in an embedded forest.  "checked" re-derives everything from a fresh
Dijkstra run at every event and is the differential oracle for "fast".
"""

from __future__ import annotations

import heapq
import logging
import math
from bisect import bisect_left, insort
from dataclasses import dataclass

from .dynforest import NO_ANCHOR, EmbeddedForest, VertexForest
from .graph import DomainError, EdgePoint
from .oracle import _self_term

log = logging.getLogger(__name__)

RED, BLUE = 0, 1

# stub markers for the two halves of the edge the source sits on
_SU, _SV = -2, -1

_NEG = float("-inf")

# Orientation constants, fixed once by the differential tests: the
# artificial dual endpoints sit just before (A) / just after (B) the
# source dart's rotation slot, and the side of the walk ahead of the
# source is the left side of the a-to-b path in the dual tree.
_A_OFF = -0.25
_B_OFF = 0.25
_BLUE_LEFT = True


# --------------------------------------------------------------------------
# plane graphs: darts, faces, dual
# --------------------------------------------------------------------------


class PlaneGraph:
    """Continuous graph plus an embedding: faces, darts and the dual.

    Dart 2e runs tail-to-head of edge e and dart 2e+1 the other way.
    ``walks[f]`` lists the darts of face f in traversal order;
    ``dart_face[d]`` and ``dart_slot[d]`` give each dart's face and its
    position in that face's walk.  The walk order around a face is also
    the rotation of the corresponding dual vertex, so dual edge
    ``(dart_face[2e], dart_face[2e+1])`` sits at slots
    ``dart_slot[2e]`` / ``dart_slot[2e+1]``.
    """

    def __init__(self, g, walks, dart_face, dart_slot):
        self.g = g
        self.walks = walks
        self.dart_face = dart_face
        self.dart_slot = dart_slot

    @property
    def F(self):
        return len(self.walks)

    def dual_edge(self, e):
        return (self.dart_face[2 * e], self.dart_face[2 * e + 1])

    def boundary_length(self, f):
        return sum(self.g.edges[d // 2].length for d in self.walks[f])

    def face_h_darts(self, f):
        return [d for d in self.walks[f] if self.g.edges[d // 2].in_H]


def _derive_rotations(g):
    """Rotation system for a graph that came without one.

    Degree <= 2 vertices have a unique cyclic order, so paths and
    cycles need no embedder; anything else goes through a planarity
    test on the underlying simple graph.
    """
    if all(len(a) <= 2 for a in g.adj):
        return {v: list(g.adj[v]) for v in range(g.n)}
    simple = {}
    for ei, e in enumerate(g.edges):
        key = (min(e.tail, e.head), max(e.tail, e.head))
        if e.tail == e.head or key in simple:
            raise DomainError("parallel edges or self-loops need an "
                              "explicit rotation system")
        simple[key] = ei
    import networkx as nx

    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(simple)
    ok, emb = nx.check_planarity(G)
    if not ok:
        raise DomainError("graph is not planar; supply a rotation system")
    rot = {}
    for v in range(g.n):
        order = []
        for w in (emb.neighbors_cw_order(v) if G.degree(v) else ()):
            key = (min(v, w), max(v, w))
            order.append(simple[key])
        rot[v] = order
    return rot


def embed(g):
    """Build the PlaneGraph of ``g`` and check it is consistent.

    A supplied rotation system is trusted up to Euler's formula; a
    rotation system whose face count violates it is rejected.  Without
    rotations a standard planarity embedder supplies them (DomainError
    for nonplanar input).
    """
    rot = dict(g.rotations) if g.rotations else {}
    for v in range(g.n):
        if v not in rot:
            if len(g.adj[v]) <= 2:
                rot[v] = list(g.adj[v])
            else:
                rot = _derive_rotations(g)
                break
    leave = [None] * g.n           # vertex -> darts leaving it, clockwise
    slot_at = {}                   # dart -> its index in leave[vertex]
    for v in range(g.n):
        order = rot.get(v, [])
        want = sorted(g.adj[v])
        for ei in g.adj[v]:
            if g.edges[ei].tail == g.edges[ei].head:
                want.append(ei)  # a self-loop occupies two rotation slots
        if sorted(order) != sorted(want):
            raise DomainError(f"rotation at vertex {v} does not list its "
                              "incident edges")
        darts = []
        loop_seen = {}
        for ei in order:
            e = g.edges[ei]
            if e.tail == e.head:
                d = 2 * ei + loop_seen.get(ei, 0)
                loop_seen[ei] = 1
            else:
                d = 2 * ei + (0 if v == e.tail else 1)
            slot_at[d] = len(darts)
            darts.append(d)
        leave[v] = darts
    if len(slot_at) != 2 * g.m:
        raise DomainError("rotation system does not cover every dart")

    def head(d):
        e = g.edges[d // 2]
        return e.head if d % 2 == 0 else e.tail

    walks = []
    dart_face = [-1] * (2 * g.m)
    dart_slot = [-1] * (2 * g.m)
    for d0 in range(2 * g.m):
        if dart_face[d0] >= 0:
            continue
        walk = []
        d = d0
        while True:
            dart_face[d] = len(walks)
            dart_slot[d] = len(walk)
            walk.append(d)
            h = head(d)
            lst = leave[h]
            d = lst[(slot_at[d ^ 1] + 1) % len(lst)]
            if d == d0:
                break
        walks.append(walk)
    if g.n - g.m + len(walks) != 2:
        raise DomainError("rotation system is not a planar embedding "
                          f"(n - m + F = {g.n - g.m + len(walks)})")
    return PlaneGraph(g, walks, dart_face, dart_slot)


# --------------------------------------------------------------------------
# the shared event loop
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class PivotEvent:
    """One tree change while the source slides along the face."""

    s: EdgePoint
    edge_in: int
    edge_out: int


class _PivotRec:
    __slots__ = ("ein", "eout", "x", "y", "flips")

    def __init__(self, ein, eout, x, y, flips):
        self.ein, self.eout, self.x, self.y, self.flips = ein, eout, x, y, flips


class _CrossRec:
    __slots__ = ("old_dart", "new_dart", "old_edge", "su_was", "e1_in_tree",
                 "final")

    def __init__(self, old_dart, new_dart, old_edge, su_was, e1_in_tree):
        self.old_dart, self.new_dart = old_dart, new_dart
        self.old_edge, self.su_was = old_edge, su_was
        self.e1_in_tree = e1_in_tree
        self.final = False


def _dijkstra_tree(g, s):
    """Distances plus a deterministic shortest-path tree (parent edges)."""
    inf = math.inf
    dist = [inf] * g.n
    pv = [-1] * g.n
    pe = [-1] * g.n
    dist[s] = 0.0
    pq = [(0.0, s)]
    done = [False] * g.n
    while pq:
        dd, v = heapq.heappop(pq)
        if done[v]:
            continue
        done[v] = True
        for ei in g.adj[v]:
            e = g.edges[ei]
            w = e.other(v)
            nd = dd + float(e.length)
            if nd < dist[w]:
                dist[w] = nd
                pv[w], pe[w] = v, ei
                heapq.heappush(pq, (nd, w))
    return dist, pv, pe


def _point_labels(g, e0, pos):
    """Distances from the point at offset ``pos`` on edge ``e0``."""
    edge = g.edges[e0]
    inf = math.inf
    dist = [inf] * g.n
    pq = []
    L = float(edge.length)
    for v, d0 in ((edge.tail, pos), (edge.head, L - pos)):
        if d0 < dist[v]:
            dist[v] = d0
            heapq.heappush(pq, (d0, v))
    done = [False] * g.n
    while pq:
        dd, v = heapq.heappop(pq)
        if done[v] or dd > dist[v]:
            continue
        done[v] = True
        for ei in g.adj[v]:
            e = g.edges[ei]
            w = e.other(v)
            nd = dd + float(e.length)
            if nd < dist[w]:
                dist[w] = nd
                heapq.heappush(pq, (nd, w))
    return dist


class _Consumer:
    """Hook points of one face sweep, called after the state change."""

    def on_start(self, sw):
        pass

    def on_slide(self, sw, lam):
        pass

    def on_pivot(self, sw, rec):
        pass

    def on_cross(self, sw, rec):
        pass


class _FaceSweep:
    """Slides the source along one facial walk, firing pivot events.

    Keeps an explicit shortest-path tree (parent edge per vertex, with
    the stub markers for the two halves of the source edge), a colour
    per vertex (RED behind the source, BLUE ahead of it) and a label
    base so that d(source, x) = base[x] + pos for red and base[x] - pos
    for blue vertices.  Within one edge the colour flips are monotone
    (red turns blue, never back), which bounds the events per edge by
    the vertex count.
    """

    def __init__(self, pg, f, s0=None):
        self.pg = pg
        self.g = pg.g
        self.f = f
        walk = pg.walks[f]
        if s0 is not None:
            for i, d in enumerate(walk):
                if self._tail(d) == s0:
                    walk = walk[i:] + walk[:i]
                    break
            else:
                raise DomainError(f"vertex {s0} is not on face {f}")
        self.walk = walk
        self.total_pivots = 0

    def _tail(self, d):
        e = self.g.edges[d // 2]
        return e.tail if d % 2 == 0 else e.head

    def label(self, x):
        if self.color[x] == RED:
            return self.base[x] + self.pos
        return self.base[x] - self.pos

    def s_point(self):
        off = self.pos if self.dart % 2 == 0 else self.L0 - self.pos
        return EdgePoint(self.e0, off)

    def s_in_h(self):
        """Whether the current source point belongs to the H-part."""
        g = self.g
        if 0.0 < self.pos < self.L0:
            return g.edges[self.e0].in_H
        v = self.u0 if self.pos == 0.0 else self.v0
        return any(g.edges[e].in_H for e in g.adj[v])

    # -- tree bookkeeping --------------------------------------------------

    def _subtree(self, y):
        out = [y]
        i = 0
        while i < len(out):
            out.extend(self.children[out[i]])
            i += 1
        return out

    def _init_tree(self):
        g = self.g
        s0 = self._tail(self.walk[0])
        dist, pv, pe = _dijkstra_tree(g, s0)
        self.base = dist
        self.parent = pv
        self.parent_edge = pe
        self.children = [set() for _ in range(g.n)]
        for v in range(g.n):
            if pv[v] >= 0:
                self.children[pv[v]].add(v)
        self.color = [RED] * g.n
        self.pos = 0.0

    def _anchor(self, dart):
        """Re-root the sweep at the tail of ``dart`` (pos = 0).

        Assumes the labels in ``base`` are distances from that vertex
        and the tree is valid there; installs the two source stubs and
        recolours.
        """
        g = self.g
        self.dart = dart
        self.e0 = dart // 2
        edge = g.edges[self.e0]
        if edge.tail == edge.head:
            raise DomainError("cannot slide along a self-loop")
        self.u0 = self._tail(dart)
        self.v0 = edge.other(self.u0)
        self.L0 = float(edge.length)
        self.pos = 0.0
        self.parent[self.u0] = -1
        self.parent_edge[self.u0] = _SU
        self.su_in_T = True
        if self.parent_edge[self.v0] == self.e0:
            self.parent_edge[self.v0] = _SV
            self.parent[self.v0] = -1
            self.children[self.u0].discard(self.v0)
            self.sv_in_T = True
            blue = set(self._subtree(self.v0))
        else:
            self.sv_in_T = False
            blue = set()
        for x in range(g.n):
            self.color[x] = BLUE if x in blue else RED
        self.pivots_dart = 0
        self.heap = []
        if not self.sv_in_T:
            heapq.heappush(self.heap,
                           ((self.L0 - self.base[self.v0]) / 2.0, _SV))
        pe = self.parent_edge
        for e in range(g.m):
            if e == self.e0:
                continue
            ed = g.edges[e]
            x, y = ed.tail, ed.head
            if x == y or pe[x] == e or pe[y] == e:
                continue
            if self.color[x] != self.color[y]:
                b, r = (x, y) if self.color[x] == BLUE else (y, x)
                fp = (self.label(b) + float(ed.length) - self.label(r)) / 2.0
                heapq.heappush(self.heap, (fp, e))

    def _valid(self, ein, fp):
        tol = 1e-9 * (1.0 + abs(fp))
        if ein == _SV:
            if self.sv_in_T:
                return False
            want = (self.L0 - self.base[self.v0]) / 2.0
            return abs(want - fp) <= tol
        ed = self.g.edges[ein]
        x, y = ed.tail, ed.head
        if self.parent_edge[x] == ein or self.parent_edge[y] == ein:
            return False
        if self.color[x] == self.color[y]:
            return False
        b, r = (x, y) if self.color[x] == BLUE else (y, x)
        want = self.pos + (self.label(b) + float(ed.length)
                           - self.label(r)) / 2.0
        return abs(want - fp) <= tol

    def _pivot(self, ein):
        g = self.g
        if ein == _SV:
            x, y = None, self.v0
        else:
            ed = g.edges[ein]
            a, b = ed.tail, ed.head
            x, y = (a, b) if self.color[a] == BLUE else (b, a)
        flips = self._subtree(y)
        for fv in flips:
            self.color[fv] = BLUE
            self.base[fv] += 2.0 * self.pos
        eout = self.parent_edge[y]
        if eout == _SU:
            self.su_in_T = False
        elif eout >= 0:
            self.children[self.parent[y]].discard(y)
        if ein == _SV:
            self.parent[y] = -1
            self.parent_edge[y] = _SV
            self.sv_in_T = True
        else:
            self.parent[y] = x
            self.parent_edge[y] = ein
            self.children[x].add(y)
        pe = self.parent_edge
        for fv in flips:
            dfv = self.label(fv)
            for e2 in g.adj[fv]:
                if e2 == self.e0:
                    continue
                ed2 = g.edges[e2]
                z = ed2.other(fv)
                if z == fv or pe[fv] == e2 or pe[z] == e2:
                    continue
                if self.color[z] == RED:
                    fp = self.pos + (dfv + float(ed2.length)
                                     - self.label(z)) / 2.0
                    heapq.heappush(self.heap, (fp, e2))
        self.pivots_dart += 1
        self.total_pivots += 1
        if self.pivots_dart > g.n + 2:
            raise RuntimeError("pivot loop: more events than vertices on "
                               f"one edge of face {self.f}")
        return _PivotRec(ein, eout, x, y, flips)

    def _cross(self, new_dart):
        g = self.g
        labels = [self.label(x) for x in range(g.n)]
        su_was = self.su_in_T
        old_dart, old_edge = self.dart, self.e0
        if su_was:
            self.parent[self.u0] = self.v0
            self.parent_edge[self.u0] = old_edge
            self.children[self.v0].add(self.u0)
        self.parent[self.v0] = -1
        self.parent_edge[self.v0] = -1
        self.base = labels
        self.pos = 0.0
        self._anchor(new_dart)
        return _CrossRec(old_dart, new_dart, old_edge, su_was, self.sv_in_T)

    def _sweep_dart(self, consumers):
        while True:
            ev = None
            while self.heap:
                fp, ein = self.heap[0]
                if fp > self.L0:
                    break
                heapq.heappop(self.heap)
                if self._valid(ein, fp):
                    ev = (max(fp, self.pos), ein)
                    break
            if ev is None:
                break
            fp, ein = ev
            lam = fp - self.pos
            for c in consumers:
                c.on_slide(self, lam)
            self.pos = fp
            rec = self._pivot(ein)
            for c in consumers:
                c.on_pivot(self, rec)
        lam = self.L0 - self.pos
        for c in consumers:
            c.on_slide(self, lam)
        self.pos = self.L0
        if not self.sv_in_T:
            # numerically the head-side event sits exactly on the edge
            # end; force it so the crossing sees a consistent tree
            rec = self._pivot(_SV)
            for c in consumers:
                c.on_pivot(self, rec)

    def run(self, consumers):
        self._init_tree()
        self._anchor(self.walk[0])
        for c in consumers:
            c.on_start(self)
        for wi in range(len(self.walk)):
            self._sweep_dart(consumers)
            rec = self._cross(self.walk[(wi + 1) % len(self.walk)])
            rec.final = wi + 1 == len(self.walk)
            for c in consumers:
                c.on_cross(self, rec)
        log.debug("face %d: %d darts, %d pivots",
                  self.f, len(self.walk), self.total_pivots)
        if self.total_pivots > 8 * len(self.walk) + 4 * self.g.m:
            log.warning("face %d: %d pivots for %d edges",
                        self.f, self.total_pivots, self.g.m)


def pivot_sequence(pg, f, s0):
    """All tree changes while the source runs once around face ``f``."""

    class Recorder(_Consumer):
        def __init__(self):
            self.events = []

        def on_pivot(self, sw, rec):
            ein = sw.e0 if rec.ein < 0 else rec.ein
            eout = sw.e0 if rec.eout < 0 else rec.eout
            self.events.append(PivotEvent(sw.s_point(), ein, eout))

    rec = Recorder()
    _FaceSweep(pg, f, s0).run([rec])
    return rec.events


# --------------------------------------------------------------------------
# fast mode: the dynamic-forest consumer
# --------------------------------------------------------------------------


class SlidingState(_Consumer):
    """Forest-backed sweep state: distance labels in a vertex forest,
    the non-tree edges as an embedded dual tree keyed by the balance
    point distance omega(xy) = (d(s,x) + len(xy) + d(s,y)) / 2.

    Eccentricity of the source is max(MaxTree over the labels, MaxTree
    over the omegas); the face maximum is the maximum over event
    points.  With ``h_only`` the aggregates exclude everything outside
    the H-part (their slots carry -inf), restricting the eccentricity
    to targets in H.
    """

    def __init__(self, h_only=False):
        self.h_only = h_only
        self.best = _NEG
        self.witness = None

    # -- dual-slot bookkeeping ---------------------------------------------

    def _danchor(self, face, key):
        keys = self.dkeys[face]
        if not keys:
            return NO_ANCHOR
        i = bisect_left(keys, key)
        prev = keys[i - 1] if i > 0 else keys[-1]
        return self.dpres[face][prev]

    def _dinsert(self, f1, k1, f2, k2, value):
        a1 = self._danchor(f1, k1)
        a2 = self._danchor(f2, k2)
        h = self.df.link(f1, f2, a1, a2, value)
        self.dpres[f1][k1] = h
        insort(self.dkeys[f1], k1)
        self.dpres[f2][k2] = h
        insort(self.dkeys[f2], k2)
        self.dslots[id(h)] = (f1, k1, f2, k2)
        return h

    def _dremove(self, h):
        f1, k1, f2, k2 = self.dslots.pop(id(h))
        self.df.cut(h)
        del self.dpres[f1][k1]
        self.dkeys[f1].remove(k1)
        del self.dpres[f2][k2]
        self.dkeys[f2].remove(k2)

    def _edge_slots(self, e):
        pg = self.pg
        return (pg.dart_face[2 * e], float(pg.dart_slot[2 * e]),
                pg.dart_face[2 * e + 1], float(pg.dart_slot[2 * e + 1]))

    def _stub_slots(self, sw, su_side):
        """Dual slots for the half of the source edge outside the tree.

        The head-side half sits between the artificial attachment
        points (its far side is the whole walk-ahead region, which is
        empty of other cotree edges there), the tail-side half sits
        just outside them, so that in both cases the remaining cotree
        hangs off the correct side of the a-to-b path.
        """
        pg = self.pg
        d, r = sw.dart, sw.dart ^ 1
        fa, sa = pg.dart_face[d], float(pg.dart_slot[d])
        fb, sb = pg.dart_face[r], float(pg.dart_slot[r])
        if su_side:
            return fa, sa + 2 * _A_OFF, fb, sb + 2 * _B_OFF
        return fa, sa, fb, sb

    def _omega_value(self, e, omega):
        if self.h_only and not self.g.edges[e].in_H:
            return _NEG
        return omega

    # -- primal helpers -----------------------------------------------------

    def _plink(self, u, v):
        h = self.pf.link(u, v)
        h2 = self.pf2.link(u, v) if self.pf2 is not None else None
        return (h, h2)

    def _pcut(self, h):
        self.pf.cut(h[0])
        if self.pf2 is not None:
            self.pf2.cut(h[1])

    def _padd(self, delta, v):
        self.pf.add_tree(delta, v)
        if self.pf2 is not None:
            self.pf2.add_tree(delta, v)

    # -- hooks ---------------------------------------------------------------

    def on_start(self, sw):
        self.pg, self.g = sw.pg, sw.g
        g = self.g
        self.pf = VertexForest()
        for x in range(g.n):
            self.pf.create(sw.base[x])
        self.s_node = self.pf.create(0.0)
        self.pf2 = None
        if self.h_only:
            h_inc = [False] * g.n
            for e in g.edges:
                if e.in_H:
                    h_inc[e.tail] = h_inc[e.head] = True
            if not all(h_inc):
                self.pf2 = VertexForest()
                for x in range(g.n):
                    self.pf2.create(sw.base[x] if h_inc[x] else _NEG)
                self.pf2.create(_NEG)
        self.hmap = {}
        for x in range(g.n):
            pe = sw.parent_edge[x]
            if pe >= 0:
                self.hmap[pe] = self._plink(x, sw.parent[x])
        self.h_su = self._plink(self.s_node, sw.u0)
        self.h_sv = self._plink(self.s_node, sw.v0) if sw.sv_in_T else None

        self.df = EmbeddedForest()
        for _ in range(self.pg.F + 2):
            self.df.create()
        self.A = self.pg.F
        self.B = self.pg.F + 1
        self.dpres = [dict() for _ in range(self.pg.F)]
        self.dkeys = [[] for _ in range(self.pg.F)]
        self.dslots = {}
        self.dual = {}
        for e in range(g.m):
            ed = g.edges[e]
            if e == sw.e0:
                if not sw.sv_in_T:
                    om = (sw.L0 + sw.label(sw.v0)) / 2.0
                    self.dual[e] = self._dinsert(
                        *self._stub_slots(sw, su_side=False),
                        self._omega_value(e, om))
                continue
            x, y = ed.tail, ed.head
            if sw.parent_edge[x] == e or sw.parent_edge[y] == e:
                continue
            om = (sw.label(x) + float(ed.length) + sw.label(y)) / 2.0
            self.dual[e] = self._dinsert(*self._edge_slots(e),
                                         self._omega_value(e, om))
        self.h_a = self.h_b = None
        self._attach_ab(sw)
        self._sample(sw)

    def _attach_ab(self, sw):
        pg = self.pg
        d, r = sw.dart, sw.dart ^ 1
        fa, ka = pg.dart_face[d], pg.dart_slot[d] + _A_OFF
        fb, kb = pg.dart_face[r], pg.dart_slot[r] + _B_OFF
        # A and B are their own dual vertices; only the face side needs
        # a rotation anchor
        aa = self._danchor(fa, ka)
        self.h_a = self.df.link(self.A, fa, NO_ANCHOR, aa, _NEG)
        self.dpres[fa][ka] = self.h_a
        insort(self.dkeys[fa], ka)
        ab = self._danchor(fb, kb)
        self.h_b = self.df.link(self.B, fb, NO_ANCHOR, ab, _NEG)
        self.dpres[fb][kb] = self.h_b
        insort(self.dkeys[fb], kb)
        self.ab_slots = (fa, ka, fb, kb)

    def _detach_ab(self):
        fa, ka, fb, kb = self.ab_slots
        self.df.cut(self.h_a)
        del self.dpres[fa][ka]
        self.dkeys[fa].remove(ka)
        self.df.cut(self.h_b)
        del self.dpres[fb][kb]
        self.dkeys[fb].remove(kb)

    def on_slide(self, sw, lam):
        if lam == 0.0:
            return
        if self.h_su is not None:
            self._pcut(self.h_su)
            self._padd(lam, sw.u0)
            self.h_su = self._plink(self.s_node, sw.u0)
        if self.h_sv is not None:
            self._pcut(self.h_sv)
            self._padd(-lam, sw.v0)
            self.h_sv = self._plink(self.s_node, sw.v0)
        if _BLUE_LEFT:
            self.df.add_left_path(-lam, self.A, self.B)
            self.df.add_left_path(lam, self.B, self.A)
        else:
            self.df.add_left_path(-lam, self.B, self.A)
            self.df.add_left_path(lam, self.A, self.B)

    def on_pivot(self, sw, rec):
        if rec.eout == _SU:
            self._pcut(self.h_su)
            self.h_su = None
        else:
            self._pcut(self.hmap.pop(rec.eout))
        if rec.ein == _SV:
            self.h_sv = self._plink(self.s_node, sw.v0)
        else:
            self.hmap[rec.ein] = self._plink(rec.x, rec.y)
        self._dremove(self.dual.pop(sw.e0 if rec.ein == _SV else rec.ein))
        if rec.eout == _SU:
            e_new = sw.e0
            om = (sw.pos + self.pf.get_node_value(sw.u0)) / 2.0
            slots = self._stub_slots(sw, su_side=True)
        else:
            e_new = rec.eout
            ed = self.g.edges[e_new]
            om = (self.pf.get_node_value(ed.tail) + float(ed.length)
                  + self.pf.get_node_value(ed.head)) / 2.0
            slots = self._edge_slots(e_new)
        self.dual[e_new] = self._dinsert(*slots,
                                         self._omega_value(e_new, om))
        self._sample(sw)

    def on_cross(self, sw, rec):
        self._pcut(self.h_sv)
        if self.h_su is not None:
            self._pcut(self.h_su)
            self.hmap[rec.old_edge] = self._plink(
                self.g.edges[rec.old_edge].tail,
                self.g.edges[rec.old_edge].head)
        if rec.e1_in_tree:
            h = self.hmap.pop(sw.e0, None)
            if h is not None:
                self._pcut(h)
            self.h_sv = self._plink(self.s_node, sw.v0)
        else:
            self.h_sv = None
        self.h_su = self._plink(self.s_node, sw.u0)
        self._detach_ab()
        self._attach_ab(sw)
        self._sample(sw)

    def _sample(self, sw):
        if self.h_only and not sw.s_in_h():
            return
        pf = self.pf2 if self.pf2 is not None else self.pf
        val = pf.max_tree(self.s_node)
        dv = self.df.max_tree(self.A)
        if dv is not None and dv > val:
            val = dv
        if val > self.best:
            self.best = val
            self.witness = sw.s_point()


# --------------------------------------------------------------------------
# checked mode: Dijkstra at every event
# --------------------------------------------------------------------------


class _CheckedBase(_Consumer):
    """Recomputes distances from scratch at every event and verifies
    the sweep's incremental labels and tree against them."""

    def _labels(self, sw):
        dist = _point_labels(sw.g, sw.e0, sw.s_point().offset)
        scale = 1.0 + max((d for d in dist if d < math.inf), default=0.0)
        tol = 1e-8 * scale
        for x in range(sw.g.n):
            if abs(dist[x] - sw.label(x)) > tol:
                raise RuntimeError(
                    f"label drift at vertex {x}: swept {sw.label(x)!r}, "
                    f"recomputed {dist[x]!r}")
        for x in range(sw.g.n):
            pe = sw.parent_edge[x]
            if pe >= 0:
                want = dist[sw.parent[x]] + float(sw.g.edges[pe].length)
            elif pe == _SU:
                want = sw.pos
            elif pe == _SV:
                want = sw.L0 - sw.pos
            else:
                continue
            if abs(dist[x] - want) > tol:
                raise RuntimeError(f"stale tree edge at vertex {x}")
        return dist


class _EccChecked(_CheckedBase):
    def __init__(self, h_only=False):
        self.h_only = h_only
        self.best = _NEG
        self.witness = None

    def _count(self, e):
        return not self.h_only or self.g.edges[e].in_H

    def on_start(self, sw):
        self.g = sw.g
        self._sample(sw)

    def on_pivot(self, sw, rec):
        self._sample(sw)

    def on_cross(self, sw, rec):
        self._sample(sw)

    def _sample(self, sw):
        dist = self._labels(sw)
        if self.h_only and not sw.s_in_h():
            return
        g = sw.g
        val = _NEG
        pe = sw.parent_edge
        for e in range(g.m):
            ed = g.edges[e]
            x, y = ed.tail, ed.head
            if e == sw.e0:
                if self._count(e):
                    # toward either end of the own edge the walk caps at
                    # the around-path midpoint unless that end is reached
                    # through the source edge itself
                    if sw.su_in_T:
                        val = max(val, sw.pos)
                    else:
                        val = max(val, (sw.pos + dist[sw.u0]) / 2.0)
                    if sw.sv_in_T:
                        val = max(val, sw.L0 - sw.pos)
                    else:
                        val = max(val, (sw.L0 - sw.pos + dist[sw.v0]) / 2.0)
                continue
            if not self._count(e):
                continue
            if pe[x] == e or pe[y] == e:
                val = max(val, dist[x], dist[y])
            else:
                val = max(val,
                          (dist[x] + float(ed.length) + dist[y]) / 2.0)
        if val > self.best:
            self.best = val
            self.witness = sw.s_point()


# --------------------------------------------------------------------------
# mean integrals
# --------------------------------------------------------------------------


def _nu(dx, dy, L):
    """Integral of min(dx + t, dy + L - t) for t in [0, L]."""
    t = (dy - dx + L) / 2.0
    t = 0.0 if t < 0.0 else (L if t > L else t)
    return dx * t + t * t / 2.0 + dy * (L - t) + (L - t) ** 2 / 2.0


class _MeanBase(_Consumer):
    """Accumulates the double integral of d(s, q) for q in the H-part
    as the source slides.

    Within one slide interval every H edge keeps its colour class, so
    the total nu = sum over H edges of the per-edge distance integral
    is a quadratic polynomial of the slid length: red edges grow at
    their length, blue edges shrink at it, and an edge with one end on
    each side contributes the difference of its end labels plus a
    quadratic term from the moving balance point.  The source edge is
    excluded and integrated in closed form per dart.
    """

    def __init__(self, h_flags):
        self.h_flags = h_flags
        self.total = 0.0

    def _aggregates(self, sw, labels):
        g = sw.g
        N = lr_minus_lb = qg = 0.0
        kg = 0
        for e in range(g.m):
            if not self.h_flags[e] or e == sw.e0:
                continue
            ed = g.edges[e]
            L = float(ed.length)
            dx, dy = labels[ed.tail], labels[ed.head]
            N += _nu(dx, dy, L)
            cx, cy = sw.color[ed.tail], sw.color[ed.head]
            if cx == cy:
                lr_minus_lb += L if cx == RED else -L
            else:
                kg += 1
                qg += (dx - dy) if cx == RED else (dy - dx)
        return N, lr_minus_lb, qg, kg

    def _set(self, aggs):
        self.N, self.lr_minus_lb, self.qg, self.kg = aggs

    def _advance(self, sw, lam):
        if lam == 0.0:
            return
        if self.h_flags[sw.e0]:
            self.total += (lam * self.N
                           + lam * lam / 2.0 * (self.lr_minus_lb - self.qg)
                           - lam ** 3 / 3.0 * self.kg)
        self.N += (lam * self.lr_minus_lb - lam * self.qg
                   - lam * lam * self.kg)
        self.qg += 2.0 * lam * self.kg

    def _dart_self_term(self, sw):
        if self.h_flags[sw.e0]:
            self.total += float(_self_term(sw.g, sw.e0))


class _MeanFast(_MeanBase):
    def on_start(self, sw):
        labels = [sw.label(x) for x in range(sw.g.n)]
        self._set(self._aggregates(sw, labels))
        self._dart_self_term(sw)

    def on_slide(self, sw, lam):
        self._advance(sw, lam)

    def on_pivot(self, sw, rec):
        g = sw.g
        flipped = set(rec.flips)
        seen = set()
        for fv in rec.flips:
            for e in g.adj[fv]:
                if e == sw.e0 or e in seen or not self.h_flags[e]:
                    continue
                seen.add(e)
                ed = g.edges[e]
                x, y = ed.tail, ed.head
                L = float(ed.length)
                dx, dy = sw.label(x), sw.label(y)
                oldx = RED if x in flipped else sw.color[x]
                oldy = RED if y in flipped else sw.color[y]
                self._declass(oldx, oldy, dx, dy, L, -1)
                self._declass(sw.color[x], sw.color[y], dx, dy, L, +1)

    def _declass(self, cx, cy, dx, dy, L, sign):
        if cx == cy:
            self.lr_minus_lb += sign * (L if cx == RED else -L)
        else:
            self.kg += sign
            self.qg += sign * ((dx - dy) if cx == RED else (dy - dx))

    def on_cross(self, sw, rec):
        if rec.final:
            return
        labels = [sw.label(x) for x in range(sw.g.n)]
        self._set(self._aggregates(sw, labels))
        self._dart_self_term(sw)


class _MeanChecked(_MeanBase, _CheckedBase):
    def on_start(self, sw):
        self._set(self._aggregates(sw, self._labels(sw)))
        self._dart_self_term(sw)

    def on_slide(self, sw, lam):
        self._advance(sw, lam)

    def on_pivot(self, sw, rec):
        self._set(self._aggregates(sw, self._labels(sw)))

    def on_cross(self, sw, rec):
        if rec.final:
            return
        self._set(self._aggregates(sw, self._labels(sw)))
        self._dart_self_term(sw)


# --------------------------------------------------------------------------
# public face / graph operations
# --------------------------------------------------------------------------


def face_eccentricity(pg, f, s0=None, mode="fast", h_only=False):
    """Maximum eccentricity over all boundary points of face ``f``.

    Returns (value, witness source point).  The maximum is attained at
    an event point because the eccentricity is piecewise linear with
    slopes in {-1, 0, +1} between events.
    """
    cons = (SlidingState(h_only) if mode == "fast"
            else _EccChecked(h_only))
    _FaceSweep(pg, f, s0).run([cons])
    return cons.best, cons.witness


def face_mean_integral(pg, f, h_edges=None, mode="fast", s0=None):
    """Integral of d(s, q) for s on face ``f``'s H-boundary, q in H."""
    g = pg.g
    if h_edges is None:
        h_flags = [e.in_H for e in g.edges]
    else:
        h_flags = [False] * g.m
        for e in h_edges:
            h_flags[e] = True
    cons = _MeanFast(h_flags) if mode == "fast" else _MeanChecked(h_flags)
    _FaceSweep(pg, f, s0).run([cons])
    return cons.total


def planar_diameter(pg, mode="fast"):
    """Largest H-to-H point distance, by sweeping every face."""
    best = _NEG
    for f in range(pg.F):
        if not pg.face_h_darts(f):
            continue
        val, _ = face_eccentricity(pg, f, mode=mode, h_only=True)
        if val > best:
            best = val
    if best == _NEG:
        raise ValueError("H is empty")
    return best


def planar_mean(pg, mode="fast"):
    """Mean H-to-H distance from the per-face integrals.

    Every edge lies on two facial walks (one face twice for a bridge),
    so the summed per-face integrals cover each source edge exactly
    twice and are halved before dividing by the squared H-length.
    """
    total = 0.0
    for f in range(pg.F):
        total += face_mean_integral(pg, f, mode=mode)
    hl = float(pg.g.h_length())
    if hl == 0.0:
        raise ValueError("H is empty")
    return total / 2.0 / (hl * hl)
