"""Continuous graph model: every interior point of every edge is a point.

A graph is loaded once and never mutated.  Points on edges are addressed
by (edge id, anchor endpoint, offset along the edge from that anchor);
the two parameterizations of the same point compare equal after
normalization.  A subset of edges may be marked ``H``; diameter and mean
distance queries range over points of those edges while paths may use
the whole graph.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class GraphFormatError(ValueError):
    """Raised on malformed graph text; carries the 1-based line number."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class DomainError(ValueError):
    """Input is syntactically fine but outside the supported domain."""


@dataclass(frozen=True)
class Edge:
    tail: int
    head: int
    length: object  # float, or Fraction in rational mode
    in_H: bool = True

    def other(self, v):
        if v == self.tail:
            return self.head
        if v == self.head:
            return self.tail
        raise ValueError(f"vertex {v} not an endpoint of edge {self.tail}-{self.head}")


class ContinuousGraph:
    """Undirected multigraph with nonnegative real edge lengths.

    Parallel edges and self-loops are allowed.  Edge orientation (tail,
    head) is fixed at load time and only matters for addressing points.
    """

    def __init__(self, n, edges, rotations=None):
        self.n = n
        self.edges = list(edges)
        self.m = len(self.edges)
        self.adj = [[] for _ in range(n)]  # vertex -> list of edge ids
        for i, e in enumerate(self.edges):
            if not (0 <= e.tail < n and 0 <= e.head < n):
                raise DomainError(f"edge {i} endpoint out of range")
            if e.length < 0:
                raise DomainError(f"edge {i} has negative length {e.length}")
            self.adj[e.tail].append(i)
            if e.head != e.tail:
                self.adj[e.head].append(i)
        if n > 0 and not any(e.length > 0 for e in self.edges):
            raise DomainError("all edge lengths are zero")
        self._check_connected()
        # optional clockwise incidence order per vertex (planar engine)
        self.rotations = rotations
        self._apsp = None

    # -- basic facts -------------------------------------------------

    @property
    def rational(self):
        return any(isinstance(e.length, Fraction) for e in self.edges)

    def h_edges(self):
        return [i for i, e in enumerate(self.edges) if e.in_H]

    def h_length(self):
        return sum(self.edges[i].length for i in self.h_edges())

    def _check_connected(self):
        if self.n <= 1:
            return
        seen = [False] * self.n
        stack = [0]
        seen[0] = True
        while stack:
            v = stack.pop()
            for ei in self.adj[v]:
                w = self.edges[ei].other(v)
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        for v, ok in enumerate(seen):
            if not ok:
                raise DomainError(f"graph is disconnected: vertex 0 and vertex {v} "
                                  "lie in different components")

    # -- shortest paths ----------------------------------------------

    def sssp(self, s):
        """Dijkstra from s.  Returns (dist array, parent array).

        Parents encode a shortest-path tree; parent[s] == -1.  Works for
        float and Fraction lengths alike.
        """
        inf = math.inf
        dist = [inf] * self.n
        parent = [-1] * self.n
        dist[s] = 0 if self.rational else 0.0
        pq = [(dist[s], s)]
        done = [False] * self.n
        while pq:
            d, v = heapq.heappop(pq)
            if done[v]:
                continue
            done[v] = True
            for ei in self.adj[v]:
                e = self.edges[ei]
                w = e.other(v)
                nd = d + e.length
                if nd < dist[w]:
                    dist[w] = nd
                    parent[w] = v
                    heapq.heappush(pq, (nd, w))
        return dist, parent

    def all_pairs(self):
        """All-pairs distance matrix, cached.

        Floyd-Warshall (vectorized for floats) up to 512 vertices,
        repeated Dijkstra beyond that.
        """
        if self._apsp is not None:
            return self._apsp
        if self.rational or self.n > 512:
            self._apsp = [self.sssp(s)[0] for s in range(self.n)]
        else:
            import numpy as np
            n = self.n
            d = np.full((n, n), np.inf)
            np.fill_diagonal(d, 0.0)
            for e in self.edges:
                if e.tail != e.head:
                    le = float(e.length)
                    if le < d[e.tail, e.head]:
                        d[e.tail, e.head] = le
                        d[e.head, e.tail] = le
            for k in range(n):
                np.minimum(d, np.add.outer(d[:, k], d[k, :]), out=d)
            self._apsp = d
        return self._apsp

    def dist(self, u, v):
        return self.all_pairs()[u][v]

    # -- points ------------------------------------------------------

    def point(self, edge, anchor, offset):
        """Normalized point on an edge: offset measured from the tail."""
        e = self.edges[edge]
        if anchor == e.tail:
            lam = offset
        elif anchor == e.head:
            lam = e.length - offset
        else:
            raise ValueError(f"vertex {anchor} is not an endpoint of edge {edge}")
        if not (0 <= lam <= e.length or math.isclose(lam, 0, abs_tol=1e-12)
                or math.isclose(float(lam), float(e.length), abs_tol=1e-12)):
            raise ValueError(f"offset {offset} outside edge {edge} of length {e.length}")
        lam = min(max(lam, 0 * lam), e.length)
        return EdgePoint(edge, lam)

    def vertex_point(self, v):
        """Some EdgePoint coinciding with vertex v."""
        for ei in self.adj[v]:
            e = self.edges[ei]
            if v == e.tail:
                return EdgePoint(ei, 0 * e.length)
            return EdgePoint(ei, e.length)
        raise ValueError(f"vertex {v} is isolated")

    def point_distance(self, p, q):
        """Distance between two points of the continuous graph."""
        ep, eq = self.edges[p.edge], self.edges[q.edge]
        lp, lq = p.offset, q.offset
        if p.edge == q.edge:
            direct = abs(lp - lq)
            around = self.dist(ep.tail, ep.head)
            via = min(lp + around + (ep.length - lq),
                      (ep.length - lp) + around + lq)
            return min(direct, via)
        best = None
        for a, da in ((ep.tail, lp), (ep.head, ep.length - lp)):
            for b, db in ((eq.tail, lq), (eq.head, eq.length - lq)):
                cand = da + self.dist(a, b) + db
                if best is None or cand < best:
                    best = cand
        return best


@dataclass(frozen=True, order=True)
class EdgePoint:
    """A point of the continuous graph in normalized form.

    ``offset`` is measured from the tail of the edge, so equal points
    always have equal fields and tuple ordering gives the deterministic
    tie-break used by witness reconstruction.
    """
    edge: int
    offset: object

    def key(self):
        return (self.edge, self.offset)


# -- text format ------------------------------------------------------
#
# First line: "n m".  Then m lines "tail head length [H]".  Lines
# starting with '#' (or inline '#' suffixes) are comments.  Optional
# trailing lines "rot v e1 e2 ... ek" give the clockwise incidence
# order at v for plane graphs.


def _parse_length(tok, rational):
    if rational:
        return Fraction(tok)
    return float(tok)


def load_graph(text, rational=False):
    """Parse the text format into a ContinuousGraph.

    ``rational=True`` keeps lengths as exact Fractions (input tokens may
    be decimals or 'p/q' forms).
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    lines = text.splitlines()
    header = None
    edges = []
    rot_lines = []
    n = m = None
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if header is None:
            if len(toks) != 2:
                raise GraphFormatError("expected header 'n m'", lineno)
            try:
                n, m = int(toks[0]), int(toks[1])
            except ValueError:
                raise GraphFormatError("non-integer header", lineno)
            header = (n, m)
            continue
        if toks[0] == "rot":
            try:
                rot_lines.append((lineno, int(toks[1]), [int(t) for t in toks[2:]]))
            except (ValueError, IndexError):
                raise GraphFormatError("malformed rotation line", lineno)
            continue
        if len(edges) >= m:
            raise GraphFormatError("more edge lines than declared", lineno)
        if len(toks) not in (3, 4):
            raise GraphFormatError("expected 'tail head length [H]'", lineno)
        try:
            u, v = int(toks[0]), int(toks[1])
            length = _parse_length(toks[2], rational)
        except (ValueError, ZeroDivisionError):
            raise GraphFormatError("malformed edge line", lineno)
        in_h = len(toks) == 4 and toks[3] == "H"
        if len(toks) == 4 and not in_h:
            raise GraphFormatError(f"unknown edge flag {toks[3]!r}", lineno)
        if length < 0:
            raise DomainError(f"line {lineno}: negative length {length}")
        edges.append(Edge(u, v, length, in_h))
    if header is None:
        raise GraphFormatError("empty input", 1)
    if len(edges) != m:
        raise GraphFormatError(f"declared {m} edges, found {len(edges)}")
    rotations = None
    if rot_lines:
        rotations = {}
        for lineno, v, order in rot_lines:
            if not (0 <= v < n):
                raise GraphFormatError(f"rotation vertex {v} out of range", lineno)
            rotations[v] = order
    return ContinuousGraph(n, edges, rotations=rotations)


def dump_graph(g):
    """Inverse of load_graph (modulo comments)."""
    out = [f"{g.n} {g.m}"]
    for e in g.edges:
        flag = " H" if e.in_H else ""
        out.append(f"{e.tail} {e.head} {e.length}{flag}")
    if g.rotations:
        for v in sorted(g.rotations):
            out.append("rot " + str(v) + " " + " ".join(map(str, g.rotations[v])))
    return "\n".join(out) + "\n"


def subdivide(g, cuts):
    """Return a new graph with each listed edge split at given offsets.

    ``cuts`` maps edge id -> sorted iterable of offsets in (0, length).
    New vertices are appended after the original ones; split parts
    inherit the H flag.  Also returns, per cut point, the new vertex id.
    """
    edges = []
    n = g.n
    point_vertex = {}
    for i, e in enumerate(g.edges):
        offs = sorted(set(cuts.get(i, ()))) if cuts else []
        offs = [o for o in offs if 0 < o < e.length]
        prev_v, prev_off = e.tail, 0 * e.length
        for off in offs:
            edges.append(Edge(prev_v, n, off - prev_off, e.in_H))
            point_vertex[(i, off)] = n
            prev_v, prev_off = n, off
            n += 1
        edges.append(Edge(prev_v, e.head, e.length - prev_off, e.in_H))
    return ContinuousGraph(n, edges), point_vertex
