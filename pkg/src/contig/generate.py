"""Seeded instance generators.

Each generator takes a ``random.Random`` and returns a ContinuousGraph;
the k-tree generator also returns the width-k decomposition it built,
and the planar generators attach rotation systems.
"""

from __future__ import annotations

import math
import random

from .graph import ContinuousGraph, Edge
from .treewidth import TreeDecomposition


def _length(rng, unit):
    return 1.0 if unit else rng.uniform(0.05, 10.0)


def ktree(rng, n, k, unit=False, drop=0.0, h_prob=1.0):
    """Random partial k-tree with its witness decomposition.

    Grows from a (k+1)-clique by gluing each new vertex onto a random
    k-clique taken from an existing bag.  ``drop`` removes that
    fraction of the non-spanning edges afterwards (the result is still
    connected and still respects the decomposition).
    """
    if n < k + 1:
        raise ValueError("need n >= k + 1")
    base = list(range(k + 1))
    pairs = []        # (u, v, essential)
    for i in base:
        for j in base:
            if i < j:
                pairs.append((i, j, j == i + 1))
    bags = [frozenset(base)]
    tree = []
    for v in range(k + 1, n):
        parent = rng.randrange(len(bags))
        clique = rng.sample(sorted(bags[parent]), k)
        for idx, u in enumerate(sorted(clique)):
            pairs.append((u, v, idx == 0))
        bags.append(frozenset(clique) | {v})
        tree.append((parent, len(bags) - 1))
    edges = []
    for u, v, essential in pairs:
        if not essential and drop > 0 and rng.random() < drop:
            continue
        in_h = h_prob >= 1.0 or rng.random() < h_prob
        edges.append(Edge(u, v, _length(rng, unit), in_h))
    g = ContinuousGraph(n, edges)
    if not g.h_edges():
        # guarantee a nonempty H-part
        e = g.edges[0]
        g.edges[0] = Edge(e.tail, e.head, e.length, True)
    return g, TreeDecomposition(bags, tree)


def cycle(n, unit=True, rng=None):
    edges = [Edge(i, (i + 1) % n, _length(rng or random.Random(0), unit), True)
             for i in range(n)]
    rotations = {i: sorted([i, (i - 1) % n]) for i in range(n)}
    return ContinuousGraph(n, edges, rotations=rotations)


def path(n, unit=True, rng=None):
    edges = [Edge(i, i + 1, _length(rng or random.Random(0), unit), True)
             for i in range(n - 1)]
    return ContinuousGraph(n, edges)


def grid(rows, cols, unit=True, rng=None):
    """Planar grid with the standard embedding's rotation system."""
    rng = rng or random.Random(0)

    def vid(r, c):
        return r * cols + c

    edges = []
    eid = {}
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                eid[(vid(r, c), vid(r, c + 1))] = len(edges)
                edges.append(Edge(vid(r, c), vid(r, c + 1),
                                  _length(rng, unit), True))
            if r + 1 < rows:
                eid[(vid(r, c), vid(r + 1, c))] = len(edges)
                edges.append(Edge(vid(r, c), vid(r + 1, c),
                                  _length(rng, unit), True))
    rotations = {}
    for r in range(rows):
        for c in range(cols):
            v = vid(r, c)
            order = []
            # clockwise starting east: E, S, W, N
            if c + 1 < cols:
                order.append(eid[(v, vid(r, c + 1))])
            if r + 1 < rows:
                order.append(eid[(v, vid(r + 1, c))])
            if c > 0:
                order.append(eid[(vid(r, c - 1), v)])
            if r > 0:
                order.append(eid[(vid(r - 1, c), v)])
            rotations[v] = order
    return ContinuousGraph(rows * cols, edges, rotations=rotations)


def triangulation(rng, n, unit=False):
    """Stacked triangulation: repeatedly split a random triangular face.

    Vertices get straight-line coordinates (new vertex at the face
    centroid), which yields the rotation system by angular sorting.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    coords = [(0.0, 0.0), (1.0, 0.0), (0.5, math.sqrt(3) / 2)]
    pairs = [(0, 1), (1, 2), (0, 2)]
    faces = [(0, 1, 2)]
    for v in range(3, n):
        fi = rng.randrange(len(faces))
        a, b, c = faces.pop(fi)
        x = (coords[a][0] + coords[b][0] + coords[c][0]) / 3
        y = (coords[a][1] + coords[b][1] + coords[c][1]) / 3
        coords.append((x, y))
        pairs += [(a, v), (b, v), (c, v)]
        faces += [(a, b, v), (b, c, v), (a, c, v)]
    edges = []
    incident = {v: [] for v in range(n)}
    for u, v in pairs:
        if unit:
            length = 1.0
        else:
            dx = coords[u][0] - coords[v][0]
            dy = coords[u][1] - coords[v][1]
            length = math.hypot(dx, dy) * (1.0 if rng is None
                                           else rng.uniform(0.8, 1.2))
        ei = len(edges)
        edges.append(Edge(u, v, length, True))
        incident[u].append((ei, v))
        incident[v].append((ei, u))
    rotations = {}
    for v in range(n):
        # clockwise = decreasing angle
        order = sorted(incident[v],
                       key=lambda it: -math.atan2(
                           coords[it[1]][1] - coords[v][1],
                           coords[it[1]][0] - coords[v][0]))
        rotations[v] = [ei for ei, _ in order]
    return ContinuousGraph(n, edges, rotations=rotations)


def theta(n1, n2, n3, unit=True, rng=None):
    """Two hubs joined by three internally disjoint paths.

    n1..n3 are the numbers of interior vertices per path (any >= 0).
    """
    rng = rng or random.Random(0)
    n = 2 + n1 + n2 + n3
    hub_a, hub_b = 0, 1
    edges = []
    hub_edges_a, hub_edges_b = [], []
    inner = {v: [] for v in range(n)}
    nxt = 2
    for length in (n1, n2, n3):
        prev = hub_a
        chain = []
        for _ in range(length):
            chain.append(nxt)
            nxt += 1
        for v in chain + [hub_b]:
            ei = len(edges)
            edges.append(Edge(prev, v, _length(rng, unit), True))
            if prev == hub_a:
                hub_edges_a.append(ei)
            else:
                inner[prev].append(ei)
            if v == hub_b:
                hub_edges_b.append(ei)
            else:
                inner[v].append(ei)
            prev = v
    rotations = {hub_a: hub_edges_a, hub_b: list(reversed(hub_edges_b))}
    for v in range(2, n):
        rotations[v] = inner[v]
    return ContinuousGraph(n, edges, rotations=rotations)
