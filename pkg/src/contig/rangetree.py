"""Layered orthogonal range tree with canonical-set aggregates.

A query rectangle (each side independently open, closed, or unbounded)
is answered as a list of handles to pairwise-disjoint canonical point
sets whose union is exactly the points inside the rectangle; each
handle carries a precomputed fold of its points under a caller-supplied
monoid.  Small nodes fall back to flat lists scanned per query and
reported as singleton sets, which keeps the layered structure's memory
in check without changing the contract.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import Any, Callable, Optional


@dataclass(frozen=True)
class Interval:
    """One axis of a query rectangle.  None means unbounded."""
    lo: Optional[float] = None
    hi: Optional[float] = None
    lo_open: bool = False
    hi_open: bool = False

    def contains(self, x):
        if self.lo is not None:
            if x < self.lo or (self.lo_open and x == self.lo):
                return False
        if self.hi is not None:
            if x > self.hi or (self.hi_open and x == self.hi):
                return False
        return True


FULL = Interval()


@dataclass(frozen=True)
class Monoid:
    identity: Any
    combine: Callable[[Any, Any], Any]

    def fold(self, values):
        acc = self.identity
        for v in values:
            acc = self.combine(acc, v)
        return acc


class Handle:
    """One canonical set: payload indices plus their aggregate."""

    __slots__ = ("_order", "_lo", "_hi", "aggregate")

    def __init__(self, order, lo, hi, aggregate):
        self._order = order
        self._lo = lo
        self._hi = hi
        self.aggregate = aggregate

    @property
    def count(self):
        return self._hi - self._lo

    def payloads(self):
        return self._order[self._lo:self._hi]


class _Node:
    __slots__ = ("lo", "hi", "left", "right", "next", "aggregate")

    def __init__(self, lo, hi):
        self.lo = lo
        self.hi = hi
        self.left = None
        self.right = None
        self.next = None       # sub-level over the next dimension
        self.aggregate = None  # only at the last dimension


class _Level:
    """One dimension's balanced tree over a subset of the points."""

    __slots__ = ("tree_", "dim", "order", "coords", "root")

    def __init__(self, tree, dim, payloads):
        self.tree_ = tree
        self.dim = dim
        pts = tree.points
        self.order = sorted(payloads, key=lambda i: (pts[i][dim], i))
        self.coords = [pts[i][dim] for i in self.order]
        self.root = self._build(0, len(self.order))

    def _build(self, lo, hi):
        tree = self.tree_
        node = _Node(lo, hi)
        last = self.dim == tree.d - 1
        if last:
            node.aggregate = tree.monoid.fold(
                tree.values[i] for i in self.order[lo:hi])
        if hi - lo <= tree.leaf_cutoff:
            return node
        mid = (lo + hi) // 2
        node.left = self._build(lo, mid)
        node.right = self._build(mid, hi)
        if not last and not tree.lazy:
            node.next = _Level(tree, self.dim + 1, self.order[lo:hi])
        return node

    def _index_range(self, iv):
        lo = 0 if iv.lo is None else (
            bisect_right(self.coords, iv.lo) if iv.lo_open
            else bisect_left(self.coords, iv.lo))
        hi = len(self.coords) if iv.hi is None else (
            bisect_left(self.coords, iv.hi) if iv.hi_open
            else bisect_right(self.coords, iv.hi))
        return lo, max(hi, lo)

    def query(self, rect, out):
        ql, qh = self._index_range(rect[self.dim])
        if ql >= qh:
            return
        self._visit(self.root, ql, qh, rect, out)

    def _visit(self, node, ql, qh, rect, out):
        if node.hi <= ql or qh <= node.lo:
            return
        covered = ql <= node.lo and node.hi <= qh
        if covered and self.dim == self.tree_.d - 1:
            out.append(Handle(self.order, node.lo, node.hi, node.aggregate))
            return
        if covered and node.left is not None:
            if node.next is None:
                node.next = _Level(self.tree_, self.dim + 1,
                                   self.order[node.lo:node.hi])
            node.next.query(rect, out)
            return
        if node.left is None:
            # flat leaf: the index range encodes this axis, later axes
            # are checked per point; survivors become singleton sets
            self._scan(max(ql, node.lo), min(qh, node.hi), rect, out)
            return
        self._visit(node.left, ql, qh, rect, out)
        self._visit(node.right, ql, qh, rect, out)

    def _scan(self, lo, hi, rect, out):
        tree = self.tree_
        pts = tree.points
        for pos in range(lo, hi):
            i = self.order[pos]
            if all(rect[j].contains(pts[i][j])
                   for j in range(self.dim + 1, tree.d)):
                out.append(Handle(self.order, pos, pos + 1, tree.values[i]))


class RangeTree:
    """Static layered range tree.

    points: list of equal-length coordinate tuples; values: one monoid
    value per point (payload ids are list positions).  leaf_cutoff
    controls the flat-list fallback; 1 disables it below pairs.
    """

    def __init__(self, points, values, monoid, leaf_cutoff=8, lazy=False):
        if points and any(len(p) != len(points[0]) for p in points):
            raise ValueError("points must share one dimension")
        self.points = [tuple(p) for p in points]
        self.values = list(values)
        if len(self.values) != len(self.points):
            raise ValueError("one value per point required")
        self.monoid = monoid
        self.lazy = lazy
        self.leaf_cutoff = max(1, leaf_cutoff)
        self.d = len(self.points[0]) if self.points else 1
        self.root = _Level(self, 0, range(len(self.points))) if self.points \
            else None

    def query(self, rect):
        """Canonical handles for the points inside the rectangle."""
        rect = tuple(rect)
        if self.root is None:
            return []
        if len(rect) != self.d:
            raise ValueError(f"rectangle has {len(rect)} axes, tree has {self.d}")
        out = []
        self.root.query(rect, out)
        return out

    def query_fold(self, rect):
        """Monoid fold of everything inside the rectangle."""
        acc = self.monoid.identity
        for h in self.query(rect):
            acc = self.monoid.combine(acc, h.aggregate)
        return acc


def max_with_witness_monoid():
    """(value, witness) pairs under max; identity compares below all."""
    ident = (float("-inf"), None)

    def combine(a, b):
        if a[0] > b[0]:
            return a
        if b[0] > a[0]:
            return b
        if a[1] is None:
            return b
        if b[1] is None:
            return a
        return a if a[1] <= b[1] else b

    return Monoid(ident, combine)


def sum_monoid(zero=0.0):
    import operator
    return Monoid(zero, operator.add)
