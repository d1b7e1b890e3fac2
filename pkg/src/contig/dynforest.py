"""Dynamic forests with whole-tree and side-of-path bulk updates.

Two structures, each paired with a naive reference twin:

* VertexForest: vertex values with link/cut, whole-tree addition, and
  tree max/sum queries.  Backed by Euler tours over treaps.
* EmbeddedForest: edge values in a forest with a prescribed clockwise
  edge order around every vertex, supporting add_left_path: add a delta
  to every edge hanging off the left side of a directed tree path
  (the hanging edge itself included).  Swapping the path's endpoints
  addresses the right side instead.

The embedded structure is a top tree over a ternarized forest: a vertex
of degree d becomes a chain of d gadget nodes, one per incident edge,
in clockwise order; chain edges carry a -infinity sentinel weight so
they never win a max and never count toward a sum.  Every cluster keeps
max/sum/count triples for its cluster path, for the subtrees to the
left and to the right of it, and for the parts hanging at its two
boundary vertices, each with a lazy additive slot pushed down on split.
"""

from __future__ import annotations

import heapq
import random


class ForestUsageError(ValueError):
    """An operation violated a forest precondition."""


#: Anchor placeholder for linking at a vertex that has no edges yet.
NO_ANCHOR = object()


# --------------------------------------------------------------------------
# vertex-weighted forest: Euler tours over treaps
# --------------------------------------------------------------------------

class _Seq:
    """Treap node over the Euler tour; carriers hold one vertex value."""

    __slots__ = ("prio", "left", "right", "parent", "size",
                 "carrier", "value", "mx", "sm", "cnt", "lazy")

    def __init__(self, prio, carrier, value):
        self.prio = prio
        self.left = None
        self.right = None
        self.parent = None
        self.carrier = carrier
        self.value = value
        self.lazy = 0
        _pull(self)


def _sz(n):
    return n.size if n is not None else 0


def _pull(n):
    size, cnt = 1, 1 if n.carrier else 0
    sm = n.value if n.carrier else 0
    mx = n.value if n.carrier else None
    for c in (n.left, n.right):
        if c is not None:
            size += c.size
            cnt += c.cnt
            sm = sm + c.sm
            if c.mx is not None and (mx is None or c.mx > mx):
                mx = c.mx
    n.size, n.cnt, n.sm, n.mx = size, cnt, sm, mx


def _apply(n, d):
    if n is None or d == 0:
        return
    if n.carrier:
        n.value = n.value + d
    if n.cnt:
        n.sm = n.sm + d * n.cnt
        n.mx = n.mx + d
    n.lazy = n.lazy + d


def _push(n):
    if n.lazy:
        _apply(n.left, n.lazy)
        _apply(n.right, n.lazy)
        n.lazy = 0


def _merge(a, b):
    if a is None:
        return b
    if b is None:
        return a
    if a.prio > b.prio:
        _push(a)
        r = _merge(a.right, b)
        a.right = r
        r.parent = a
        _pull(a)
        a.parent = None
        return a
    _push(b)
    r = _merge(a, b.left)
    b.left = r
    r.parent = b
    _pull(b)
    b.parent = None
    return b


def _split(t, k):
    """First k tour positions on the left, the rest on the right."""
    if t is None:
        return None, None
    _push(t)
    if _sz(t.left) >= k:
        a, b = _split(t.left, k)
        t.left = b
        if b is not None:
            b.parent = t
        _pull(t)
        t.parent = None
        if a is not None:
            a.parent = None
        return a, t
    a, b = _split(t.right, k - _sz(t.left) - 1)
    t.right = a
    if a is not None:
        a.parent = t
    _pull(t)
    t.parent = None
    if b is not None:
        b.parent = None
    return t, b


def _index(x):
    # lazy adds never change sizes, so no pushes are needed here
    pos = _sz(x.left)
    n = x
    while n.parent is not None:
        if n is n.parent.right:
            pos += _sz(n.parent.left) + 1
        n = n.parent
    return pos


def _treap_root(x):
    while x.parent is not None:
        x = x.parent
    return x


class _VEdge:
    __slots__ = ("u", "v", "a", "b", "alive")

    def __init__(self, u, v, a, b):
        self.u, self.v, self.a, self.b = u, v, a, b
        self.alive = True


class VertexForest:
    """Vertex-weighted dynamic forest (Euler-tour trees)."""

    def __init__(self, seed=0):
        self._rng = random.Random(seed ^ 0x9E3779B9)
        self._loops = []

    def _node(self, carrier, value):
        return _Seq(self._rng.random(), carrier, value)

    def create(self, value):
        n = self._node(True, value)
        self._loops.append(n)
        return len(self._loops) - 1

    def connected(self, u, v):
        return _treap_root(self._loops[u]) is _treap_root(self._loops[v])

    def _reroot(self, v):
        loop = self._loops[v]
        a, b = _split(_treap_root(loop), _index(loop))
        return _merge(b, a)

    def link(self, u, v):
        if u == v or self.connected(u, v):
            raise ForestUsageError("link endpoints already in one tree")
        tu = self._reroot(u)
        tv = self._reroot(v)
        a = self._node(False, None)
        b = self._node(False, None)
        _merge(_merge(_merge(tu, a), tv), b)
        return _VEdge(u, v, a, b)

    def cut(self, e):
        if not isinstance(e, _VEdge) or not e.alive:
            raise ForestUsageError("cut of absent edge")
        i, j = sorted((_index(e.a), _index(e.b)))
        left, rest = _split(_treap_root(e.a), i)
        _, rest = _split(rest, 1)
        mid, rest = _split(rest, j - i - 1)
        _, right = _split(rest, 1)
        _merge(left, right)
        e.alive = False
        return mid

    def get_node_value(self, v):
        n = self._loops[v]
        val = n.value
        while n.parent is not None:
            n = n.parent
            val = val + n.lazy
        return val

    def add_tree(self, delta, v):
        _apply(_treap_root(self._loops[v]), delta)

    def max_tree(self, v):
        return _treap_root(self._loops[v]).mx

    def sum_tree(self, v):
        return _treap_root(self._loops[v]).sm


class _NVEdge:
    __slots__ = ("u", "v", "alive")

    def __init__(self, u, v):
        self.u, self.v = u, v
        self.alive = True


class NaiveVertexForest:
    """Reference twin for VertexForest; every operation walks the tree."""

    def __init__(self):
        self._val = []
        self._adj = []

    def create(self, value):
        self._val.append(value)
        self._adj.append(set())
        return len(self._val) - 1

    def _component(self, v):
        seen = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for y in self._adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    def connected(self, u, v):
        return v in self._component(u)

    def link(self, u, v):
        if u == v or self.connected(u, v):
            raise ForestUsageError("link endpoints already in one tree")
        self._adj[u].add(v)
        self._adj[v].add(u)
        return _NVEdge(u, v)

    def cut(self, e):
        if not isinstance(e, _NVEdge) or not e.alive:
            raise ForestUsageError("cut of absent edge")
        self._adj[e.u].discard(e.v)
        self._adj[e.v].discard(e.u)
        e.alive = False

    def get_node_value(self, v):
        return self._val[v]

    def add_tree(self, delta, v):
        for x in self._component(v):
            self._val[x] = self._val[x] + delta

    def max_tree(self, v):
        return max(self._val[x] for x in self._component(v))

    def sum_tree(self, v):
        return sum(self._val[x] for x in self._component(v))


# --------------------------------------------------------------------------
# edge-weighted embedded forest: top tree over the ternarized forest
# --------------------------------------------------------------------------

# slot = (max, sum, count) over the real edges of one cluster part;
# an empty part is (None, 0, 0), and chain edges never enter a slot
_EMPTY = (None, 0, 0)


def _scomb(a, b):
    if not a[2]:
        return b
    if not b[2]:
        return a
    am, bm = a[0], b[0]
    return (am if am >= bm else bm, a[1] + b[1], a[2] + b[2])


def _sshift(s, d):
    if not s[2] or not d:
        return s
    return (s[0] + d, s[1] + d * s[2], s[2])


class _Gnode:
    """One ternarization node: a vertex's slot for one incident edge."""

    __slots__ = ("vertex", "real", "prevc", "nextc", "prevg", "nextg")

    def __init__(self, vertex):
        self.vertex = vertex
        self.real = None
        self.prevc = None
        self.nextc = None
        self.prevg = None
        self.nextg = None

    def degree(self):
        return 1 + (self.prevc is not None) + (self.nextc is not None)


class _Vert:
    __slots__ = ("head", "tail", "deg")

    def __init__(self):
        self.head = None
        self.tail = None
        self.deg = 0


class _Cluster:
    __slots__ = ("parent", "kids", "w", "ends", "size", "inc",
                 "path", "left", "right", "hang",
                 "xp", "xl", "xr", "xh", "allv", "xa",
                 "pi", "real", "desc", "is_real", "dead")

    def __init__(self):
        self.parent = None
        self.kids = None
        self.w = None
        self.ends = ()
        self.size = 1
        self.inc = {}
        self.path = _EMPTY
        self.left = _EMPTY
        self.right = _EMPTY
        self.hang = (_EMPTY, _EMPTY)
        self.xp = self.xl = self.xr = 0
        self.xh = [0, 0]
        self.allv = _EMPTY
        self.xa = 0
        self.pi = (None, None)
        self.real = (None, None)
        self.desc = None
        self.is_real = False
        self.dead = False


def _extra_of(c, label):
    if label == "P":
        return c.xp
    if label == "L":
        return c.xl
    if label == "R":
        return c.xr
    if label == "H0":
        return c.xh[0]
    if label == "H1":
        return c.xh[1]
    return c.xa


class EdgeHandle:
    __slots__ = ("u", "v", "leaf", "gu", "gv", "alive")

    def __init__(self, u, v, leaf, gu, gv):
        self.u, self.v = u, v
        self.leaf, self.gu, self.gv = leaf, gu, gv
        self.alive = True


class EmbeddedForest:
    """Edge-weighted forest with clockwise rotations and side-of-path
    bulk additions, maintained as a top tree."""

    def __init__(self):
        self._verts = []
        self._exposed = frozenset()
        self._pool = {}
        self.joins = 0
        self.splits = 0
        self.ops = 0

    # -- construction of vertices, gadget chains, and leaf clusters --------

    def create(self):
        self._verts.append(_Vert())
        return len(self._verts) - 1

    def _leaf(self, g1, g2, value, is_real):
        c = _Cluster()
        c.ends = (g1, g2)
        c.inc = {g1: 1, g2: 1}
        c.is_real = is_real
        if is_real:
            c.path = (value, value, 1)
            c.real = (c, c)
        c.pi = (c, c)
        self._pool[id(c)] = c
        return c

    def _open(self, c):
        """Split every ancestor of c, leaving c parentless in the pool."""
        chain = []
        x = c.parent
        while x is not None:
            chain.append(x)
            x = x.parent
        for x in reversed(chain):
            if not x.dead:
                self._split(x)
        if not c.dead:
            self._pool[id(c)] = c

    def _open_around(self, g):
        for leaf in (g.prevc, g.real, g.nextc):
            if leaf is not None:
                self._open(leaf)

    def _drop_leaf(self, c):
        self._open(c)
        self._pool.pop(id(c), None)
        c.dead = True

    def _root_of(self, g):
        c = g.real
        while c.parent is not None:
            c = c.parent
        return c

    # -- split: push the lazy slots into the children ----------------------

    def _split(self, c):
        self.splits += 1
        for d, desc in zip(c.kids, c.desc):
            self._push_child(c, d, desc)
            d.parent = None
            self._pool[id(d)] = d
        c.dead = True
        self._pool.pop(id(c), None)

    def _push_child(self, c, d, desc):
        composite = d.kids is not None
        if desc[0] == "fold":
            x = _extra_of(c, desc[1])
            if not x:
                return
            if len(d.ends) == 2:
                d.path = _sshift(d.path, x)
                d.left = _sshift(d.left, x)
                d.right = _sshift(d.right, x)
                d.hang = (_sshift(d.hang[0], x), _sshift(d.hang[1], x))
                if composite:
                    d.xp += x
                    d.xl += x
                    d.xr += x
                    d.xh[0] += x
                    d.xh[1] += x
            else:
                d.allv = _sshift(d.allv, x)
                if composite:
                    d.xa += x
            return
        _, flip, m0, m1 = desc
        src_l = c.xr if flip else c.xl
        src_r = c.xl if flip else c.xr
        d.path = _sshift(d.path, c.xp)
        d.left = _sshift(d.left, src_l)
        d.right = _sshift(d.right, src_r)
        h = list(d.hang)
        for i, m in ((0, m0), (1, m1)):
            x = _extra_of(c, m)
            h[i] = _sshift(h[i], x)
            if composite:
                d.xh[i] += x
        d.hang = tuple(h)
        if composite:
            d.xp += c.xp
            d.xl += src_l
            d.xr += src_r

    # -- join: the five parent shapes --------------------------------------

    def _total(self, d):
        if len(d.ends) == 2:
            t = _scomb(d.path, _scomb(d.left, d.right))
            return _scomb(t, _scomb(d.hang[0], d.hang[1]))
        return d.allv

    def _cand_ends(self, a, b, w):
        ends = []
        for g in dict.fromkeys(a.ends + b.ends):
            inside = a.inc.get(g, 0) + b.inc.get(g, 0)
            if g.degree() > inside or g in self._exposed:
                ends.append(g)
                if len(ends) > 2:
                    return None
        return tuple(ends)

    def _side_at(self, w, ein, eout):
        rot = tuple(e for e in (w.prevc, w.real, w.nextc) if e is not None)
        if len(rot) < 3:
            return "L"
        h = next(e for e in rot if e is not ein and e is not eout)
        i = rot.index(ein)
        return "L" if rot[(i + 1) % 3] is h else "R"

    def _join(self, a, b, w, ends):
        self.joins += 1
        c = _Cluster()
        c.kids = (a, b)
        a.parent = b.parent = c
        c.w = w
        c.size = a.size + b.size
        c.inc = {g: a.inc.get(g, 0) + b.inc.get(g, 0) for g in ends}
        c.ends = ends
        if len(ends) < 2:
            c.allv = _scomb(self._total(a), self._total(b))
            c.desc = (("fold", "A"), ("fold", "A"))
            self._pool[id(c)] = c
            return c
        p, q = ends
        if w in ends:
            # one child carries the whole cluster path, the other hangs at w
            if len(a.ends) == 2 and set(a.ends) == {p, q}:
                dpath, dfold = a, b
            else:
                dpath, dfold = b, a
            assert len(dpath.ends) == 2 and set(dpath.ends) == {p, q}
            c.ends = dpath.ends
            wi = c.ends.index(w)
            c.path = dpath.path
            c.left, c.right = dpath.left, dpath.right
            h = list(dpath.hang)
            h[wi] = _scomb(h[wi], self._total(dfold))
            c.hang = tuple(h)
            c.pi, c.real = dpath.pi, dpath.real
            dp = ("path", False, "H0", "H1")
            df = ("fold", "H0" if wi == 0 else "H1")
            c.desc = (dp, df) if dpath is a else (df, dp)
            self._pool[id(c)] = c
            return c
        # compress: w is internal, the path runs p .. w .. q
        d0, d1 = (a, b) if p in set(a.ends) else (b, a)
        flip0 = d0.ends[0] != p
        flip1 = d1.ends[1] != q
        l0, r0 = (d0.right, d0.left) if flip0 else (d0.left, d0.right)
        l1, r1 = (d1.right, d1.left) if flip1 else (d1.left, d1.right)
        keep0 = 1 if flip0 else 0
        keep1 = 0 if flip1 else 1
        hw = _scomb(d0.hang[1 - keep0], d1.hang[1 - keep1])
        pi0 = (d0.pi[1], d0.pi[0]) if flip0 else d0.pi
        pi1 = (d1.pi[1], d1.pi[0]) if flip1 else d1.pi
        re0 = (d0.real[1], d0.real[0]) if flip0 else d0.real
        re1 = (d1.real[1], d1.real[0]) if flip1 else d1.real
        c.path = _scomb(d0.path, d1.path)
        side = self._side_at(w, pi0[1], pi1[0])
        lft = _scomb(l0, l1)
        rgt = _scomb(r0, r1)
        if side == "L":
            lft = _scomb(lft, hw)
        else:
            rgt = _scomb(rgt, hw)
        c.left, c.right = lft, rgt
        c.hang = (d0.hang[keep0], d1.hang[keep1])
        c.pi = (pi0[0], pi1[1])
        c.real = (re0[0] if re0[0] is not None else re1[0],
                  re1[1] if re1[1] is not None else re0[1])
        maps0 = ["", ""]
        maps0[keep0] = "H0"
        maps0[1 - keep0] = side
        maps1 = ["", ""]
        maps1[keep1] = "H1"
        maps1[1 - keep1] = side
        dd0 = ("path", flip0, maps0[0], maps0[1])
        dd1 = ("path", flip1, maps1[0], maps1[1])
        c.desc = (dd0, dd1) if d0 is a else (dd1, dd0)
        self._pool[id(c)] = c
        return c

    # -- rebuild: greedy size-balanced contraction of the fragment pool ----

    def _rebuild(self):
        frags = [c for c in self._pool.values() if not c.dead]
        self._pool = {}
        at = {}
        for c in frags:
            for g in c.ends:
                at.setdefault(g, set()).add(c)
        heap = []
        seq = 0
        for c in frags:
            for g in c.ends:
                for o in at[g]:
                    if id(o) < id(c):
                        heapq.heappush(heap, (c.size + o.size, seq, c, o, g))
                        seq += 1
        while heap:
            _, _, a, b, g = heapq.heappop(heap)
            if a.parent is not None or b.parent is not None or a.dead or b.dead:
                continue
            ends = self._cand_ends(a, b, g)
            if ends is None:
                continue
            c = self._join(a, b, g, ends)
            for x in set(a.ends) | set(b.ends):
                s = at.get(x)
                if s is not None:
                    s.discard(a)
                    s.discard(b)
            for x in c.ends:
                at.setdefault(x, set()).add(c)
            for x in c.ends:
                for o in at[x]:
                    if o is not c:
                        heapq.heappush(heap, (c.size + o.size, seq, c, o, x))
                        seq += 1

    # -- gadget-chain surgery ----------------------------------------------

    def _anchor_gadget(self, v, anchor):
        vert = self._verts[v]
        if anchor is NO_ANCHOR or anchor is None:
            if vert.deg:
                raise ForestUsageError("anchor required at a non-isolated "
                                       "vertex")
            return None
        if not isinstance(anchor, EdgeHandle) or not anchor.alive:
            raise ForestUsageError("anchor edge is not present")
        if anchor.u == v:
            return anchor.gu
        if anchor.v == v:
            return anchor.gv
        raise ForestUsageError("anchor edge is not incident to the vertex")

    def _insert_gadget(self, v, after):
        vert = self._verts[v]
        g = _Gnode(v)
        if after is None:
            vert.head = vert.tail = g
        else:
            self._open_around(after)
            nxt = after.nextg
            if nxt is not None:
                self._open_around(nxt)
                self._drop_leaf(after.nextc)
                after.nextc = nxt.prevc = None
            after.nextg = g
            g.prevg = after
            after.nextc = g.prevc = self._leaf(after, g, None, False)
            if nxt is not None:
                g.nextg = nxt
                nxt.prevg = g
                g.nextc = nxt.prevc = self._leaf(g, nxt, None, False)
            else:
                vert.tail = g
        vert.deg += 1
        return g

    def _remove_gadget(self, v, g):
        vert = self._verts[v]
        prv, nxt = g.prevg, g.nextg
        self._open_around(g)
        if prv is not None:
            self._open_around(prv)
            self._drop_leaf(g.prevc)
            prv.nextc = None
            prv.nextg = nxt
        if nxt is not None:
            self._open_around(nxt)
            self._drop_leaf(g.nextc)
            nxt.prevc = None
            nxt.prevg = prv
        if prv is not None and nxt is not None:
            prv.nextc = nxt.prevc = self._leaf(prv, nxt, None, False)
        if vert.head is g:
            vert.head = nxt
        if vert.tail is g:
            vert.tail = prv
        vert.deg -= 1

    # -- public operations --------------------------------------------------

    def link(self, u, v, e_u, e_v, value):
        self.ops += 1
        if u == v:
            raise ForestUsageError("self-loops are not allowed in a forest")
        au = self._anchor_gadget(u, e_u)
        av = self._anchor_gadget(v, e_v)
        vu, vv = self._verts[u], self._verts[v]
        if (vu.deg and vv.deg
                and self._root_of(vu.head) is self._root_of(vv.head)):
            raise ForestUsageError("link endpoints already connected")
        self._exposed = frozenset()
        self._pool = {}
        gu = self._insert_gadget(u, au)
        gv = self._insert_gadget(v, av)
        leaf = self._leaf(gu, gv, value, True)
        gu.real = gv.real = leaf
        self._rebuild()
        return EdgeHandle(u, v, leaf, gu, gv)

    def cut(self, e):
        self.ops += 1
        if not isinstance(e, EdgeHandle) or not e.alive:
            raise ForestUsageError("cut of absent edge")
        self._exposed = frozenset()
        self._pool = {}
        self._drop_leaf(e.leaf)
        self._remove_gadget(e.u, e.gu)
        self._remove_gadget(e.v, e.gv)
        self._rebuild()
        e.alive = False

    def _expose(self, gnodes):
        self._exposed = frozenset(gnodes)
        self._pool = {}
        for g in gnodes:
            self._open_around(g)
        self._rebuild()
        r = self._root_of(gnodes[0])
        assert set(r.ends) == set(gnodes)
        return r

    def get_edge_value(self, e):
        self.ops += 1
        if not isinstance(e, EdgeHandle) or not e.alive:
            raise ForestUsageError("unknown edge")
        r = self._expose((e.gu, e.gv))
        return r.path[0]

    def _expose_path(self, u, v):
        vu, vv = self._verts[u], self._verts[v]
        if (vu.deg == 0 or vv.deg == 0
                or self._root_of(vu.head) is not self._root_of(vv.head)):
            raise ForestUsageError("path endpoints are not connected")
        r = self._expose((vu.head, vv.head))
        fr, lr = r.real if r.ends[0] is vu.head else (r.real[1], r.real[0])
        gi = fr.ends[0] if fr.ends[0].vertex == u else fr.ends[1]
        gj = lr.ends[0] if lr.ends[0].vertex == v else lr.ends[1]
        r = self._expose((gi, gj))
        return r, ("L" if r.ends[0] is gi else "R")

    def add_left_path(self, delta, u, v):
        self.ops += 1
        if u == v:
            if self._verts[u].deg == 0:
                raise ForestUsageError("path endpoints are not connected")
            return
        r, side = self._expose_path(u, v)
        if side == "L":
            r.left = _sshift(r.left, delta)
            r.xl += delta
        else:
            r.right = _sshift(r.right, delta)
            r.xr += delta

    def sum_left_path(self, u, v):
        self.ops += 1
        if u == v:
            if self._verts[u].deg == 0:
                raise ForestUsageError("path endpoints are not connected")
            return 0
        r, side = self._expose_path(u, v)
        return r.left[1] if side == "L" else r.right[1]

    def max_tree(self, u):
        self.ops += 1
        vert = self._verts[u]
        if vert.deg == 0:
            return None
        return self._total(self._root_of(vert.head))[0]

    def sum_tree(self, u):
        self.ops += 1
        vert = self._verts[u]
        if vert.deg == 0:
            return 0
        return self._total(self._root_of(vert.head))[1]

    # -- debug validation ---------------------------------------------------

    def _leaf_info(self, c):
        """(leaf, class label at c, extra pending strictly below c)."""
        if c.kids is None:
            return [(c, "P" if len(c.ends) == 2 else "A", 0)]
        out = []
        for d, desc in zip(c.kids, c.desc):
            for leaf, lbl, ex in self._leaf_info(d):
                if d.kids is not None:
                    ex = ex + _extra_of(d, lbl)
                if desc[0] == "fold":
                    lbl = desc[1]
                else:
                    _, flip, m0, m1 = desc
                    if lbl == "L":
                        lbl = "R" if flip else "L"
                    elif lbl == "R":
                        lbl = "L" if flip else "R"
                    elif lbl == "H0":
                        lbl = m0
                    elif lbl == "H1":
                        lbl = m1
                out.append((leaf, lbl, ex))
        return out

    def _validate_cluster(self, c):
        groups = {}
        for leaf, lbl, ex in self._leaf_info(c):
            if leaf.is_real:
                # a slot reflects the cluster's own pending extra as well
                groups.setdefault(lbl, []).append(
                    leaf.path[0] + ex + _extra_of(c, lbl))
        slots = ({"A": c.allv} if len(c.ends) < 2 else
                 {"P": c.path, "L": c.left, "R": c.right,
                  "H0": c.hang[0], "H1": c.hang[1]})
        for lbl, slot in slots.items():
            vals = groups.pop(lbl, [])
            want = (max(vals) if vals else None, sum(vals), len(vals))
            if slot != want:
                raise AssertionError(
                    "slot %s of cluster mismatch: %r != %r" % (lbl, slot, want))
        if groups:
            raise AssertionError("labels outside stored slots: %r" % groups)
        if c.kids is not None:
            for d in c.kids:
                self._validate_cluster(d)

    def validate(self, handles):
        """Check every slot against a bottom-up recomputation, and return
        the true value of each live handle's edge."""
        roots = {}
        for e in handles:
            if e.alive:
                r = self._root_of(e.gu)
                roots[id(r)] = r
        values = {}
        for r in roots.values():
            self._validate_cluster(r)
            for leaf, lbl, ex in self._leaf_info(r):
                if leaf.is_real:
                    values[id(leaf)] = leaf.path[0] + ex + _extra_of(r, lbl)
        return {id(e): values[id(e.leaf)] for e in handles if e.alive}


# --------------------------------------------------------------------------
# naive embedded forest
# --------------------------------------------------------------------------

class NaiveEdge:
    __slots__ = ("u", "v", "value", "alive")

    def __init__(self, u, v, value):
        self.u, self.v, self.value = u, v, value
        self.alive = True

    def other(self, x):
        return self.v if x == self.u else self.u


class NaiveEmbeddedForest:
    """Reference twin: walks the path and classifies edges by rotation."""

    def __init__(self):
        self._rot = []

    def create(self):
        self._rot.append([])
        return len(self._rot) - 1

    def _check_anchor(self, v, anchor):
        if anchor is NO_ANCHOR or anchor is None:
            if self._rot[v]:
                raise ForestUsageError("anchor required at a non-isolated "
                                       "vertex")
            return None
        if (not isinstance(anchor, NaiveEdge) or not anchor.alive
                or anchor not in self._rot[v]):
            raise ForestUsageError("anchor edge is not incident to the vertex")
        return anchor

    def _component(self, v):
        seen = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for e in self._rot[x]:
                y = e.other(x)
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    def link(self, u, v, e_u, e_v, value):
        if u == v:
            raise ForestUsageError("self-loops are not allowed in a forest")
        au = self._check_anchor(u, e_u)
        av = self._check_anchor(v, e_v)
        if self._rot[u] and self._rot[v] and v in self._component(u):
            raise ForestUsageError("link endpoints already connected")
        e = NaiveEdge(u, v, value)
        for x, anchor in ((u, au), (v, av)):
            if anchor is None:
                self._rot[x].append(e)
            else:
                self._rot[x].insert(self._rot[x].index(anchor) + 1, e)
        return e

    def cut(self, e):
        if not isinstance(e, NaiveEdge) or not e.alive:
            raise ForestUsageError("cut of absent edge")
        self._rot[e.u].remove(e)
        self._rot[e.v].remove(e)
        e.alive = False

    def get_edge_value(self, e):
        if not isinstance(e, NaiveEdge) or not e.alive:
            raise ForestUsageError("unknown edge")
        return e.value

    def _path(self, u, v):
        prev = {u: None}
        stack = [u]
        while stack:
            x = stack.pop()
            if x == v:
                break
            for e in self._rot[x]:
                y = e.other(x)
                if y not in prev:
                    prev[y] = e
                    stack.append(y)
        if v not in prev:
            raise ForestUsageError("path endpoints are not connected")
        verts, edges = [v], []
        x = v
        while prev[x] is not None:
            e = prev[x]
            edges.append(e)
            x = e.other(x)
            verts.append(x)
        return verts[::-1], edges[::-1]

    def _left_edges(self, u, v):
        """Left edges of the u->v path with their hanging subtree edges."""
        verts, edges = self._path(u, v)
        out = []
        for i in range(1, len(verts) - 1):
            x = verts[i]
            ein, eout = edges[i - 1], edges[i]
            rot = self._rot[x]
            d = len(rot)
            ia, ib = rot.index(ein), rot.index(eout)
            for f in rot:
                if f is ein or f is eout:
                    continue
                k = (rot.index(f) - ia) % d
                if 0 < k < (ib - ia) % d:
                    out.append(f)
                    out.extend(self._subtree_edges(f, x))
        return out

    def _subtree_edges(self, f, block):
        start = f.other(block)
        seen = {block, start}
        stack = [start]
        out = []
        while stack:
            x = stack.pop()
            for e in self._rot[x]:
                y = e.other(x)
                if y not in seen:
                    seen.add(y)
                    out.append(e)
                    stack.append(y)
        return out

    def add_left_path(self, delta, u, v):
        if u == v:
            if not self._rot[u]:
                raise ForestUsageError("path endpoints are not connected")
            return
        for e in self._left_edges(u, v):
            e.value = e.value + delta

    def sum_left_path(self, u, v):
        if u == v:
            if not self._rot[u]:
                raise ForestUsageError("path endpoints are not connected")
            return 0
        return sum(e.value for e in self._left_edges(u, v))

    def _edges(self, u):
        seen = set()
        for x in self._component(u):
            for e in self._rot[x]:
                seen.add(e)
        return seen

    def max_tree(self, u):
        if not self._rot[u]:
            return None
        return max(e.value for e in self._edges(u))

    def sum_tree(self, u):
        if not self._rot[u]:
            return 0
        return sum(e.value for e in self._edges(u))


# --------------------------------------------------------------------------
# fuzz-replay traces
# --------------------------------------------------------------------------

def replay_trace(lines, fast_factory=None, naive_factory=None):
    """Re-run a recorded operation trace against both implementations.

    Each line is "op arg arg ..."; handles are referred to by the index
    of the link call that produced them.  Returns the line number of the
    first divergence, or None when both implementations agree throughout.
    """
    fast = (fast_factory or EmbeddedForest)()
    naive = (naive_factory or NaiveEmbeddedForest)()
    hf, hn = [], []

    def arg(tok):
        return None if tok == "-" else int(tok)

    def step(forest, handles, op, args):
        try:
            if op == "create":
                return forest.create()
            if op == "link":
                u, v, eu, ev, val = args
                a = NO_ANCHOR if eu is None else handles[eu]
                b = NO_ANCHOR if ev is None else handles[ev]
                handles.append(forest.link(u, v, a, b, val))
                return "ok"
            if op == "cut":
                forest.cut(handles[args[0]])
                return "ok"
            if op == "addleft":
                forest.add_left_path(args[0], args[1], args[2])
                return "ok"
            if op == "get":
                return forest.get_edge_value(handles[args[0]])
            if op == "sumleft":
                return forest.sum_left_path(args[0], args[1])
            if op == "max":
                return forest.max_tree(args[0])
            if op == "sum":
                return forest.sum_tree(args[0])
            raise ValueError("unknown trace op %r" % op)
        except ForestUsageError:
            return "usage-error"

    for no, line in enumerate(lines):
        parts = line.split()
        if not parts:
            continue
        op, args = parts[0], [arg(t) for t in parts[1:]]
        got = step(fast, hf, op, args)
        want = step(naive, hn, op, args)
        if got != want:
            return no
        if op == "link" and got == "usage-error":
            # keep handle indices aligned even for rejected links
            hf.append(None)
            hn.append(None)
    return None
