"""Order-k hypergraphs: interned nested hyperedges, projections, skeletons,
composition, i-equivalence blocks and block hypergraphs.

Hyperedges are nested sets over atoms (vertices).  Structural interning
assigns one id per distinct structure, so structural equality is id
equality across all construction paths.
"""

from __future__ import annotations

import threading
from typing import Iterable, Optional, Sequence

from .errors import StructuralError
from .graphs import Coloring

# -- interner ----------------------------------------------------------------

_lock = threading.Lock()
_table: dict = {}
_nodes: list = []  # id -> ("a", vertex) | ("s", tuple of child ids)
_orders: list = []  # id -> structural order


def _intern(key) -> int:
    eid = _table.get(key)
    if eid is not None:
        return eid
    with _lock:
        eid = _table.get(key)
        if eid is not None:
            return eid
        eid = len(_nodes)
        _nodes.append(key)
        if key[0] == "a":
            _orders.append(0)
        else:
            _orders.append(1 + max((_orders[c] for c in key[1]), default=0))
        _table[key] = eid
        return eid


def atom(vertex: int) -> int:
    return _intern(("a", vertex))


def nested(children: Iterable[int]) -> int:
    return _intern(("s", tuple(sorted(set(children)))))


def edge_of_vertices(vertices: Iterable[int]) -> int:
    """Order-1 edge: a set of atoms."""
    return nested(atom(v) for v in vertices)


def is_atom(eid: int) -> bool:
    return _nodes[eid][0] == "a"


def atom_vertex(eid: int) -> int:
    kind, v = _nodes[eid]
    if kind != "a":
        raise ValueError("not an atom")
    return v


def children(eid: int) -> tuple:
    kind, payload = _nodes[eid]
    if kind != "s":
        raise ValueError("not a nested edge")
    return payload


def order_of(eid: int) -> int:
    return _orders[eid]


def vertices_of(eid: int) -> frozenset:
    kind, payload = _nodes[eid]
    if kind == "a":
        return frozenset({payload})
    out = set()
    for c in payload:
        out |= vertices_of(c)
    return frozenset(out)


def relabel_edge(eid: int, mapping) -> int:
    """Rebuild the structure with every atom vertex v replaced by
    mapping(v) (callable or indexable)."""
    get = mapping if callable(mapping) else mapping.__getitem__
    kind, payload = _nodes[eid]
    if kind == "a":
        return atom(get(payload))
    return nested(relabel_edge(c, mapping) for c in payload)


def edge_text(eid: int) -> str:
    """Canonical nested-brace debug form."""
    kind, payload = _nodes[eid]
    if kind == "a":
        return str(payload)
    return "{" + ",".join(sorted((edge_text(c) for c in payload))) + "}"


def ckey(x):
    """Total order key over the heterogeneous tokens used for colors and
    projection keys."""
    if x is None:
        return (0,)
    if isinstance(x, bool):
        return (1, int(x))
    if isinstance(x, int):
        return (2, x)
    if isinstance(x, str):
        return (3, x)
    if isinstance(x, (tuple, list)):
        return (4, tuple(ckey(y) for y in x))
    if isinstance(x, frozenset):
        return (5, tuple(sorted(ckey(y) for y in x)))
    raise TypeError(f"unorderable token: {x!r}")


# -- projections --------------------------------------------------------------


class Projection:
    """Canonical multiset tree: the projection of a hyperedge on a vertex
    subset, with multiplicities."""

    __slots__ = ("key",)

    def __init__(self, key):
        self.key = key

    def __eq__(self, other) -> bool:
        return isinstance(other, Projection) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"Projection({self.key!r})"


def _proj_key(eid: int, inside) -> Optional[tuple]:
    kind, payload = _nodes[eid]
    if kind == "a":
        return ("a", payload) if inside(payload) else None
    parts = []
    for c in payload:
        k = _proj_key(c, inside)
        if k is not None:
            parts.append(k)
    parts.sort(key=ckey)
    counted = []
    for k in parts:
        if counted and counted[-1][0] == k:
            counted[-1][1] += 1
        else:
            counted.append([k, 1])
    return ("m", tuple((k, c) for k, c in counted))


def project(eid: int, subset: Iterable[int]) -> Projection:
    """Recursive multiset projection on ``subset``.

    Atoms outside the subset vanish (set semantics, matching plain
    intersection for order-1 edges); nested members always contribute,
    possibly as empty multisets.
    """
    sub = frozenset(subset)
    key = _proj_key(eid, sub.__contains__)
    if key is None:
        raise ValueError("cannot project a bare atom that is outside U")
    return Projection(key)


def project_as_edge(eid: int, subset: Iterable[int]) -> int:
    """Projection with multiplicities dropped at every level: a hyperedge."""
    sub = frozenset(subset)

    def rec(e: int) -> Optional[int]:
        kind, payload = _nodes[e]
        if kind == "a":
            return e if payload in sub else None
        return nested(k for k in (rec(c) for c in payload) if k is not None)

    out = rec(eid)
    if out is None:
        raise ValueError("cannot project a bare atom that is outside U")
    return out


# -- hypergraphs ---------------------------------------------------------------


class OrderKHypergraph:
    """Colored hypergraph whose edges are interned nested structures.

    ``edges`` maps edge id -> opaque color token.  ``order`` is the declared
    order; every edge's structural order is at most ``order``.
    """

    __slots__ = ("n", "coloring", "edges", "order")

    def __init__(self, n: int, coloring: Coloring,
                 edges: dict, order: Optional[int] = None):
        if coloring.n != n:
            raise ValueError("coloring size mismatch")
        self.n = n
        self.coloring = coloring
        self.edges = dict(edges)
        structural = max((order_of(e) for e in self.edges), default=1)
        self.order = structural if order is None else order
        if structural > self.order:
            raise StructuralError("edge exceeds declared order")
        for e in self.edges:
            if is_atom(e):
                raise StructuralError("a bare atom cannot be a hyperedge")
            if not vertices_of(e) <= frozenset(range(n)):
                raise StructuralError("edge uses unknown vertices")

    def classes(self) -> tuple:
        return self.coloring.classes

    def max_class_size(self) -> int:
        return max((len(c) for c in self.coloring.classes), default=0)

    def edge_ids(self) -> list[int]:
        return sorted(self.edges)

    def relabel(self, mapping) -> "OrderKHypergraph":
        get = mapping if callable(mapping) else mapping.__getitem__
        new_edges = {}
        for e, c in self.edges.items():
            ne = relabel_edge(e, get)
            if ne in new_edges:
                raise StructuralError("relabeling collapsed two edges")
            new_edges[ne] = c
        inv_color = [0] * self.n
        for v in range(self.n):
            inv_color[get(v)] = self.coloring.class_of[v]
        return OrderKHypergraph(self.n, Coloring(inv_color), new_edges,
                                self.order)

    def __repr__(self) -> str:
        return (f"OrderKHypergraph(n={self.n}, edges={len(self.edges)}, "
                f"order={self.order})")


def class_prefix(coloring: Coloring, i: int) -> frozenset:
    """Union of the first i color classes."""
    out = set()
    for cls in coloring.classes[:i]:
        out |= cls
    return frozenset(out)


def class_suffix(coloring: Coloring, i: int) -> frozenset:
    """Union of the color classes from index i on (0-based)."""
    out = set()
    for cls in coloring.classes[i:]:
        out |= cls
    return frozenset(out)


def blocks(h: OrderKHypergraph, i: int) -> list[list[int]]:
    """Partition of the edges by equal multiset projection onto the first
    i color classes, in canonical key order."""
    m = h.coloring.size()
    if not 0 <= i <= m:
        raise ValueError(f"level {i} out of range 0..{m}")
    prefix = class_prefix(h.coloring, i)
    grouped: dict = {}
    for e in h.edge_ids():
        key = project(e, prefix).key
        grouped.setdefault(key, []).append(e)
    return [grouped[k] for k in sorted(grouped, key=ckey)]


def block_hypergraph(h: OrderKHypergraph, block: Sequence[int],
                     i: int) -> tuple[OrderKHypergraph, dict]:
    """The residual hypergraph of an i-block on the suffix classes.

    Vertices are the classes of index >= i-1 (1-based level i covers
    C_i..C_m, here ``i`` is 1-based to match the level semantics);
    projected edges are deduplicated, each colored by the multiset of
    source colors grouped by exact multiset projection.

    Returns the hypergraph (re-indexed vertices) plus the dense->original
    vertex map.
    """
    m = h.coloring.size()
    if not 1 <= i <= m:
        raise ValueError(f"level {i} out of range 1..{m}")
    live = sorted(class_suffix(h.coloring, i - 1))
    index = {v: j for j, v in enumerate(live)}
    groups: dict = {}
    for e in block:
        key = project(e, live).key
        groups.setdefault(key, []).append(h.edges[e])
    # regroup by the set-version of the projection
    merged: dict = {}
    for key in sorted(groups, key=ckey):
        rep_edge = _edge_from_proj_key_as_set(key, index)
        colors = tuple(sorted(groups[key], key=ckey))
        merged.setdefault(rep_edge, []).append(colors)
    edges = {}
    for eid, groups_colors in merged.items():
        if len(groups_colors) == 1:
            edges[eid] = ("bh", groups_colors[0])
        else:
            edges[eid] = ("bhm", tuple(sorted((("bh", c)
                                               for c in groups_colors),
                                              key=ckey)))
    sub_coloring = h.coloring.induce(live)
    return (OrderKHypergraph(len(live), sub_coloring, edges),
            {j: v for v, j in index.items()})


def _edge_from_proj_key_as_set(key, index: dict) -> int:
    tag = key[0]
    if tag == "a":
        return atom(index[key[1]])
    assert tag == "m"
    return nested(_edge_from_proj_key_as_set(k, index) for k, _ in key[1])


def skeleton(h: OrderKHypergraph) -> OrderKHypergraph:
    """The order-(k-1) hypergraph of nested members of the top-order edges,
    together with the lower-order edges of ``h`` itself.

    Colors record whether a skeleton edge is an edge of ``h`` (and then its
    color) or only a member.
    """
    k = h.order
    if k < 2:
        raise ValueError("skeleton requires order >= 2")
    own = {e: c for e, c in h.edges.items() if order_of(e) < k}
    members = set()
    for e in h.edges:
        if order_of(e) == k:
            for c in children(e):
                if not is_atom(c):
                    members.add(c)
    edges = {}
    for e in members | set(own):
        edges[e] = ("sk", own.get(e))
    return OrderKHypergraph(h.n, h.coloring, edges, k - 1)


def compose(h1: OrderKHypergraph, h2: OrderKHypergraph,
            h2_vertex_edges: Sequence[int]) -> OrderKHypergraph:
    """Hypergraph composition: ``h2``'s vertices are exactly ``h1``'s
    hyperedges (given by ``h2_vertex_edges``); the result keeps ``h1``'s
    vertex set and takes the union of both edge sets.

    Edge colors: edges only in ``h1`` keep their color; an ``h2`` image
    that coincides with an ``h1`` edge is colored (0, c1, c2); a fresh
    ``h2`` image is colored (1, member colors, c2).
    """
    if h2.n != len(h2_vertex_edges):
        raise StructuralError("vertex map size mismatch")
    if set(h2_vertex_edges) != set(h1.edges):
        raise StructuralError("h2 vertices must be exactly h1's edges")
    if len(set(h2_vertex_edges)) != len(h2_vertex_edges):
        raise StructuralError("vertex map must be injective")

    transported: dict[int, int] = {}  # h2 edge id -> edge over h1 vertices

    def transport(e: int) -> int:
        kind, payload = _nodes[e]
        if kind == "a":
            return h2_vertex_edges[payload]
        out = transported.get(e)
        if out is None:
            out = nested(transport(c) for c in payload)
            transported[e] = out
        return out

    edges = dict(h1.edges)
    # process h2 edges by increasing structural order so member colors of
    # higher images can refer to colors already assigned to lower images
    for e in sorted(h2.edges, key=order_of):
        image = transport(e)
        c2 = h2.edges[e]
        if image in h1.edges:
            edges[image] = (0, h1.edges[image], c2)
        else:
            member_colors = tuple(sorted(
                (edges.get(ch) for ch in children(image)), key=ckey))
            if image in edges:
                raise StructuralError("composition collapsed two edges")
            edges[image] = (1, member_colors, c2)
    return OrderKHypergraph(h1.n, h1.coloring, edges,
                            h1.order + h2.order)
