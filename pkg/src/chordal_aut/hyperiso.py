"""Isomorphism cosets of colored order-k hypergraphs with bounded vertex
color classes.

The computation is a recursion over blocks: edges are partitioned by their
multiset projections onto growing prefixes of the color classes; the
isomorphism coset of a block pair is assembled from the cosets of matched
sub-block pairs, intersected and then united over the feasible sub-block
matchings.  Skeleton cosets (one nesting level stripped) prune the search.
Single-edge blocks are resolved exactly: an order-1 edge yields a direct
product-of-symmetric-groups coset, a higher-order edge recurses into the
hypergraph of its members.

All cosets live on the full vertex set and map color classes to the color
classes of the same rank, so intersections stay exact; every returned coset
is exactly the set of color- and edge-preserving bijections.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Optional

from .errors import StructuralError
from .graphs import Coloring
from .hyper import (
    OrderKHypergraph,
    atom_vertex,
    children,
    ckey,
    class_prefix,
    is_atom,
    order_of,
    project,
)
from .perm import (
    Coset,
    Perm,
    PermGroup,
    coset_intersection,
    coset_union_as_coset,
    group_from_generators,
)


@dataclass
class IsoTable:
    """Memoized block-pair cosets: (level, block, block') -> Coset."""

    entries: dict = field(default_factory=dict)

    def get(self, level: int, block: frozenset, other: frozenset):
        return self.entries.get((level, block, other))

    def put(self, level: int, block: frozenset, other: frozenset,
            coset: Coset) -> None:
        self.entries[(level, block, other)] = coset


class _Engine:
    def __init__(self, h1: OrderKHypergraph, h2: OrderKHypergraph,
                 table: Optional[IsoTable] = None):
        if h1.n != h2.n:
            raise ValueError("engines require equal vertex counts")
        self.h1 = h1
        self.h2 = h2
        self.n = h1.n
        self.coloring = h1.coloring
        self.table = table if table is not None else IsoTable()
        self._memo: dict = {}

    # -- coset primitives -------------------------------------------------

    def _class_pairs(self):
        return list(zip(self.h1.coloring.classes, self.h2.coloring.classes))

    def _aligned_rep(self, part_pairs) -> Perm:
        """Bijection mapping each source part onto its target part in
        sorted order; ``part_pairs`` partitions the classes."""
        images = [0] * self.n
        for src, dst in part_pairs:
            src = sorted(src)
            dst = sorted(dst)
            if len(src) != len(dst):
                raise ValueError("part size mismatch")
            for a, b in zip(src, dst):
                images[a] = b
        return Perm(images)

    def _subset_coset(self, subsets1: dict, subsets2: dict) -> Coset:
        """Class-preserving bijections mapping, within every class, the
        marked subset onto the marked subset.

        ``subsets*``: class index -> frozenset of marked vertices.
        """
        parts = []
        gens: list[Perm] = []
        for t, (c1, c2) in enumerate(self._class_pairs()):
            in1 = subsets1.get(t, frozenset())
            in2 = subsets2.get(t, frozenset())
            if len(in1) != len(in2):
                return Coset.empty()
            parts.append((in1, in2))
            parts.append((c1 - in1, c2 - in2))
        for src, _ in parts:
            src = sorted(src)
            for a, b in zip(src, src[1:]):
                gens.append(Perm.from_cycles(self.n, [(a, b)]))
        rep = self._aligned_rep(parts)
        return Coset(group_from_generators(gens, degree=self.n), rep)

    def _full_class_coset(self) -> Coset:
        return self._subset_coset({}, {})

    # -- block recursion ----------------------------------------------------

    def iso(self) -> Coset:
        if self.h1.coloring.size() != self.h2.coloring.size():
            return Coset.empty()
        if any(len(c1) != len(c2) for c1, c2 in self._class_pairs()):
            return Coset.empty()
        e1 = {e: c for e, c in self.h1.edges.items()}
        e2 = {e: c for e, c in self.h2.edges.items()}
        return self._object_iso(e1, e2, 0)

    def _object_iso(self, edges1: dict, edges2: dict, level: int) -> Coset:
        key = (frozenset(edges1.items()), frozenset(edges2.items()))
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        out = self._compute(edges1, edges2, level)
        self._memo[key] = out
        block1 = frozenset(edges1)
        block2 = frozenset(edges2)
        self.table.put(level, block1, block2, out)
        return out

    def _compute(self, edges1: dict, edges2: dict, level: int) -> Coset:
        if len(edges1) != len(edges2):
            return Coset.empty()
        profile1 = sorted(edges1.values(), key=ckey)
        profile2 = sorted(edges2.values(), key=ckey)
        if profile1 != profile2:
            return Coset.empty()
        if not edges1:
            return self._full_class_coset()
        if len(edges1) == 1:
            (e1, c1), = edges1.items()
            (e2, c2), = edges2.items()
            return self._single_edge_iso(e1, e2)
        pruning = self._skeleton_coset(edges1, edges2)
        if pruning is not None and pruning.is_empty:
            return Coset.empty()
        m = self.coloring.size()
        depth = min(level + 1, m)
        sub1 = self._split(edges1, depth)
        sub2 = self._split(edges2, depth)
        if len(sub1) != len(sub2):
            return Coset.empty()
        if len(sub1) == 1 and depth < m:
            # no split yet; dig deeper before matching
            return self._compute(edges1, edges2, depth)
        if len(sub1) == 1:
            # single sub-block at full depth: must be multi-edge with all
            # edges sharing the full projection, impossible for distinct
            # edges; treat defensively
            raise StructuralError("full-depth block is not a singleton")
        entries: list[list[Coset]] = []
        for b1 in sub1:
            row = []
            for b2 in sub2:
                row.append(self._object_iso(
                    {e: edges1[e] for e in b1},
                    {e: edges2[e] for e in b2}, depth))
            entries.append(row)
        pieces = []
        for matching in self._matchings(entries):
            piece = pruning
            for j, jj in enumerate(matching):
                ent = entries[j][jj]
                piece = ent if piece is None else coset_intersection(piece,
                                                                     ent)
                if piece.is_empty:
                    break
            if piece is not None and not piece.is_empty:
                pieces.append(piece)
        if not pieces:
            return Coset.empty()
        return coset_union_as_coset(pieces)

    def _split(self, edges: dict, depth: int) -> list[list[int]]:
        prefix = class_prefix(self.coloring, depth)
        grouped: dict = {}
        for e in sorted(edges):
            key = (project(e, prefix).key, ckey(edges[e]),
                   order_of(e))
            grouped.setdefault(key, []).append(e)
        return [grouped[k] for k in sorted(grouped, key=ckey)]

    def _matchings(self, entries):
        """All full matchings of sub-blocks whose entries are non-empty."""
        ell = len(entries)
        cands = [[jj for jj in range(ell) if not entries[j][jj].is_empty]
                 for j in range(ell)]
        order = sorted(range(ell), key=lambda j: len(cands[j]))
        used = [False] * ell
        pick = [0] * ell

        def rec(pos):
            if pos == ell:
                yield tuple(pick)
                return
            j = order[pos]
            for jj in cands[j]:
                if not used[jj]:
                    used[jj] = True
                    pick[j] = jj
                    yield from rec(pos + 1)
                    used[jj] = False

        yield from rec(0)

    # -- skeletons ----------------------------------------------------------

    def _skel_edges(self, edges: dict) -> Optional[dict]:
        k = max(order_of(e) for e in edges)
        if k < 2:
            return None
        out: dict = {}
        for e, c in edges.items():
            if order_of(e) < k:
                out.setdefault(e, set()).add(("own", ckey(c)))
            else:
                for ch in children(e):
                    if not is_atom(ch):
                        out.setdefault(ch, set()).add(("member",))
        return {e: ("sk", tuple(sorted(flags)))
                for e, flags in out.items()}

    def _skeleton_coset(self, edges1: dict, edges2: dict) -> Optional[Coset]:
        sk1 = self._skel_edges(edges1)
        sk2 = self._skel_edges(edges2)
        if sk1 is None or sk2 is None:
            return None
        return self._object_iso(sk1, sk2, 0)

    # -- single edges ---------------------------------------------------------

    def _single_edge_iso(self, e1: int, e2: int) -> Coset:
        if order_of(e1) != order_of(e2):
            return Coset.empty()
        if order_of(e1) == 1:
            verts1 = frozenset(atom_vertex(c) for c in children(e1))
            verts2 = frozenset(atom_vertex(c) for c in children(e2))
            sub1 = {}
            sub2 = {}
            for t, (c1, c2) in enumerate(self._class_pairs()):
                sub1[t] = verts1 & c1
                sub2[t] = verts2 & c2
            return self._subset_coset(sub1, sub2)
        mem1 = self._member_object(e1)
        mem2 = self._member_object(e2)
        return self._object_iso(mem1, mem2, 0)

    def _member_object(self, e: int) -> dict:
        """The members of a nested edge as a colored hypergraph object.

        Atom members become marked singleton edges so the recursion
        constrains them exactly like set members.
        """
        from .hyper import nested

        out: dict = {}
        flags: dict = {}
        for ch in children(e):
            if is_atom(ch):
                single = nested([ch])
                flags.setdefault(single, set()).add("atom-member")
            else:
                flags.setdefault(ch, set()).add("set-member")
        for eid, fl in flags.items():
            out[eid] = ("mm", tuple(sorted(fl)))
        return out


def iso_hypergraphs(h1: OrderKHypergraph, h2: OrderKHypergraph,
                    class_bound: Optional[int] = None,
                    table: Optional[IsoTable] = None) -> Coset:
    """Exact coset of color-preserving isomorphisms between two colored
    hypergraphs (empty coset on mismatch).

    ``class_bound`` is advisory: when given, the vertex color classes are
    checked against it.
    """
    if class_bound is not None:
        if h1.max_class_size() > class_bound or \
                h2.max_class_size() > class_bound:
            raise ValueError("vertex color class exceeds the stated bound")
    if h1.n != h2.n:
        return Coset.empty()
    if h1.n == 0:
        return Coset(PermGroup(0), Perm.identity(0))
    return _Engine(h1, h2, table).iso()


def iso_base_order1(h1: OrderKHypergraph, h2: OrderKHypergraph,
                    class_bound: Optional[int] = None) -> Coset:
    """Isomorphism coset for usual (order-1) hypergraphs.

    The same level recursion as the general engine, entered at order 1;
    exposed separately because it is the base case of the construction.
    """
    if h1.order != 1 or h2.order != 1:
        raise ValueError("order-1 hypergraphs expected")
    return iso_hypergraphs(h1, h2, class_bound)


def iso_level(level: int, block1: frozenset, block2: frozenset,
              h1: OrderKHypergraph, h2: OrderKHypergraph,
              table: Optional[IsoTable] = None) -> Coset:
    """Isomorphism coset of one block pair at the given level.

    Blocks are edge-id sets of ``h1`` and ``h2``; the table memoizes block
    pairs reachable from this computation.
    """
    eng = _Engine(h1, h2, table)
    return eng._object_iso({e: h1.edges[e] for e in block1},
                           {e: h2.edges[e] for e in block2}, level)


def aut_hypergraph(h: OrderKHypergraph) -> PermGroup:
    """Automorphism group (color-preserving) of a colored hypergraph."""
    coset = iso_hypergraphs(h, h)
    if coset.is_empty:
        raise StructuralError("self-isomorphism coset cannot be empty")
    if not coset.contains(Perm.identity(h.n)):
        raise StructuralError("identity missing from the self-coset")
    return coset.group
