"""Graphs, colorings, tree representations and basic structure queries.

Vertices are dense integers 0..n-1.  Graphs are immutable after
construction; all derived views keep explicit index maps both ways.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Optional, Sequence

from .errors import NotChordalError, StructuralError
from .perm import Perm


class Graph:
    """Undirected simple graph with sorted adjacency sets."""

    __slots__ = ("n", "adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range")
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.adj = tuple(frozenset(a) for a in adj)

    @staticmethod
    def from_adjacency(adj: Sequence[Iterable[int]]) -> "Graph":
        n = len(adj)
        return Graph(n, ((u, v) for u in range(n) for v in adj[u] if u < v))

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    yield (u, v)

    def edge_count(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def relabel(self, p: Perm) -> "Graph":
        """Graph with vertex u renamed to p(u)."""
        return Graph(self.n, ((p(u), p(v)) for u, v in self.edges()))

    def edge_set(self) -> frozenset:
        return frozenset(frozenset(e) for e in self.edges())

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count()})"


class Coloring:
    """Ordered partition of 0..n-1 into color classes with dense color ids."""

    __slots__ = ("class_of", "classes")

    def __init__(self, class_of: Sequence[int]):
        self.class_of = tuple(class_of)
        k = max(self.class_of, default=-1) + 1
        buckets: list[list[int]] = [[] for _ in range(k)]
        for v, c in enumerate(self.class_of):
            if not 0 <= c < k:
                raise ValueError("color ids must be dense from 0")
            buckets[c].append(v)
        if any(not b for b in buckets):
            raise ValueError("color ids must be dense from 0")
        self.classes = tuple(frozenset(b) for b in buckets)

    @staticmethod
    def trivial(n: int) -> "Coloring":
        return Coloring([0] * n)

    @staticmethod
    def discrete(n: int) -> "Coloring":
        return Coloring(list(range(n)))

    @staticmethod
    def from_classes(classes: Sequence[Iterable[int]], n: int) -> "Coloring":
        class_of = [-1] * n
        for c, cls in enumerate(classes):
            for v in cls:
                if class_of[v] != -1:
                    raise ValueError("classes overlap")
                class_of[v] = c
        if any(c == -1 for c in class_of):
            raise ValueError("classes do not cover all vertices")
        return Coloring(class_of)

    @staticmethod
    def by_key(keys: Sequence) -> "Coloring":
        """Color vertices by sorted distinct key; deterministic and
        label-independent whenever the keys are."""
        order = {k: i for i, k in enumerate(sorted(set(keys)))}
        return Coloring([order[k] for k in keys])

    @property
    def n(self) -> int:
        return len(self.class_of)

    def size(self) -> int:
        return len(self.classes)

    def color(self, v: int) -> int:
        return self.class_of[v]

    def induce(self, vertices: Sequence[int]) -> "Coloring":
        """Induced coloring on ``sorted(vertices)`` re-indexed to 0..k-1,
        keeping the original class order."""
        verts = sorted(vertices)
        return Coloring.by_key([self.class_of[v] for v in verts])

    def refines(self, other: "Coloring") -> bool:
        """Every class of self lies inside one class of ``other``."""
        if self.n != other.n:
            return False
        return all(
            len({other.class_of[v] for v in cls}) == 1
            for cls in self.classes
        )

    def as_partition(self) -> frozenset:
        return frozenset(self.classes)

    def permute(self, p: Perm) -> "Coloring":
        """Coloring of the relabelled vertex set (vertex u becomes p(u))."""
        out = [0] * self.n
        for v, c in enumerate(self.class_of):
            out[p(v)] = c
        return Coloring(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, Coloring) and self.class_of == other.class_of

    def __hash__(self) -> int:
        return hash(self.class_of)

    def __repr__(self) -> str:
        return f"Coloring({list(self.class_of)})"


class InducedView:
    """A graph on a vertex subset of a parent graph, with index maps."""

    __slots__ = ("parent", "vertices", "graph", "to_local")

    def __init__(self, parent: Graph, vertices: Iterable[int], graph: Graph):
        self.parent = parent
        self.vertices = tuple(sorted(vertices))
        self.graph = graph
        self.to_local = {v: i for i, v in enumerate(self.vertices)}
        if graph.n != len(self.vertices):
            raise ValueError("view size mismatch")

    def to_parent(self, i: int) -> int:
        return self.vertices[i]

    def local(self, v: int) -> int:
        return self.to_local[v]


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> InducedView:
    verts = sorted(vertices)
    idx = {v: i for i, v in enumerate(verts)}
    vset = set(verts)
    local = Graph(len(verts), ((idx[u], idx[v]) for u in verts
                               for v in g.adj[u] if v in vset and u < v))
    return InducedView(g, verts, local)


def bipartite_between(g: Graph, left: Iterable[int],
                      right: Iterable[int]) -> InducedView:
    """Graph on left ∪ right keeping only edges with one end in each set.

    With ``left == right`` this is the induced subgraph.
    """
    lset, rset = set(left), set(right)
    verts = sorted(lset | rset)
    idx = {v: i for i, v in enumerate(verts)}
    edges = set()
    for u in verts:
        for v in g.adj[u]:
            if v in idx and u < v:
                if (u in lset and v in rset) or (u in rset and v in lset):
                    edges.add((idx[u], idx[v]))
    return InducedView(g, verts, Graph(len(verts), edges))


def boundary_and_closure(g: Graph, subset: Iterable[int]
                         ) -> tuple[frozenset, InducedView]:
    """Outside neighbourhood of ``subset`` and the induced closure view."""
    inner = set(subset)
    boundary = set()
    for v in inner:
        boundary.update(w for w in g.adj[v] if w not in inner)
    return frozenset(boundary), induced_subgraph(g, inner | boundary)


def components(g: Graph) -> list[frozenset]:
    """Connected components, ordered by minimum vertex."""
    seen = [False] * g.n
    out = []
    for start in range(g.n):
        if seen[start]:
            continue
        comp = {start}
        seen[start] = True
        stack = [start]
        while stack:
            u = stack.pop()
            for v in g.adj[u]:
                if not seen[v]:
                    seen[v] = True
                    comp.add(v)
                    stack.append(v)
        out.append(frozenset(comp))
    return out


def components_of_subset(g: Graph, subset: Iterable[int]) -> list[frozenset]:
    """Components of the subgraph induced by ``subset`` (parent labels)."""
    sub = set(subset)
    seen = set()
    out = []
    for start in sorted(sub):
        if start in seen:
            continue
        comp = {start}
        seen.add(start)
        stack = [start]
        while stack:
            u = stack.pop()
            for v in g.adj[u]:
                if v in sub and v not in seen:
                    seen.add(v)
                    comp.add(v)
                    stack.append(v)
        out.append(frozenset(comp))
    return out


def are_twins(g: Graph, a: int, b: int) -> bool:
    """True if every third vertex is adjacent to both or neither."""
    na = g.adj[a] - {b}
    nb = g.adj[b] - {a}
    return na == nb


def twin_classes(g: Graph) -> Coloring:
    """Partition into maximal twin classes, verified to be consistent.

    Verifies that the twin relation restricted to every class is total and
    that each class induces a complete or empty subgraph.
    """
    class_of = [-1] * g.n
    classes: list[list[int]] = []
    for v in range(g.n):
        if class_of[v] != -1:
            continue
        cid = len(classes)
        members = [v]
        class_of[v] = cid
        for w in range(v + 1, g.n):
            if class_of[w] == -1 and are_twins(g, v, w):
                members.append(w)
                class_of[w] = cid
        classes.append(members)
    # runtime verification: pairwise totality and complete-or-empty classes
    for members in classes:
        for i, a in enumerate(members):
            for b in members[i + 1:]:
                if not are_twins(g, a, b):
                    raise StructuralError(
                        f"twin relation not transitive: {a}, {b}")
        inner = [(a, b) for i, a in enumerate(members)
                 for b in members[i + 1:]]
        kinds = {g.has_edge(a, b) for a, b in inner}
        if len(kinds) > 1:
            raise StructuralError(
                f"twin class {members} induces a mixed subgraph")
    return Coloring(class_of)


# -- chordality ------------------------------------------------------------


def lex_bfs(g: Graph) -> list[int]:
    """Lexicographic BFS order (first visited first)."""
    labels: dict[int, list[int]] = {v: [] for v in range(g.n)}
    order = []
    remaining = set(range(g.n))
    counter = g.n
    while remaining:
        v = max(remaining, key=lambda u: (labels[u], -u))
        remaining.discard(v)
        order.append(v)
        for w in g.adj[v]:
            if w in remaining:
                labels[w].append(counter)
        counter -= 1
    return order


def peo_order(g: Graph) -> Optional[list[int]]:
    """A perfect elimination ordering, or None if the graph is not chordal.

    The reverse of a lexicographic BFS order is checked as a PEO.
    """
    order = lex_bfs(g)
    order.reverse()  # candidate PEO: eliminate order[0] first
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [w for w in g.adj[v] if pos[w] > pos[v]]
        if not later:
            continue
        u = min(later, key=lambda w: pos[w])
        rest = set(later) - {u}
        if not rest <= g.adj[u] | {u}:
            return None
    return order


def is_chordal(g: Graph) -> bool:
    return peo_order(g) is not None


def maximal_cliques_chordal(g: Graph) -> list[frozenset]:
    """Maximal cliques of a chordal graph (at most n of them)."""
    order = peo_order(g)
    if order is None:
        raise NotChordalError("graph is not chordal")
    pos = {v: i for i, v in enumerate(order)}
    cliques = []
    for v in order:
        c = frozenset({v} | {w for w in g.adj[v] if pos[w] > pos[v]})
        cliques.append(c)
    cliques.sort(key=len, reverse=True)
    out: list[frozenset] = []
    for c in cliques:
        if not any(c <= other for other in out):
            out.append(c)
    return sorted(out, key=lambda c: sorted(c))


def _at_free(g: Graph) -> bool:
    """No asteroidal triple: no independent triple pairwise connected by
    paths avoiding the closed neighbourhood of the third."""
    n = g.n
    # comp_id[w][v]: component of v in g - N[w], or -1 inside N[w]
    comp_id = []
    for w in range(n):
        banned = set(g.adj[w]) | {w}
        cid = [-1] * n
        c = 0
        for s in range(n):
            if s in banned or cid[s] != -1:
                continue
            stack = [s]
            cid[s] = c
            while stack:
                u = stack.pop()
                for x in g.adj[u]:
                    if x not in banned and cid[x] == -1:
                        cid[x] = c
                        stack.append(x)
            c += 1
        comp_id.append(cid)
    for a in range(n):
        for b in range(a + 1, n):
            if g.has_edge(a, b):
                continue
            for c in range(b + 1, n):
                if g.has_edge(a, c) or g.has_edge(b, c):
                    continue
                if (comp_id[c][a] == comp_id[c][b] != -1
                        and comp_id[b][a] == comp_id[b][c] != -1
                        and comp_id[a][b] == comp_id[a][c] != -1):
                    return False
    return True


def is_interval(g: Graph) -> bool:
    """Interval graph test: chordal and asteroidal-triple-free."""
    return is_chordal(g) and _at_free(g)


# -- tree representations ---------------------------------------------------


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.edge_count() == g.n - 1 and len(components(g)) == 1


def tree_leaf_count(tree: Graph) -> int:
    """Number of leaves; a single vertex counts as one leaf."""
    if tree.n == 1:
        return 1
    return sum(1 for v in range(tree.n) if tree.degree(v) == 1)


class TreeRepresentation:
    """A host tree plus one connected subtree (bag) per graph vertex."""

    __slots__ = ("tree", "bags", "root", "leaf_bound")

    def __init__(self, tree: Graph, bags: Sequence[Iterable[int]],
                 root: Optional[int] = None):
        if not is_tree(tree):
            raise StructuralError("host graph is not a tree")
        self.tree = tree
        self.bags = tuple(frozenset(b) for b in bags)
        self.root = root
        self.leaf_bound = tree_leaf_count(tree)

    def __repr__(self) -> str:
        return (f"TreeRepresentation(tree_n={self.tree.n}, "
                f"bags={len(self.bags)}, leaf_bound={self.leaf_bound})")


def _is_connected_in_tree(tree: Graph, bag: frozenset) -> bool:
    if not bag:
        return False
    start = next(iter(bag))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v in tree.adj[u]:
            if v in bag and v not in seen:
                seen.add(v)
                stack.append(v)
    return seen == set(bag)


def realize(rep: TreeRepresentation) -> Graph:
    """Intersection graph of the bags; rejects non-subtree bags."""
    for i, bag in enumerate(rep.bags):
        if not _is_connected_in_tree(rep.tree, bag):
            raise StructuralError(f"bag {i} does not induce a subtree")
    n = len(rep.bags)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)
             if rep.bags[i] & rep.bags[j]]
    return Graph(n, edges)


def is_automorphism(g: Graph, p: Perm,
                    coloring: Optional[Coloring] = None) -> bool:
    """Does ``p`` preserve edges (and the coloring, if given)?"""
    if p.degree != g.n:
        return False
    if coloring is not None and any(
            coloring.class_of[v] != coloring.class_of[p(v)]
            for v in range(g.n)):
        return False
    return all(g.has_edge(p(u), p(v)) for u, v in g.edges())


def is_isomorphism(g: Graph, h: Graph, p: Perm,
                   cg: Optional[Coloring] = None,
                   ch: Optional[Coloring] = None) -> bool:
    """Does ``p`` map ``g`` onto ``h`` edge- and color-wise?"""
    if g.n != h.n or p.degree != g.n:
        return False
    if g.edge_count() != h.edge_count():
        return False
    if cg is not None and ch is not None and any(
            cg.class_of[v] != ch.class_of[p(v)] for v in range(g.n)):
        return False
    return all(h.has_edge(p(u), p(v)) for u, v in g.edges())


def disjoint_union(g: Graph, h: Graph) -> Graph:
    edges = list(g.edges())
    edges += [(u + g.n, v + g.n) for u, v in h.edges()]
    return Graph(g.n + h.n, edges)
