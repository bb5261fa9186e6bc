"""Random instance generation and brute-force oracles.

Everything here is deterministic given the seed, and every oracle is an
independent implementation of its contract (no shared code with the
algorithms under test beyond the data types).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import StructuralError
from .graphs import (
    Coloring,
    Graph,
    TreeRepresentation,
    is_chordal,
    realize,
    twin_classes,
)
from .hyper import OrderKHypergraph, edge_of_vertices, nested, relabel_edge
from .perm import Perm, PermGroup, group_from_generators


@dataclass(frozen=True)
class GeneratorConfig:
    n: int
    leaf_bound: int
    seed: int
    twinless: bool = False
    colored: bool = False

    def __post_init__(self):
        if self.leaf_bound < 1:
            raise ValueError("leaf_bound must be >= 1")
        if self.n < 1:
            raise ValueError("n must be >= 1")


def _random_host_tree(rng: random.Random, size: int,
                      leaf_bound: int) -> Graph:
    """Random tree with at most ``leaf_bound`` leaves.

    Built as a backbone path with up to leaf_bound - 2 extra branches.
    """
    if leaf_bound == 1:
        return Graph(1)
    size = max(size, 2)
    edges = [(i, i + 1) for i in range(size - 1)]
    n = size
    extra = rng.randint(0, leaf_bound - 2)
    for _ in range(extra):
        attach = rng.randrange(n)
        length = rng.randint(1, 3)
        prev = attach
        for _ in range(length):
            edges.append((prev, n))
            prev = n
            n += 1
    return Graph(n, edges)


def _random_subtree(rng: random.Random, tree: Graph) -> frozenset:
    """Random connected subtree: random root, random BFS truncation,
    biased towards keeping neighbours (so bags tend to overlap)."""
    root = rng.randrange(tree.n)
    keep = {root}
    frontier = [root]
    grow = rng.uniform(0.3, 0.85)
    while frontier:
        u = frontier.pop(rng.randrange(len(frontier)))
        for v in tree.adj[u]:
            if v not in keep and rng.random() < grow:
                keep.add(v)
                frontier.append(v)
    return frozenset(keep)


def _collapse_twins(rep: TreeRepresentation, g: Graph
                    ) -> tuple[TreeRepresentation, Graph]:
    while True:
        tc = twin_classes(g)
        if tc.size() == g.n:
            return rep, g
        reps = sorted(min(cls) for cls in tc.classes)
        bags = [rep.bags[v] for v in reps]
        rep = TreeRepresentation(rep.tree, bags)
        g = realize(rep)


def gen_chordal(cfg: GeneratorConfig) -> tuple[TreeRepresentation, Graph,
                                               Optional[Coloring]]:
    """Random chordal instance with leafage at most ``cfg.leaf_bound``.

    Returns the tree representation, the realized graph and an optional
    coloring (present iff ``cfg.colored``).
    """
    rng = random.Random(cfg.seed)
    tree = _random_host_tree(rng, max(2, cfg.n // 2), cfg.leaf_bound)
    bags = [_random_subtree(rng, tree) for _ in range(cfg.n)]
    rep = TreeRepresentation(tree, bags)
    g = realize(rep)
    if cfg.twinless:
        rep, g = _collapse_twins(rep, g)
    if not is_chordal(g):
        raise StructuralError("generator produced a non-chordal graph")
    coloring = None
    if cfg.colored:
        k = rng.randint(2, max(2, min(3, g.n)))
        coloring = Coloring.by_key([rng.randrange(k) for _ in range(g.n)])
    return rep, g, coloring


# -- brute-force oracles ------------------------------------------------------


_BRUTE_LIMIT = 12


def _iso_extensions(g: Graph, h: Graph, cg: Coloring,
                    ch: Coloring) -> Iterator[Perm]:
    """Backtracking search for color-preserving isomorphisms g -> h."""
    n = g.n
    order = sorted(range(n), key=lambda v: (-g.degree(v), v))
    images: list[int] = [-1] * n
    used = [False] * n

    def candidates(v):
        for w in range(n):
            if used[w]:
                continue
            if cg.class_of[v] != ch.class_of[w]:
                continue
            if g.degree(v) != h.degree(w):
                continue
            ok = True
            for u in range(n):
                if images[u] == -1 or u == v:
                    continue
                if g.has_edge(u, v) != h.has_edge(images[u], w):
                    ok = False
                    break
            if ok:
                yield w

    def rec(idx) -> Iterator[Perm]:
        if idx == n:
            yield Perm(images)
            return
        v = order[idx]
        for w in candidates(v):
            images[v] = w
            used[w] = True
            yield from rec(idx + 1)
            images[v] = -1
            used[w] = False

    yield from rec(0)


def brute_iso(g: Graph, h: Graph, cg: Optional[Coloring] = None,
              ch: Optional[Coloring] = None) -> Optional[Perm]:
    """Exact isomorphism decision with certificate, for n <= 12."""
    if max(g.n, h.n) > _BRUTE_LIMIT:
        raise ValueError("graph too large for the brute-force oracle")
    if g.n != h.n or g.edge_count() != h.edge_count():
        return None
    cg = cg if cg is not None else Coloring.trivial(g.n)
    ch = ch if ch is not None else Coloring.trivial(h.n)
    if sorted(map(len, cg.classes)) != sorted(map(len, ch.classes)):
        return None
    for p in _iso_extensions(g, h, cg, ch):
        return p
    return None


def brute_iso_all(g: Graph, h: Graph, cg: Optional[Coloring] = None,
                  ch: Optional[Coloring] = None) -> list[Perm]:
    """All color-preserving isomorphisms (tiny graphs only)."""
    if max(g.n, h.n) > 9:
        raise ValueError("graph too large to enumerate all isomorphisms")
    if g.n != h.n:
        return []
    cg = cg if cg is not None else Coloring.trivial(g.n)
    ch = ch if ch is not None else Coloring.trivial(h.n)
    return list(_iso_extensions(g, h, cg, ch))


def brute_aut(g: Graph, coloring: Optional[Coloring] = None) -> PermGroup:
    """Exact automorphism group by pruned backtracking, for n <= 12.

    Builds a stabilizer chain directly: for each prefix length it searches
    one automorphism per reachable image of the next point.
    """
    if g.n > _BRUTE_LIMIT:
        raise ValueError("graph too large for the brute-force oracle")
    coloring = coloring if coloring is not None else Coloring.trivial(g.n)
    n = g.n
    if n == 0:
        return PermGroup(0)

    def search(prefix_fix: int, target: int) -> Optional[Perm]:
        """One automorphism fixing 0..prefix_fix-1 and moving prefix_fix
        to target, or None."""
        images = [-1] * n
        used = [False] * n

        def consistent(v, w):
            if coloring.class_of[v] != coloring.class_of[w]:
                return False
            if g.degree(v) != g.degree(w):
                return False
            for u in range(n):
                if images[u] == -1 or u == v:
                    continue
                if g.has_edge(u, v) != g.has_edge(images[u], w):
                    return False
            return True

        def assign(v, w):
            images[v] = w
            used[w] = True

        for v in range(prefix_fix):
            if not consistent(v, v) or used[v]:
                return None
            assign(v, v)
        if used[target] or not consistent(prefix_fix, target):
            return None
        assign(prefix_fix, target)

        def rec(v):
            if v == n:
                return Perm(images)
            if images[v] != -1:
                return rec(v + 1)
            for w in range(n):
                if used[w] or not consistent(v, w):
                    continue
                assign(v, w)
                out = rec(v + 1)
                if out is not None:
                    return out
                images[v] = -1
                used[w] = False
            return None

        return rec(0)

    gens: list[Perm] = []
    for v in range(n):
        group = group_from_generators(gens, degree=n) if gens \
            else PermGroup(n)
        stab = group.pointwise_stabilizer(list(range(v)))
        reached = stab.orbit(v)
        for w in range(n):
            if w == v or w in reached:
                continue
            p = search(v, w)
            if p is not None:
                gens.append(p)
                stab = group_from_generators(
                    gens, degree=n).pointwise_stabilizer(list(range(v)))
                reached = stab.orbit(v)
    return group_from_generators(gens, degree=n) if gens else PermGroup(n)


def brute_hyper_iso(h1: OrderKHypergraph, h2: OrderKHypergraph,
                    limit: int = 10 ** 6) -> list[Perm]:
    """All color-preserving hypergraph isomorphisms by exhaustive
    class-respecting enumeration."""
    if h1.n != h2.n or h1.coloring.size() != h2.coloring.size():
        return []
    c1 = h1.coloring.classes
    c2 = h2.coloring.classes
    if [len(c) for c in c1] != [len(c) for c in c2]:
        return []
    total = 1
    for cls in c1:
        for i in range(2, len(cls) + 1):
            total *= i
        if total > limit:
            raise ValueError("class factorial bound exceeded")
    out = []
    per_class = [itertools.permutations(sorted(d)) for d in c2]
    sources = [sorted(c) for c in c1]
    for combo in itertools.product(*per_class):
        images = [0] * h1.n
        for src, dst in zip(sources, combo):
            for a, b in zip(src, dst):
                images[a] = b
        p = Perm(images)
        mapped = {}
        ok = True
        for e, c in h1.edges.items():
            me = relabel_edge(e, p.images.__getitem__)
            if me not in h2.edges or h2.edges[me] != c:
                ok = False
                break
            mapped[me] = c
        if ok and len(mapped) == len(h2.edges):
            out.append(p)
    return out


def random_hypergraph(rng: random.Random, n: int, k: int,
                      max_class: int = 3, n_edges: Optional[int] = None,
                      n_colors: int = 2) -> OrderKHypergraph:
    """Random colored hypergraph of order <= k with bounded classes."""
    verts = list(range(n))
    rng.shuffle(verts)
    class_of = [0] * n
    cid = 0
    while verts:
        take = rng.randint(1, min(max_class, len(verts)))
        for v in verts[:take]:
            class_of[v] = cid
        verts = verts[take:]
        cid += 1
    coloring = Coloring.by_key(class_of)

    def rand_edge(depth: int) -> int:
        if depth <= 1:
            size = rng.randint(1, min(3, n))
            return edge_of_vertices(rng.sample(range(n), size))
        width = rng.randint(1, 3)
        return nested(rand_edge(depth - 1 if rng.random() < 0.8
                                else rng.randint(1, depth - 1))
                      for _ in range(width))

    if n_edges is None:
        n_edges = rng.randint(1, 5)
    edges = {}
    for _ in range(n_edges):
        e = rand_edge(k)
        edges[e] = ("c", rng.randrange(n_colors))
    return OrderKHypergraph(n, coloring, edges, k)
