"""Automorphism groups of chordal graphs via the critical-set pipeline.

The computation refines a stable coloring until the critical core (the
union of color classes inducing few cliques) has only interval closures
hanging off it, encodes the core's cross-twin structure and the hanging
components as one colored order-3 hypergraph, computes that hypergraph's
automorphisms with the bounded-class engine, and lifts the generators back
to graph automorphisms.  A twin quotient reduces the general case to the
twinless one, and isomorphism testing reduces to automorphisms of a
disjoint union.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import (
    NonCriticalDeadlock,
    NotChordalError,
    StructuralError,
)
from .graphs import (
    Coloring,
    Graph,
    boundary_and_closure,
    components,
    components_of_subset,
    disjoint_union,
    induced_subgraph,
    is_automorphism,
    is_chordal,
    is_interval,
    is_isomorphism,
    twin_classes,
)
from .hyper import (
    OrderKHypergraph,
    atom,
    atom_vertex,
    children,
    ckey,
    compose,
    edge_of_vertices,
    is_atom,
    nested,
    relabel_edge,
)
from .interval import (
    BoundaryHypergraph,
    aut_colored_interval,
    boundary_hypergraph,
    canonical_tree,
    lift_boundary_iso,
)
from .hyperiso import aut_hypergraph
from .perm import Perm, PermGroup, group_from_generators
from .wl import wl_refine


# -- critical core -------------------------------------------------------------


@dataclass(frozen=True)
class CriticalState:
    coloring: Coloring
    core: frozenset
    threshold: int
    iterations: int


def _core_of(g: Graph, pi: Coloring, threshold: int) -> frozenset:
    out = set()
    for cls in pi.classes:
        if len(components_of_subset(g, cls)) <= threshold:
            out |= cls
    return frozenset(out)


def _bad_components(g: Graph, core: frozenset) -> list[frozenset]:
    """Components of the complement whose closures are not interval."""
    rest = sorted(set(range(g.n)) - core)
    bad = []
    for comp in components_of_subset(g, rest):
        _, view = boundary_and_closure(g, comp)
        if not is_interval(view.graph):
            bad.append(comp)
    return bad


def _is_clique(g: Graph, vertices) -> bool:
    vs = sorted(vertices)
    return all(g.has_edge(u, v) for i, u in enumerate(vs)
               for v in vs[i + 1:])


def refine_noncritical(g: Graph, pi: Coloring, core: frozenset,
                       bad: Sequence[frozenset],
                       threshold: int) -> Coloring:
    """One refinement step of the critical-core loop.

    Among the color classes that meet a non-interval-closure component in a
    complete subgraph, splits the first (smallest color id) class whose
    invariant sub-union is proper.  Raises NonCriticalDeadlock when no
    candidate splits, which signals that the threshold is below the true
    leafage.
    """
    if not bad:
        raise ValueError("refine requires a non-critical state")
    candidate_colors = set()
    for comp in bad:
        sub = pi.induce(sorted(comp))
        verts = sorted(comp)
        for cls in sub.classes:
            members = [verts[i] for i in cls]
            if _is_clique(g, members):
                candidate_colors.add(pi.class_of[members[0]])
    for color in sorted(candidate_colors):
        gamma = pi.classes[color]
        gamma0 = set()
        for comp in bad:
            hit = gamma & comp
            if hit and _is_clique(g, hit):
                gamma0 |= hit
        if gamma0 and gamma0 != set(gamma):
            new_ids = []
            for v in range(g.n):
                c = pi.class_of[v]
                if c == color:
                    new_ids.append((c, 0 if v in gamma0 else 1))
                else:
                    new_ids.append((c, 0))
            return Coloring.by_key(new_ids)
    raise NonCriticalDeadlock(threshold)


def critical_loop(g: Graph, pi0: Coloring, threshold: int) -> CriticalState:
    """Refine to a stable coloring whose core is critical.

    Every component hanging off the returned core has an interval closure.
    The loop performs at most n strict refinements.
    """
    if threshold < 1:
        raise ValueError("threshold must be >= 1")
    pi, _ = wl_refine(g, pi0)
    iterations = 0
    while True:
        core = _core_of(g, pi, threshold)
        bad = _bad_components(g, core)
        if not bad:
            return CriticalState(pi, core, threshold, iterations)
        split = refine_noncritical(g, pi, core, bad, threshold)
        refined, _ = wl_refine(g, split)
        if refined.size() <= pi.size():
            raise StructuralError("refinement failed to make progress")
        pi = refined
        iterations += 1
        if iterations > g.n:
            raise StructuralError("critical loop exceeded its bound")


# -- core hypergraph -------------------------------------------------------------


def _cross_twin_classes(g: Graph, delta: Sequence[int],
                        gamma: Sequence[int], same: bool) -> list[frozenset]:
    """Partition of ``delta`` into twin classes of the bipartite-restricted
    graph between ``delta`` and ``gamma``."""
    gamma_set = frozenset(gamma)
    groups: dict = {}
    if not same:
        for d in sorted(delta):
            key = frozenset(g.adj[d] & gamma_set)
            groups.setdefault(key, []).append(d)
    else:
        sig = {d: g.adj[d] & gamma_set for d in delta}
        classes: list[list[int]] = []
        for d in sorted(delta):
            placed = False
            for cls in classes:
                r = cls[0]
                if (sig[r] - {d}) == (sig[d] - {r}):
                    cls.append(d)
                    placed = True
                    break
            if not placed:
                classes.append([d])
        # runtime transitivity verification
        for cls in classes:
            for i, a in enumerate(cls):
                for b in cls[i + 1:]:
                    if (sig[a] - {b}) != (sig[b] - {a}):
                        raise StructuralError(
                            "cross-twin relation not transitive")
        return [frozenset(c) for c in classes]
    return [frozenset(groups[k]) for k in sorted(groups, key=sorted)]


@dataclass
class CoreHypergraph:
    """Order-1 hypergraph encoding the cross-twin structure of the core.

    Vertices are cross-twin classes, one copy per (class, other-class)
    pair; one hyperedge per core vertex (its classes across all pairs) and
    one per core edge.  ``injection`` maps each core vertex to its
    vertex-edge id.
    """

    hypergraph: OrderKHypergraph
    vertex_info: list            # dense id -> (delta color, gamma color, members)
    injection: dict              # core vertex -> edge id
    max_class_size: int


def core_hypergraph(g: Graph, pi: Coloring,
                    core: frozenset) -> CoreHypergraph:
    core_classes = [c for c, cls in enumerate(pi.classes)
                    if cls <= core and cls]
    all_classes = list(range(pi.size()))
    vertices: list[tuple] = []
    vid: dict = {}
    member_class: dict = {}
    for dc in core_classes:
        delta = sorted(pi.classes[dc])
        for gc in all_classes:
            gamma = sorted(pi.classes[gc])
            parts = _cross_twin_classes(g, delta, gamma, same=(dc == gc))
            for part in sorted(parts, key=sorted):
                idx = len(vertices)
                vertices.append((dc, gc, part))
                vid[(dc, gc, part)] = idx
                for v in part:
                    member_class[(v, gc)] = idx
    coloring = Coloring.by_key([(dc, gc) for dc, gc, _ in vertices])
    max_cls = max((len(c) for c in coloring.classes), default=0)

    edges: dict = {}
    injection: dict = {}
    for alpha in sorted(core):
        members = [member_class[(alpha, gc)] for gc in all_classes]
        e = edge_of_vertices(members)
        if e in edges and edges[e] == ("vov",):
            raise StructuralError(
                "core vertex hyperedges collide: twins inside a class")
        edges[e] = ("vov",)
        injection[alpha] = e
    for u, v in g.edges():
        if u in core and v in core:
            eu = member_class[(u, pi.class_of[v])]
            ev = member_class[(v, pi.class_of[u])]
            e = edge_of_vertices({eu, ev})
            if e in edges and edges[e] == ("vov",):
                raise StructuralError("vertex and adjacency edges collide")
            edges[e] = ("eov",)
    h = OrderKHypergraph(len(vertices), coloring, edges, 1)
    return CoreHypergraph(h, vertices, injection, max_cls)


# -- fringe hypergraph ------------------------------------------------------------


@dataclass
class FringeHypergraph:
    """Order-2 hypergraph on the core describing the hanging components.

    First-level edges are the boundary hyperedges of the per-component
    boundary hypergraphs (colors: multiset of per-component colors);
    second-level edges are the per-equivalence-class edge sets (colors:
    closure isomorphism class code plus the class cardinality).
    """

    hypergraph: OrderKHypergraph          # on dense core indices
    core_vertices: tuple                   # dense index -> ambient vertex
    core_index: dict                       # ambient vertex -> dense index
    boundaries: dict                       # component -> BoundaryHypergraph
    sim_classes: list                      # list of lists of components
    class_of_component: dict               # component -> class idx
    edge_of_class: dict                    # class idx -> order-2 edge id
    level1_sets: dict                      # edge id -> frozenset (ambient)


def fringe_hypergraph(g: Graph, pi: Coloring,
                      core: frozenset) -> FringeHypergraph:
    core_vertices = tuple(sorted(core))
    core_index = {v: i for i, v in enumerate(core_vertices)}
    rest = sorted(set(range(g.n)) - core)
    comps = components_of_subset(g, rest)

    boundaries: dict = {}
    for comp in comps:
        boundaries[comp] = boundary_hypergraph(g, pi, comp)

    by_content: dict = {}
    for comp in comps:
        by_content.setdefault(boundaries[comp].content_key(),
                              []).append(comp)
    sim_classes = [by_content[k]
                   for k in sorted(by_content,
                                   key=lambda k: min(tuple(sorted(c))
                                                     for c in by_content[k]))]
    class_of_component = {}
    for i, cls in enumerate(sim_classes):
        for comp in cls:
            class_of_component[comp] = i

    # first-level edges: union of the per-component boundary edge sets
    level1_colors: dict = {}
    for comp in comps:
        for eset, color in boundaries[comp].edges.items():
            level1_colors.setdefault(eset, []).append(color)
    edges: dict = {}
    level1_sets: dict = {}
    for eset in sorted(level1_colors, key=sorted):
        eid = edge_of_vertices(core_index[v] for v in eset)
        edges[eid] = ("f1", tuple(sorted(level1_colors[eset], key=ckey)))
        level1_sets[eid] = eset

    # second-level edges: one per similarity class
    edge_of_class: dict = {}
    for i, cls in enumerate(sim_classes):
        rep = cls[0]
        hy = boundaries[rep]
        member_ids = [edge_of_vertices(core_index[v] for v in eset)
                      for eset in hy.edges]
        e2 = nested(member_ids)
        if e2 in edge_of_class.values():
            raise StructuralError(
                "distinct component classes share an edge structure")
        edges[e2] = ("f2", ckey(hy.tree.code), len(cls))
        edge_of_class[i] = e2
    coloring = pi.induce(core_vertices) if core_vertices else Coloring([])
    h = OrderKHypergraph(len(core_vertices), coloring, edges, 2)
    return FringeHypergraph(h, core_vertices, core_index, boundaries,
                            sim_classes, class_of_component, edge_of_class,
                            level1_sets)


def fringe_kernel(g: Graph, pi: Coloring, core: frozenset) -> PermGroup:
    """Automorphisms fixing the core pointwise, as a group on all vertices.

    Works on the interval subgraph induced by the complement, colored by
    (class, core attachment)."""
    rest = sorted(set(range(g.n)) - core)
    if not rest:
        return PermGroup(g.n)
    view = induced_subgraph(g, rest)
    if not is_interval(view.graph):
        raise StructuralError("fringe subgraph is not interval")
    labels = []
    for i in range(view.graph.n):
        v = view.to_parent(i)
        attachment = tuple(sorted(g.adj[v] & core))
        labels.append(("k", pi.class_of[v], attachment))
    tree = canonical_tree(view.graph, labels=labels)
    gens = []
    for p in tree.aut_generators():
        images = list(range(g.n))
        for i in range(view.graph.n):
            images[view.to_parent(i)] = view.to_parent(p(i))
        q = Perm(images)
        if not is_automorphism(g, q):
            raise StructuralError("kernel generator is not an automorphism")
        gens.append(q)
    return group_from_generators(gens, degree=g.n) if gens \
        else PermGroup(g.n)


def lift_core_automorphism(g: Graph, pi: Coloring,
                           fringe: FringeHypergraph,
                           sigma: dict) -> Perm:
    """Extend a core permutation that preserves the fringe hypergraph to an
    automorphism of the graph with the core-internal edges removed."""
    # verify sigma is a fringe-hypergraph automorphism
    perm_local = [0] * len(fringe.core_vertices)
    for v, w in sigma.items():
        perm_local[fringe.core_index[v]] = fringe.core_index[w]
    h = fringe.hypergraph
    if sorted(sigma) != list(fringe.core_vertices) or \
            sorted(sigma.values()) != list(fringe.core_vertices):
        raise StructuralError("core bijection domain mismatch")
    mapped = {}
    for e, c in h.edges.items():
        me = relabel_edge(e, perm_local.__getitem__)
        if h.edges.get(me) != c:
            raise StructuralError(
                "core permutation does not preserve the fringe hypergraph")
        mapped[me] = c
    for i in range(h.n):
        if h.coloring.class_of[i] != h.coloring.class_of[perm_local[i]]:
            raise StructuralError("core permutation breaks vertex colors")

    # match components class by class
    images = list(range(g.n))
    for v, w in sigma.items():
        images[v] = w
    for i, cls in enumerate(fringe.sim_classes):
        e2 = fringe.edge_of_class[i]
        me2 = relabel_edge(e2, perm_local.__getitem__)
        target = None
        for j, e in fringe.edge_of_class.items():
            if e == me2:
                target = j
                break
        if target is None:
            raise StructuralError("component class image missing")
        targets = fringe.sim_classes[target]
        if len(cls) != len(targets):
            raise StructuralError("component class sizes differ")
        for comp, comp2 in zip(sorted(cls, key=sorted),
                               sorted(targets, key=sorted)):
            hy1 = fringe.boundaries[comp]
            hy2 = fringe.boundaries[comp2]
            gbar = {v: sigma[v] for v in hy1.boundary}
            lifted = lift_boundary_iso(hy1, hy2, gbar)
            for v in sorted(comp):
                images[v] = lifted[v]
    p = Perm(images)
    return p


# -- main algorithm ------------------------------------------------------------


def _colored_twinless(g: Graph, pi: Coloring) -> bool:
    from .graphs import are_twins

    for cls in pi.classes:
        cls = sorted(cls)
        for i, a in enumerate(cls):
            for b in cls[i + 1:]:
                if are_twins(g, a, b):
                    return False
    return True


def main_aut_twinless(g: Graph, pi0: Coloring, threshold: int) -> PermGroup:
    """Automorphism group of a chordal graph with no same-color twins."""
    if g.n == 0:
        return PermGroup(0)
    if not _colored_twinless(g, pi0):
        raise StructuralError("input has twins inside a color class")
    state = critical_loop(g, pi0, threshold)
    pi = state.coloring
    core = state.core
    if not core:
        return aut_colored_interval(g, pi0)
    ch = core_hypergraph(g, pi, core)
    fh = fringe_hypergraph(g, pi, core)

    # compose: second hypergraph lives on the core hypergraph's edges
    h1 = ch.hypergraph
    edge_ids = sorted(h1.edges)
    pos_of_edge = {e: i for i, e in enumerate(edge_ids)}
    f_pos = {alpha: pos_of_edge[e] for alpha, e in ch.injection.items()}

    def transport_fringe_edge(e: int) -> int:
        if is_atom(e):
            ambient = fh.core_vertices[atom_vertex(e)]
            return atom(f_pos[ambient])
        return nested(transport_fringe_edge(c) for c in children(e))

    h2_edges = {}
    for e, c in fh.hypergraph.edges.items():
        h2_edges[transport_fringe_edge(e)] = c
    h2 = OrderKHypergraph(len(edge_ids), Coloring.trivial(len(edge_ids)),
                          h2_edges, 2)
    composed = compose(h1, h2, edge_ids)
    group = aut_hypergraph(composed)

    kernel = fringe_kernel(g, pi, core)
    gens = list(kernel.generators())
    inv_injection = {e: alpha for alpha, e in ch.injection.items()}
    for gbar in group.generators():
        sigma = {}
        for alpha in sorted(core):
            image_edge = relabel_edge(ch.injection[alpha], gbar.images)
            beta = inv_injection.get(image_edge)
            if beta is None:
                raise StructuralError(
                    "hypergraph automorphism moved a vertex edge outside "
                    "the injection image")
            sigma[alpha] = beta
        lifted = lift_core_automorphism(g, pi, fh, sigma)
        if not is_automorphism(g, lifted, pi0):
            raise StructuralError(
                "lifted generator fails automorphism verification")
        gens.append(lifted)
    return group_from_generators(gens, degree=g.n) if gens \
        else PermGroup(g.n)


@dataclass(frozen=True)
class TwinQuotient:
    graph: Graph
    coloring: Coloring
    classes: tuple       # quotient vertex -> frozenset of original vertices


def twin_quotient(g: Graph, pi0: Coloring) -> TwinQuotient:
    """Quotient by same-color twin classes, colored by isomorphism type."""
    tc = twin_classes(g)
    refined: list[frozenset] = []
    for cls in tc.classes:
        by_color: dict = {}
        for v in cls:
            by_color.setdefault(pi0.class_of[v], set()).add(v)
        refined.extend(frozenset(s) for s in by_color.values())
    refined.sort(key=min)
    index = {}
    for i, cls in enumerate(refined):
        for v in cls:
            index[v] = i
    edges = set()
    for u, v in g.edges():
        if index[u] != index[v]:
            edges.add((min(index[u], index[v]), max(index[u], index[v])))
    quotient = Graph(len(refined), edges)
    keys = []
    for cls in refined:
        members = sorted(cls)
        if len(members) == 1:
            kind = "1"
        elif g.has_edge(members[0], members[1]):
            kind = "k"
        else:
            kind = "e"
        keys.append((len(members), kind, pi0.class_of[members[0]]))
    return TwinQuotient(quotient, Coloring.by_key(keys), tuple(refined))


def aut(g: Graph, coloring: Optional[Coloring] = None,
        leafage_bound: Optional[int] = None) -> PermGroup:
    """Generating set of the automorphism group of a colored chordal graph.

    Without an explicit bound the leafage threshold is deepened (2, 4,
    8, ...) until the critical-core loop completes; thresholds at or above
    the true leafage never deadlock.  Twin classes are quotiented away
    first; the quotient can create new twins, so the reduction recurses
    until it is twin-free.
    """
    if not is_chordal(g):
        raise NotChordalError("input graph is not chordal")
    if g.n == 0:
        return PermGroup(0)
    pi0 = coloring if coloring is not None else Coloring.trivial(g.n)

    quotient = twin_quotient(g, pi0)
    if quotient.graph.n == g.n:
        if leafage_bound is not None:
            return main_aut_twinless(g, pi0, leafage_bound)
        threshold = 2
        while True:
            try:
                return main_aut_twinless(g, pi0, threshold)
            except NonCriticalDeadlock:
                threshold *= 2

    gens: list[Perm] = []
    for cls in quotient.classes:
        members = sorted(cls)
        for a, b in zip(members, members[1:]):
            gens.append(Perm.from_cycles(g.n, [(a, b)]))

    qgroup = aut(quotient.graph, quotient.coloring, leafage_bound)

    for gq in qgroup.generators():
        images = list(range(g.n))
        for i, cls in enumerate(quotient.classes):
            target = quotient.classes[gq(i)]
            for a, b in zip(sorted(cls), sorted(target)):
                images[a] = b
        lifted = Perm(images)
        if not is_automorphism(g, lifted, pi0):
            raise StructuralError("quotient lift fails verification")
        gens.append(lifted)
    return group_from_generators(gens, degree=g.n) if gens \
        else PermGroup(g.n)


def aut_with_threshold_used(g: Graph, coloring: Optional[Coloring] = None,
                            leafage_bound: Optional[int] = None
                            ) -> tuple[PermGroup, int]:
    """Like :func:`aut` but also reports the threshold that completed."""
    if leafage_bound is not None:
        return aut(g, coloring, leafage_bound), leafage_bound
    threshold = 2
    while True:
        try:
            return aut(g, coloring, threshold), threshold
        except NonCriticalDeadlock:
            threshold *= 2


def _iso_connected(g: Graph, h: Graph) -> Optional[Perm]:
    """Isomorphism of two connected chordal graphs via the automorphism
    group of their disjoint union."""
    if g.n != h.n or g.edge_count() != h.edge_count():
        return None
    if g.n == 0:
        return Perm([])
    union = disjoint_union(g, h)
    group = aut(union)
    targets = [t for t in group.orbit(0) if t >= g.n]
    if not targets:
        return None
    mover = group.transversal_to(0, targets[0])
    if mover is None:
        return None
    images = []
    for v in range(g.n):
        w = mover(v)
        if w < g.n:
            return None
        images.append(w - g.n)
    p = Perm(images)
    if not is_isomorphism(g, h, p):
        raise StructuralError("disjoint-union witness failed verification")
    return p


def iso(g: Graph, h: Graph) -> Optional[Perm]:
    """Some isomorphism between two chordal graphs, or None.

    Disconnected inputs are matched component by component; every
    certificate is verified edgewise before being returned.
    """
    if not is_chordal(g) or not is_chordal(h):
        raise NotChordalError("isomorphism testing requires chordal inputs")
    if g.n != h.n or g.edge_count() != h.edge_count():
        return None
    comps_g = components(g)
    comps_h = components(h)
    if len(comps_g) != len(comps_h):
        return None
    if len(comps_g) <= 1:
        return _iso_connected(g, h)
    views_g = [induced_subgraph(g, c) for c in comps_g]
    views_h = [induced_subgraph(h, c) for c in comps_h]
    used = [False] * len(views_h)
    images = [0] * g.n
    for vg in views_g:
        placed = False
        for j, vh in enumerate(views_h):
            if used[j] or vh.graph.n != vg.graph.n:
                continue
            p = _iso_connected(vg.graph, vh.graph)
            if p is not None:
                used[j] = True
                for i in range(vg.graph.n):
                    images[vg.to_parent(i)] = vh.to_parent(p(i))
                placed = True
                break
        if not placed:
            return None
    p = Perm(images)
    if not is_isomorphism(g, h, p):
        raise StructuralError("component matching failed verification")
    return p
