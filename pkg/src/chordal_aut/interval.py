"""Canonical rooted colored trees for interval graphs, their automorphisms,
boundary hypergraphs of interval closures, and lifting of boundary
isomorphisms back to graph isomorphisms.

The tree is built from the maximal-clique incidence structure: clique
columns are grouped by the laminar family of vertex clique-sets together
with the overlap classes, whose atomic segments are rigid up to reversal.
Rigid segments become a two-arm gadget whose only symmetry beyond the
subtree symmetries is the simultaneous arm swap, so plain color-preserving
isomorphisms of the rooted tree restricted to the leaves are exactly the
colored-graph isomorphisms.  This canonicity contract is enforced by
oracle tests rather than assumed.
"""

from __future__ import annotations

from typing import Iterator, Optional, Sequence

from .errors import NotIntervalError, StructuralError
from .graphs import (
    Coloring,
    Graph,
    InducedView,
    boundary_and_closure,
    components,
    induced_subgraph,
    is_interval,
    maximal_cliques_chordal,
)
from .hyper import ckey
from .perm import Perm, PermGroup, group_from_generators


class TreeNode:
    __slots__ = ("kind", "payload", "children", "vertex", "code", "parent")

    def __init__(self, kind: str, payload=(), children=(),
                 vertex: Optional[int] = None):
        self.kind = kind
        self.payload = payload
        self.children: list[TreeNode] = list(children)
        self.vertex = vertex
        self.code = None
        self.parent: Optional[TreeNode] = None

    def is_leaf(self) -> bool:
        return self.vertex is not None

    def __repr__(self) -> str:
        if self.is_leaf():
            return f"Leaf({self.vertex})"
        return f"TreeNode({self.kind}, {len(self.children)} children)"


def _assign_codes(node: TreeNode) -> tuple:
    if node.is_leaf():
        node.code = ("v", node.payload)
        return node.code
    child_codes = sorted((_assign_codes(c) for c in node.children), key=ckey)
    node.code = (node.kind, node.payload, tuple(child_codes))
    return node.code


def _set_parents(node: TreeNode) -> None:
    for c in node.children:
        c.parent = node
        _set_parents(c)


def _sorted_children(node: TreeNode) -> list[TreeNode]:
    return sorted(node.children, key=lambda c: (ckey(c.code), _min_leaf(c)))


def _min_leaf(node: TreeNode) -> int:
    if node.is_leaf():
        return node.vertex
    return min((_min_leaf(c) for c in node.children), default=-1)


def _leaf_sequence(node: TreeNode) -> list[int]:
    if node.is_leaf():
        return [node.vertex]
    out: list[int] = []
    for c in _sorted_children(node):
        out.extend(_leaf_sequence(c))
    return out


def _all_nodes(node: TreeNode) -> Iterator[TreeNode]:
    yield node
    for c in node.children:
        yield from _all_nodes(c)


# -- consecutive arrangement machinery ----------------------------------------


def _order_segment_cells(member_sets: list[frozenset],
                         classes: list[list[int]],
                         n_parts: int) -> list[int]:
    """Order the atomic parts of one rigid span.

    ``member_sets``: each member as a frozenset of part indices;
    ``classes``: overlap classes as lists of member indices (processed
    class by class, BFS inside a class over proper overlaps).
    Returns the part indices in consecutive order (unique up to reversal).
    """
    cells: list[set[int]] = []
    placed: set[int] = set()

    def insert(mparts: frozenset) -> None:
        nonlocal cells, placed
        if not cells:
            cells = [set(mparts)]
            placed |= mparts
            return
        inter = mparts & placed
        new = set(mparts) - placed
        if not inter:
            raise StructuralError("segment member lost overlap connectivity")
        status = []
        for cell in cells:
            hit = cell & mparts
            if not hit:
                status.append("out")
            elif hit == cell:
                status.append("full")
            else:
                status.append("part")
        touched = [i for i, s in enumerate(status) if s != "out"]
        if touched != list(range(touched[0], touched[-1] + 1)):
            raise StructuralError("not consecutively arrangeable")
        lo, hi = touched[0], touched[-1]
        if any(s != "full" for s in status[lo + 1:hi]):
            raise StructuralError("not consecutively arrangeable")
        if new:
            # must stick out at one end of the whole sequence
            if lo == 0 and status[hi] in ("full", "part") and \
                    all(s == "full" for s in status[:hi]):
                split = None
                if status[hi] == "part":
                    cell = cells[hi]
                    split = (cell & mparts, cell - mparts)
                new_cells = [set(new)] + cells[:hi]
                if split:
                    new_cells += [split[0], split[1]]
                else:
                    new_cells += [cells[hi]]
                new_cells += cells[hi + 1:]
                cells = new_cells
            elif hi == len(cells) - 1 and all(
                    s == "full" for s in status[lo + 1:]) and \
                    status[lo] in ("full", "part"):
                split = None
                if status[lo] == "part":
                    cell = cells[lo]
                    split = (cell - mparts, cell & mparts)
                new_cells = cells[:lo]
                if split:
                    new_cells += [split[0], split[1]]
                else:
                    new_cells += [cells[lo]]
                new_cells += cells[lo + 1:] + [set(new)]
                cells = new_cells
            else:
                raise StructuralError("not consecutively arrangeable")
            placed |= mparts
        else:
            # internal window: split partial boundary cells outward
            new_cells = cells[:lo]
            if status[lo] == "part":
                cell = cells[lo]
                new_cells += [cell - mparts, cell & mparts]
            else:
                new_cells += [cells[lo]]
            new_cells += cells[lo + 1:hi]
            if hi != lo:
                if status[hi] == "part":
                    cell = cells[hi]
                    new_cells += [cell & mparts, cell - mparts]
                else:
                    new_cells += [cells[hi]]
            new_cells += cells[hi + 1:]
            cells = [c for c in new_cells if c]

    for cls in classes:
        # BFS over proper overlaps inside the class
        todo = set(cls)
        if not todo:
            continue
        start = min(todo, key=lambda i: sorted(member_sets[i]))
        queue = [start]
        todo.discard(start)
        insert(member_sets[start])
        while queue:
            cur = queue.pop(0)
            hits = [j for j in sorted(todo)
                    if member_sets[j] & member_sets[cur]
                    and not member_sets[j] <= member_sets[cur]
                    and not member_sets[cur] <= member_sets[j]]
            for j in hits:
                todo.discard(j)
                insert(member_sets[j])
                queue.append(j)
        if todo:
            # members overlapping earlier classes only: insert directly
            for j in sorted(todo):
                insert(member_sets[j])
    order: list[int] = []
    for cell in cells:
        if len(cell) != 1:
            raise StructuralError("segment parts not fully separated")
        order.extend(cell)
    if len(order) != n_parts:
        raise StructuralError("segment ordering lost parts")
    return order


class _Span:
    """One rigid span: its ordered parts and the member runs."""

    __slots__ = ("columns", "parts", "member_runs")

    def __init__(self, columns: frozenset, parts: list[frozenset],
                 member_runs: dict):
        self.columns = columns
        self.parts = parts
        self.member_runs = member_runs  # member column-set -> (i, j) 1-based


def _build_spans(constraints: list[frozenset]) -> dict:
    """Group properly-overlapping constraint sets into rigid spans.

    Returns span column-set -> _Span.
    """
    m = len(constraints)
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(m):
        for j in range(i + 1, m):
            a, b = constraints[i], constraints[j]
            if a & b and not a <= b and not b <= a:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(m):
        if any(constraints[i] & constraints[j]
               and not constraints[i] <= constraints[j]
               and not constraints[j] <= constraints[i]
               for j in range(m) if j != i):
            groups.setdefault(find(i), []).append(i)
    by_span: dict[frozenset, list[list[int]]] = {}
    for members in groups.values():
        span = frozenset().union(*(constraints[i] for i in members))
        by_span.setdefault(span, []).append(members)
    spans: dict[frozenset, _Span] = {}
    for span, classes in by_span.items():
        all_members = sorted({i for cls in classes for i in cls})
        # atomic parts: columns grouped by their membership vector
        vec: dict[int, tuple] = {}
        for c in span:
            vec[c] = tuple(c in constraints[i] for i in all_members)
        part_map: dict[tuple, list[int]] = {}
        for c in sorted(span):
            part_map.setdefault(vec[c], []).append(c)
        parts = [frozenset(v) for v in part_map.values()]
        part_index = {c: i for i, p in enumerate(parts) for c in p}
        member_parts = [frozenset(part_index[c] for c in constraints[i])
                        if i in all_members else frozenset()
                        for i in range(m)]
        order = _order_segment_cells(member_parts, classes, len(parts))
        ordered_parts = [parts[i] for i in order]
        pos = {p: i + 1 for i, p in enumerate(order)}
        runs: dict[frozenset, tuple[int, int]] = {}
        for cls in classes:
            for i in cls:
                covered = sorted(pos[p] for p in member_parts[i])
                if covered != list(range(covered[0], covered[-1] + 1)):
                    raise StructuralError("member run is not consecutive")
                runs[constraints[i]] = (covered[0], covered[-1])
        spans[span] = _Span(span, ordered_parts, runs)
    return spans


def _connected_interval_tree(g: Graph, labels: Sequence) -> TreeNode:
    """Canonical tree of one connected interval graph."""
    cliques = maximal_cliques_chordal(g)
    q = len(cliques)
    columns = frozenset(range(q))
    clique_sets = [frozenset(c) for c in cliques]
    col_sets: dict[int, frozenset] = {}
    for v in range(g.n):
        s = frozenset(i for i, c in enumerate(clique_sets) if v in c)
        if not s:
            raise StructuralError("vertex missing from every maximal clique")
        col_sets[v] = s
    distinct = sorted(set(col_sets.values()), key=lambda s: sorted(s))
    constraints = [s for s in distinct if 1 < len(s) < q]
    spans = _build_spans(constraints)

    # laminar family: full set, spans, members not in any span run,
    # every part, every column
    run_members = set()
    for span in spans.values():
        run_members |= set(span.member_runs)
    lam_sets = {columns}
    lam_sets |= set(spans.keys())
    lam_sets |= {s for s in distinct if s not in run_members}
    for span in spans.values():
        lam_sets |= set(span.parts)
    lam_sets |= {frozenset({c}) for c in range(q)}

    ordered = sorted(lam_sets, key=lambda s: (-len(s), sorted(s)))
    parent_of: dict[frozenset, Optional[frozenset]] = {}
    for i, s in enumerate(ordered):
        parent = None
        for t in reversed(ordered[:i]):
            if s < t:
                if len(t) < (len(parent) if parent else q + 1):
                    parent = t
        parent_of[s] = parent
        if parent is None and s != columns:
            raise StructuralError("laminar family has two maximal sets")
    kids: dict[frozenset, list[frozenset]] = {s: [] for s in ordered}
    for s, p in parent_of.items():
        if p is not None:
            kids[p].append(s)

    anchors: dict[frozenset, list[int]] = {}
    run_anchor: dict[tuple, list[int]] = {}
    for v in range(g.n):
        s = col_sets[v]
        if s in lam_sets:
            anchors.setdefault(s, []).append(v)
        else:
            owner = None
            for span_set, span in spans.items():
                if s in span.member_runs:
                    owner = (span_set, span.member_runs[s])
                    break
            if owner is None:
                raise StructuralError("vertex clique set has no anchor")
            run_anchor.setdefault(owner, []).append(v)

    def expand(s: frozenset) -> TreeNode:
        child_nodes = []
        for v in sorted(anchors.get(s, ())):
            child_nodes.append(TreeNode("leaf", payload=labels[v], vertex=v))
        span = spans.get(s)
        if span is None:
            for t in sorted(kids[s], key=lambda x: sorted(x)):
                child_nodes.append(expand(t))
            return TreeNode("set", payload=(), children=child_nodes)
        # rigid span: two-arm gadget over the ordered parts
        k = len(span.parts)
        part_nodes = {}
        kid_set = set(kids[s])
        for idx, part in enumerate(span.parts, start=1):
            if part not in kid_set:
                raise StructuralError("span part missing from laminar tree")
            part_nodes[idx] = expand(part)
        half = k // 2
        q_children = list(child_nodes)

        def arm(indices: list[int]) -> Optional[TreeNode]:
            node = None
            for idx in reversed(indices):
                inner = [] if node is None else [node]
                content = [part_nodes[idx]]
                node = TreeNode("ch", payload=(),
                                children=inner + content)
            return node

        left = arm(list(range(1, half + 1)))
        right = arm([k + 1 - d for d in range(1, half + 1)])
        arm_l = TreeNode("arm", children=[left] if left else [])
        arm_r = TreeNode("arm", children=[right] if right else [])
        # run anchors
        sym_groups: dict[tuple, list[int]] = {}
        side_groups: dict[tuple, list[int]] = {}
        for (span_set, run), verts in run_anchor.items():
            if span_set != s:
                continue
            i, j = run
            mirror = (k + 1 - j, k + 1 - i)
            canon = min((i, j), mirror)
            if (i, j) == mirror:
                sym_groups.setdefault(canon, []).extend(verts)
            else:
                depth_i = min(i, k + 1 - i)
                depth_j = min(j, k + 1 - j)
                if depth_i < depth_j:
                    side = "L" if i < k + 1 - i else "R"
                    depth = depth_i
                else:
                    side = "L" if j < k + 1 - j else "R"
                    depth = depth_j
                side_groups.setdefault((side, depth, canon), []).extend(verts)
        # attach side run groups onto the chain nodes
        def chain_node(arm_node: TreeNode, depth: int) -> TreeNode:
            node = arm_node.children[0]
            for _ in range(depth - 1):
                node = next(c for c in node.children if c.kind == "ch")
            return node

        for (side, depth, canon), verts in sorted(side_groups.items()):
            grp = TreeNode("qrun", payload=canon,
                           children=[TreeNode("leaf", payload=labels[v],
                                              vertex=v)
                                     for v in sorted(verts)])
            target = chain_node(arm_l if side == "L" else arm_r, depth)
            target.children.append(grp)
        q_children.append(arm_l)
        q_children.append(arm_r)
        if k % 2 == 1:
            q_children.append(part_nodes[half + 1])
        for canon, verts in sorted(sym_groups.items()):
            q_children.append(
                TreeNode("qsym", payload=canon,
                         children=[TreeNode("leaf", payload=labels[v],
                                            vertex=v)
                                   for v in sorted(verts)]))
        return TreeNode("q", payload=(k,), children=q_children)

    root = expand(columns)
    root = _prune_empty(root)
    if root is None:
        raise StructuralError("pruned the entire tree")
    return root


def _prune_empty(node: TreeNode) -> Optional[TreeNode]:
    if node.is_leaf():
        return node
    new_children = []
    for c in node.children:
        kept = _prune_empty(c)
        if kept is not None:
            new_children.append(kept)
    if not new_children:
        return None
    node.children = new_children
    return node


class CanonicalTree:
    """Rooted colored tree whose leaves are the graph's vertices.

    Two colored interval graphs are isomorphic iff their trees have equal
    root codes, and color-preserving tree isomorphisms restricted to the
    leaves are exactly the colored-graph isomorphisms.
    """

    __slots__ = ("graph", "labels", "root", "leaf_of", "n")

    def __init__(self, graph: Graph, labels: Sequence, root: TreeNode):
        self.graph = graph
        self.labels = tuple(labels)
        self.root = root
        self.n = graph.n
        _assign_codes(root)
        _set_parents(root)
        self.leaf_of = {}
        for node in _all_nodes(root):
            if node.is_leaf():
                self.leaf_of[node.vertex] = node
        if set(self.leaf_of) != set(range(graph.n)):
            raise StructuralError("tree leaves do not match the vertex set")

    @property
    def code(self):
        return self.root.code

    def leaf_labels(self) -> tuple:
        return self.labels

    def aut_generators(self) -> list[Perm]:
        gens: list[Perm] = []
        for node in _all_nodes(self.root):
            if node.is_leaf():
                continue
            groups: dict = {}
            for c in node.children:
                groups.setdefault(ckey(c.code), []).append(c)
            for group in groups.values():
                group.sort(key=_min_leaf)
                for a, b in zip(group, group[1:]):
                    images = list(range(self.n))
                    for x, y in zip(_leaf_sequence(a), _leaf_sequence(b)):
                        images[x] = y
                        images[y] = x
                    gens.append(Perm(images))
        return gens

    def aut_group(self) -> PermGroup:
        return group_from_generators(self.aut_generators(), degree=self.n)

    def iso_leaf_map(self, other: "CanonicalTree") -> Optional[Perm]:
        """A leaf bijection realizing a tree isomorphism, or None."""
        if self.code != other.code:
            return None
        images = [0] * self.n
        for a, b in zip(_leaf_sequence(self.root),
                        _leaf_sequence(other.root)):
            images[a] = b
        return Perm(images)


def canonical_tree(g: Graph, coloring: Optional[Coloring] = None,
                   labels: Optional[Sequence] = None) -> CanonicalTree:
    """Canonical rooted colored tree of a colored interval graph.

    Leaf labels default to the coloring's class ids; explicit ``labels``
    (arbitrary orderable tokens) override them, which keeps labels
    comparable across different graphs.
    """
    if not is_interval(g):
        raise NotIntervalError("graph is not interval")
    if labels is None:
        coloring = coloring if coloring is not None else Coloring.trivial(g.n)
        labels = [("c", c) for c in coloring.class_of]
    if g.n == 0:
        return CanonicalTree(g, [], TreeNode("set"))
    comps = components(g)
    if len(comps) == 1:
        root = _connected_interval_tree(g, labels)
    else:
        subtrees = []
        for comp in comps:
            view = induced_subgraph(g, comp)
            sub_labels = [labels[view.to_parent(i)]
                          for i in range(view.graph.n)]
            sub = _connected_interval_tree(view.graph, sub_labels)
            _relabel_leaves(sub, view)
            subtrees.append(sub)
        root = TreeNode("forest", children=subtrees)
    return CanonicalTree(g, labels, root)


def _relabel_leaves(node: TreeNode, view: InducedView) -> None:
    if node.is_leaf():
        node.vertex = view.to_parent(node.vertex)
        return
    for c in node.children:
        _relabel_leaves(c, view)


def aut_colored_interval(g: Graph,
                         coloring: Optional[Coloring] = None) -> PermGroup:
    """Exact automorphism group of a vertex colored interval graph."""
    tree = canonical_tree(g, coloring)
    return tree.aut_group()


def iso_colored_interval(g1: Graph, labels1: Sequence,
                         g2: Graph, labels2: Sequence) -> Optional[Perm]:
    """Some label-preserving isomorphism between interval graphs, or None."""
    t1 = canonical_tree(g1, labels=labels1)
    t2 = canonical_tree(g2, labels=labels2)
    return t1.iso_leaf_map(t2)


# -- boundary hypergraphs -------------------------------------------------------


class BoundaryHypergraph:
    """Hypergraph on the boundary of an interval closure.

    Vertices are the boundary vertices (ambient labels) with their colors;
    each hyperedge is the boundary-leaf set of a chain of tree nodes, its
    color the tuple of node codes along the chain (bottom to top).  The
    pruned tree is retained so boundary isomorphisms can be lifted.
    """

    __slots__ = ("component", "boundary", "vertex_colors", "edges",
                 "closure_view", "tree", "chains", "pruned")

    def __init__(self, component, boundary, vertex_colors, edges,
                 closure_view, tree, chains, pruned):
        self.component = component
        self.boundary = boundary              # sorted tuple, ambient ids
        self.vertex_colors = vertex_colors    # dict ambient id -> color
        self.edges = edges                    # frozenset -> color tuple
        self.closure_view = closure_view
        self.tree = tree                      # CanonicalTree of the closure
        self.chains = chains                  # frozenset -> node list
        self.pruned = pruned                  # node -> list of pruned roots

    def content_key(self):
        return (self.boundary,
                tuple(self.vertex_colors[v] for v in self.boundary),
                tuple(sorted(((tuple(sorted(e)), ckey(c))
                              for e, c in self.edges.items()), key=ckey)))

    def __repr__(self):
        return (f"BoundaryHypergraph(boundary={self.boundary}, "
                f"edges={len(self.edges)})")


def boundary_hypergraph(g: Graph, coloring: Coloring,
                        component: frozenset) -> BoundaryHypergraph:
    """Boundary hypergraph of one component's interval closure."""
    boundary, view = boundary_and_closure(g, component)
    if not is_interval(view.graph):
        raise NotIntervalError("closure is not interval")
    labels = [("c", coloring.class_of[view.to_parent(i)])
              for i in range(view.graph.n)]
    tree = canonical_tree(view.graph, labels=labels)
    bset = set(boundary)

    # boundary leaf sets per node (ambient ids), self-inclusive
    bl: dict[int, frozenset] = {}

    def collect(node: TreeNode) -> frozenset:
        if node.is_leaf():
            amb = view.to_parent(node.vertex)
            out = frozenset({amb}) if amb in bset else frozenset()
        else:
            acc = set()
            for c in node.children:
                acc |= collect(c)
            out = frozenset(acc)
        bl[id(node)] = out
        return out

    collect(tree.root)

    chains: dict[frozenset, list[TreeNode]] = {}
    pruned: dict[int, list[TreeNode]] = {}

    def walk(node: TreeNode, depth: int):
        if not bl[id(node)]:
            return
        chains.setdefault(bl[id(node)], []).append(node)
        pruned[id(node)] = [c for c in node.children if not bl[id(c)]]
        for c in node.children:
            walk(c, depth + 1)

    walk(tree.root, 0)

    edges: dict[frozenset, tuple] = {}
    for eset, nodes in chains.items():
        # nodes were collected root-first; the chain runs bottom to top
        nodes_sorted = list(reversed(nodes))
        for a, b in zip(nodes, nodes[1:]):
            if b.parent is not a:
                raise StructuralError(
                    "equal boundary leaf sets do not form a chain")
        color = tuple(ckey(n.code) for n in nodes_sorted)
        edges[eset] = color
        chains[eset] = nodes_sorted
    vertex_colors = {v: ("c", coloring.class_of[v]) for v in boundary}
    return BoundaryHypergraph(component, tuple(sorted(boundary)),
                              vertex_colors, edges, view, tree, chains,
                              pruned)


def lift_boundary_iso(h1: BoundaryHypergraph, h2: BoundaryHypergraph,
                      gbar: dict) -> dict:
    """Extend a boundary hypergraph isomorphism to a closure isomorphism.

    ``gbar`` maps ambient boundary ids of ``h1`` onto those of ``h2``;
    returns a dict mapping every closure vertex of ``h1`` to one of ``h2``.
    Raises StructuralError when ``gbar`` is not a hypergraph isomorphism.
    """
    if sorted(gbar) != list(h1.boundary) or \
            sorted(gbar.values()) != list(h2.boundary):
        raise StructuralError("boundary bijection domain mismatch")
    for v in h1.boundary:
        if h1.vertex_colors[v] != h2.vertex_colors[gbar[v]]:
            raise StructuralError("boundary colors not preserved")
    mapped_edges = {}
    for eset, color in h1.edges.items():
        target = frozenset(gbar[v] for v in eset)
        if target not in h2.edges or h2.edges[target] != color:
            raise StructuralError("hyperedge colors not preserved")
        mapped_edges[eset] = target
    if len(mapped_edges) != len(h2.edges):
        raise StructuralError("hyperedge count mismatch")

    out: dict[int, int] = {v: gbar[v] for v in h1.boundary}

    def align_pruned(a: TreeNode, b: TreeNode):
        # identical codes: align canonically and collect leaf images
        for x, y in zip(_leaf_sequence(a), _leaf_sequence(b)):
            amb_x = h1.closure_view.to_parent(x)
            amb_y = h2.closure_view.to_parent(y)
            out[amb_x] = amb_y

    for eset, nodes in h1.chains.items():
        target_nodes = h2.chains[mapped_edges[eset]]
        if len(nodes) != len(target_nodes):
            raise StructuralError("chain length mismatch")
        for a, b in zip(nodes, target_nodes):
            pa = sorted(h1.pruned[id(a)], key=lambda n: ckey(n.code))
            pb = sorted(h2.pruned[id(b)], key=lambda n: ckey(n.code))
            if [ckey(n.code) for n in pa] != [ckey(n.code) for n in pb]:
                raise StructuralError("pruned forests do not correspond")
            for x, y in zip(pa, pb):
                align_pruned(x, y)

    closure1 = {h1.closure_view.to_parent(i)
                for i in range(h1.closure_view.graph.n)}
    if set(out) != closure1:
        raise StructuralError("lifted map does not cover the closure")
    # defensive: verify edges are preserved
    g1 = h1.closure_view
    g2 = h2.closure_view
    for u, v in g1.graph.edges():
        au, av = g1.to_parent(u), g1.to_parent(v)
        bu, bv = out[au], out[av]
        if not g2.graph.has_edge(g2.local(bu), g2.local(bv)):
            raise StructuralError("lifted map breaks a closure edge")
    if g1.graph.edge_count() != g2.graph.edge_count():
        raise StructuralError("closure edge counts differ")
    return out
