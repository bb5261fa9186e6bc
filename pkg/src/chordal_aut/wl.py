"""Two-dimensional Weisfeiler-Leman refinement of vertex colorings.

The refinement colors ordered vertex pairs; the vertex coloring is read off
the diagonal.  Color ids are canonical: at every round new colors are the
ranks of sorted signature keys, so isomorphic colored graphs receive the
same ids regardless of vertex numbering.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Coloring, Graph, components


@dataclass(frozen=True)
class PairColoring:
    """Stable coloring of ordered vertex pairs.

    ``color_of[(u, v)]`` holds dense pair-color ids; diagonal ids and
    off-diagonal ids occupy disjoint ranges.  ``transpose`` maps the color
    of (u, v) to the color of (v, u).
    """

    n: int
    color_of: dict
    transpose: dict
    rounds: int

    def vertex_color(self, v: int) -> int:
        return self.color_of[(v, v)]


def _initial_pair_colors(g: Graph, pi: Coloring) -> dict:
    colors = {}
    for u in range(g.n):
        for v in range(g.n):
            if u == v:
                colors[(u, v)] = ("d", pi.class_of[u])
            elif g.has_edge(u, v):
                colors[(u, v)] = ("e", pi.class_of[u], pi.class_of[v])
            else:
                colors[(u, v)] = ("n", pi.class_of[u], pi.class_of[v])
    return colors


def _refine_pairs(g: Graph, colors: dict) -> tuple[dict, bool]:
    n = g.n
    sigs = {}
    for u in range(n):
        for v in range(n):
            around = sorted((colors[(u, w)], colors[(w, v)])
                            for w in range(n))
            sigs[(u, v)] = (colors[(u, v)], tuple(around))
    ranking = {sig: i for i, sig in enumerate(sorted(set(sigs.values())))}
    new = {pair: ranking[sig] for pair, sig in sigs.items()}
    changed = len(set(new.values())) != len(set(colors.values()))
    return new, changed


def wl_refine(g: Graph, pi: Coloring) -> tuple[Coloring, PairColoring]:
    """Refine ``pi`` to the 2-dim WL fixpoint; returns the stable vertex
    coloring and the full pair coloring."""
    if pi.n != g.n:
        raise ValueError("coloring size mismatch")
    if g.n == 0:
        return pi, PairColoring(0, {}, {}, 0)
    colors = _initial_pair_colors(g, pi)
    rounds = 0
    while True:
        new, changed = _refine_pairs(g, colors)
        rounds += 1
        if not changed:
            colors = new
            break
        colors = new
    # canonical dense ids with diagonal and off-diagonal ranges disjoint
    diag = sorted({colors[(v, v)] for v in range(g.n)})
    off = sorted({c for (u, v), c in colors.items() if u != v})
    remap = {c: i for i, c in enumerate(diag)}
    remap.update({c: len(diag) + i for i, c in enumerate(off)})
    colors = {pair: remap[c] for pair, c in colors.items()}
    transpose = {}
    for (u, v), c in colors.items():
        transpose[c] = colors[(v, u)]
    stable = Coloring.by_key([colors[(v, v)] for v in range(g.n)])
    if not stable.refines(pi):
        raise AssertionError("refinement failed to refine the input")
    return stable, PairColoring(g.n, colors, transpose, rounds)


def _class_degree_constant(g: Graph, pi: Coloring) -> bool:
    for cls in pi.classes:
        for other in pi.classes:
            counts = {len(g.adj[v] & other) for v in cls}
            if len(counts) > 1:
                return False
    return True


def check_stable(g: Graph, pi: Coloring) -> bool:
    """True iff class-to-class degrees are constant and ``pi`` is a
    fixpoint of one refinement round."""
    if not _class_degree_constant(g, pi):
        return False
    refined, _ = wl_refine(g, pi)
    return refined.as_partition() == pi.as_partition()


def restrict_stable(g: Graph, pi: Coloring, subset) -> Coloring:
    """Induced coloring on ``subset``; the subset must be a union of color
    classes or the vertex set of a connected component."""
    sub = frozenset(subset)
    union_of_classes = all(cls <= sub or not (cls & sub)
                           for cls in pi.classes)
    if not union_of_classes and sub not in set(components(g)):
        raise ValueError(
            "subset is neither a union of classes nor a component")
    return pi.induce(sorted(sub))
