import random

import pytest

from chordal_aut.graphs import Coloring, Graph, components_of_subset
from chordal_aut.perm import Perm
from chordal_aut.wl import check_stable, restrict_stable, wl_refine


def path(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def complete(n):
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def random_graph(rng, n, p=0.5):
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)
                     if rng.random() < p])


def test_wl_complete_graph_single_class():
    stable, _ = wl_refine(complete(5), Coloring.trivial(5))
    assert stable.size() == 1


def test_wl_p4_splits_ends_and_middles():
    # derived by naive refinement to fixpoint by hand: {0,3}, {1,2}
    stable, _ = wl_refine(path(4), Coloring.trivial(4))
    assert stable.as_partition() == frozenset({frozenset({0, 3}),
                                               frozenset({1, 2})})


def test_wl_p3_degree_split():
    stable, _ = wl_refine(path(3), Coloring.trivial(3))
    assert stable.as_partition() == frozenset({frozenset({0, 2}),
                                               frozenset({1})})


def test_wl_monotone_and_idempotent():
    rng = random.Random(2)
    for _ in range(25):
        n = rng.randint(1, 8)
        g = random_graph(rng, n)
        k = rng.randint(1, max(1, n))
        pi = Coloring.by_key([rng.randrange(k) for _ in range(n)])
        stable, _ = wl_refine(g, pi)
        assert stable.refines(pi)
        again, _ = wl_refine(g, stable)
        assert again.as_partition() == stable.as_partition()


def test_wl_isomorphism_invariance():
    rng = random.Random(3)
    for _ in range(25):
        n = rng.randint(2, 7)
        g = random_graph(rng, n)
        pi = Coloring.by_key([rng.randrange(2) for _ in range(n)])
        p = Perm(tuple(rng.sample(range(n), n)))
        stable, _ = wl_refine(g, pi)
        stable_relabelled, _ = wl_refine(g.relabel(p), pi.permute(p))
        assert stable.permute(p).class_of == stable_relabelled.class_of


def test_check_stable():
    g = path(4)
    stable, _ = wl_refine(g, Coloring.trivial(4))
    assert check_stable(g, stable)
    assert not check_stable(g, Coloring.trivial(4))
    assert check_stable(g, Coloring.discrete(4))


def test_pair_coloring_transpose_involution():
    g = path(4)
    _, pairs = wl_refine(g, Coloring.trivial(4))
    for (u, v), c in pairs.color_of.items():
        assert pairs.transpose[c] == pairs.color_of[(v, u)]
        assert pairs.transpose[pairs.transpose[c]] == c


def test_diagonal_colors_disjoint_from_offdiagonal():
    g = path(5)
    _, pairs = wl_refine(g, Coloring.trivial(5))
    diag = {pairs.color_of[(v, v)] for v in range(5)}
    off = {c for (u, v), c in pairs.color_of.items() if u != v}
    assert not diag & off


def test_restrict_stable():
    g = Graph(5, [(0, 1), (1, 2), (3, 4)])
    stable, _ = wl_refine(g, Coloring.trivial(5))
    cls = stable.classes[0]
    out = restrict_stable(g, stable, cls)
    assert out.size() == 1
    # component restriction
    comp = components_of_subset(g, range(5))[0]
    out = restrict_stable(g, stable, comp)
    assert out.n == len(comp)
    with pytest.raises(ValueError):
        restrict_stable(g, stable, {0, 3})


def test_restrict_stable_is_stable_on_unions_and_components():
    from chordal_aut.graphs import induced_subgraph

    rng = random.Random(4)
    for _ in range(20):
        n = rng.randint(2, 7)
        g = random_graph(rng, n, 0.4)
        stable, _ = wl_refine(g, Coloring.trivial(n))
        # union of classes
        take = [cls for cls in stable.classes if rng.random() < 0.6]
        if take:
            sub = sorted(set().union(*take))
            view = induced_subgraph(g, sub)
            induced = stable.induce(sub)
            assert check_stable(view.graph, induced)
        for comp in components_of_subset(g, range(n)):
            view = induced_subgraph(g, comp)
            induced = stable.induce(sorted(comp))
            assert check_stable(view.graph, induced)
