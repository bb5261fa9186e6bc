import pytest

from chordal_aut.graphs import Graph, is_chordal, is_interval, twin_classes
from chordal_aut.testkit import (
    GeneratorConfig,
    brute_aut,
    brute_iso,
    brute_hyper_iso,
    gen_chordal,
)


def complete(n):
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def test_leaf_bound_one_gives_complete_graphs():
    for seed in range(10):
        _, g, _ = gen_chordal(GeneratorConfig(n=5, leaf_bound=1, seed=seed))
        assert g.edge_count() == g.n * (g.n - 1) // 2


def test_leaf_bound_two_gives_interval_graphs():
    for seed in range(25):
        _, g, _ = gen_chordal(GeneratorConfig(n=7, leaf_bound=2, seed=seed))
        assert is_interval(g)


def test_generated_graphs_are_chordal():
    for seed in range(25):
        for lb in (2, 3, 4):
            rep, g, _ = gen_chordal(GeneratorConfig(n=8, leaf_bound=lb,
                                                    seed=seed))
            assert is_chordal(g)
            assert rep.leaf_bound <= lb


def test_generator_deterministic():
    a = gen_chordal(GeneratorConfig(n=8, leaf_bound=3, seed=42))
    b = gen_chordal(GeneratorConfig(n=8, leaf_bound=3, seed=42))
    assert a[1].edge_set() == b[1].edge_set()
    assert a[2] == b[2]


def test_twinless_flag():
    for seed in range(15):
        _, g, _ = gen_chordal(GeneratorConfig(n=8, leaf_bound=3, seed=seed,
                                              twinless=True))
        assert twin_classes(g).size() == g.n


def test_brute_aut_examples():
    assert brute_aut(complete(3)).order() == 6
    p4 = Graph(4, [(0, 1), (1, 2), (2, 3)])
    assert brute_aut(p4).order() == 2
    claw = Graph(4, [(0, 1), (0, 2), (0, 3)])
    assert brute_aut(claw).order() == 6


def test_brute_aut_rejects_large():
    with pytest.raises(ValueError):
        brute_aut(Graph(13))


def test_brute_iso_examples():
    p4 = Graph(4, [(0, 1), (1, 2), (2, 3)])
    claw = Graph(4, [(0, 1), (0, 2), (0, 3)])
    from chordal_aut.perm import Perm

    relabeled = p4.relabel(Perm([3, 1, 0, 2]))
    assert brute_iso(p4, relabeled) is not None
    assert brute_iso(p4, claw) is None
    assert brute_iso(p4, Graph(4, [(0, 1)])) is None


def test_brute_hyper_iso_examples():
    from chordal_aut.graphs import Coloring
    from chordal_aut.hyper import OrderKHypergraph, edge_of_vertices
    from chordal_aut.perm import Perm

    pi = Coloring.trivial(2)
    h = OrderKHypergraph(2, pi, {edge_of_vertices([0, 1]): "c"})
    assert set(brute_hyper_iso(h, h)) == {Perm([0, 1]), Perm([1, 0])}
    h2 = OrderKHypergraph(2, pi, {edge_of_vertices([0, 1]): "d"})
    assert brute_hyper_iso(h, h2) == []
