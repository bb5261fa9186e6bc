import random

import pytest

from chordal_aut.graphs import Coloring
from chordal_aut.hyper import (
    OrderKHypergraph,
    edge_of_vertices,
    nested,
    skeleton,
)
from chordal_aut.hyperiso import (
    aut_hypergraph,
    iso_base_order1,
    iso_hypergraphs,
)
from chordal_aut.perm import Perm
from chordal_aut.testkit import brute_hyper_iso, random_hypergraph


def coset_set(c):
    return frozenset() if c.is_empty else c.element_set()


def test_single_edge_symmetry():
    pi = Coloring.trivial(2)
    h = OrderKHypergraph(2, pi, {edge_of_vertices([0, 1]): "c"})
    out = iso_hypergraphs(h, h)
    assert coset_set(out) == {Perm([0, 1]), Perm([1, 0])}


def test_color_mismatch_empty():
    pi = Coloring.trivial(2)
    h1 = OrderKHypergraph(2, pi, {edge_of_vertices([0, 1]): "c"})
    h2 = OrderKHypergraph(2, pi, {edge_of_vertices([0, 1]): "d"})
    assert iso_hypergraphs(h1, h2).is_empty


def test_base_order1_examples():
    pi1 = Coloring.trivial(1)
    h = OrderKHypergraph(1, pi1, {})
    out = iso_base_order1(h, h)
    assert coset_set(out) == {Perm([0])}

    pi = Coloring.trivial(2)
    ha = OrderKHypergraph(2, pi, {edge_of_vertices([0]): "c"})
    hb = OrderKHypergraph(2, pi, {edge_of_vertices([1]): "c"})
    out = iso_base_order1(ha, hb)
    assert coset_set(out) == {Perm([1, 0])}


def test_relabeled_copy_contains_relabeling():
    rng = random.Random(17)
    for trial in range(30):
        n = rng.randint(2, 5)
        k = rng.choice([1, 2])
        h = random_hypergraph(rng, n, k)
        # class-preserving relabeling: permute inside classes
        images = list(range(n))
        for cls in h.coloring.classes:
            cls = sorted(cls)
            shuffled = cls[:]
            rng.shuffle(shuffled)
            for a, b in zip(cls, shuffled):
                images[a] = b
        p = Perm(images)
        h2 = h.relabel(p.images.__getitem__)
        out = iso_hypergraphs(h, h2)
        assert not out.is_empty
        assert out.contains(p)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_engine_matches_brute_force(k):
    rng = random.Random(100 + k)
    for trial in range(40):
        n = rng.randint(1, 5)
        h1 = random_hypergraph(rng, n, k)
        if rng.random() < 0.5:
            h2 = random_hypergraph(rng, n, k)
            # align colorings so classes correspond
            if [len(c) for c in h1.coloring.classes] != \
                    [len(c) for c in h2.coloring.classes]:
                h2 = OrderKHypergraph(n, h1.coloring, h2.edges, h2.order)
        else:
            images = list(range(n))
            for cls in h1.coloring.classes:
                cls = sorted(cls)
                shuffled = cls[:]
                rng.shuffle(shuffled)
                for a, b in zip(cls, shuffled):
                    images[a] = b
            h2 = h1.relabel(images.__getitem__)
        expected = frozenset(brute_hyper_iso(h1, h2))
        got = coset_set(iso_hypergraphs(h1, h2))
        assert got == expected, (h1.edges, h2.edges, trial)


def test_self_iso_is_group_with_verified_generators():
    from chordal_aut.hyper import relabel_edge

    rng = random.Random(23)
    for _ in range(20):
        n = rng.randint(2, 5)
        h = random_hypergraph(rng, n, rng.choice([1, 2, 3]))
        group = aut_hypergraph(h)
        for g in group.generators():
            mapped = {relabel_edge(e, g.images.__getitem__): c
                      for e, c in h.edges.items()}
            assert mapped == h.edges
            for v in range(n):
                assert h.coloring.class_of[v] == h.coloring.class_of[g(v)]


def test_symmetry_and_inverse():
    rng = random.Random(31)
    for _ in range(20):
        n = rng.randint(2, 5)
        h1 = random_hypergraph(rng, n, 2)
        images = list(range(n))
        for cls in h1.coloring.classes:
            cls = sorted(cls)
            shuffled = cls[:]
            rng.shuffle(shuffled)
            for a, b in zip(cls, shuffled):
                images[a] = b
        h2 = h1.relabel(images.__getitem__)
        fwd = iso_hypergraphs(h1, h2)
        back = iso_hypergraphs(h2, h1)
        assert fwd.is_empty == back.is_empty
        if not fwd.is_empty:
            assert coset_set(back) == {p.inverse() for p in coset_set(fwd)}


def test_every_iso_restricts_to_skeleton_iso():
    rng = random.Random(37)
    checked = 0
    while checked < 12:
        n = rng.randint(2, 5)
        h = random_hypergraph(rng, n, 2)
        if h.order < 2:
            continue
        sk = skeleton(h)
        for p in coset_set(iso_hypergraphs(h, h)):
            assert not iso_hypergraphs(sk, sk).is_empty
            from chordal_aut.hyper import relabel_edge

            mapped = {relabel_edge(e, p.images.__getitem__): c
                      for e, c in sk.edges.items()}
            assert mapped == sk.edges
        checked += 1


def test_grouping_correlations_are_not_lost():
    # two-class instance where member sets are symmetric but the edge
    # grouping is not: swapping inside the second class must be rejected
    pi = Coloring.from_classes([[0, 1], [2, 3, 4]], 5)
    e1 = nested([edge_of_vertices([0, 2]), edge_of_vertices([1, 3])])
    e2 = nested([edge_of_vertices([1, 2]), edge_of_vertices([0, 4])])
    e3 = nested([edge_of_vertices([1, 4]), edge_of_vertices([0, 3])])
    h = OrderKHypergraph(5, pi, {e1: "c", e2: "c", e3: "c"})
    group = aut_hypergraph(h)
    from chordal_aut.hyper import relabel_edge

    for g in group.elements():
        mapped = {relabel_edge(e, g.images.__getitem__): c
                  for e, c in h.edges.items()}
        assert mapped == h.edges
    assert frozenset(group.elements()) == frozenset(brute_hyper_iso(h, h))
