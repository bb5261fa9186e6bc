import itertools

import pytest

from chordal_aut.errors import ParseError, StructuralError
from chordal_aut.graphs import (
    Coloring,
    Graph,
    TreeRepresentation,
    bipartite_between,
    boundary_and_closure,
    components,
    is_chordal,
    is_interval,
    maximal_cliques_chordal,
    realize,
    twin_classes,
)
from chordal_aut.graph_io import (
    parse_coloring,
    parse_edge_list,
    parse_graph6,
    parse_graph_auto,
    write_edge_list,
    write_graph6,
)


def path(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def claw():
    return Graph(4, [(0, 1), (0, 2), (0, 3)])


def spider_three_legs(leg=2):
    # center 0, legs of `leg` vertices each
    edges = []
    n = 1 + 3 * leg
    for a in range(3):
        prev = 0
        for k in range(leg):
            v = 1 + a * leg + k
            edges.append((prev, v))
            prev = v
    return Graph(n, edges)


# -- oracles used to freeze expected values ---------------------------------


def brute_has_induced_long_cycle(g):
    """Any induced cycle of length >= 4 (exhaustive, tiny graphs only)."""
    for k in range(4, g.n + 1):
        for sub in itertools.combinations(range(g.n), k):
            edges = [(u, v) for u, v in itertools.combinations(sub, 2)
                     if g.has_edge(u, v)]
            if len(edges) != k:
                continue
            deg = {v: 0 for v in sub}
            for u, v in edges:
                deg[u] += 1
                deg[v] += 1
            if any(d != 2 for d in deg.values()):
                continue
            seen = {sub[0]}
            stack = [sub[0]]
            adj = {v: set() for v in sub}
            for u, v in edges:
                adj[u].add(v)
                adj[v].add(u)
            while stack:
                u = stack.pop()
                for v in adj[u]:
                    if v not in seen:
                        seen.add(v)
                        stack.append(v)
            if len(seen) == k:
                return True
    return False


def brute_maximal_cliques(g):
    """All maximal cliques of an arbitrary small graph by subset search."""
    cliques = []
    for k in range(g.n, 0, -1):
        for sub in itertools.combinations(range(g.n), k):
            if all(g.has_edge(u, v)
                   for u, v in itertools.combinations(sub, 2)):
                s = frozenset(sub)
                if not any(s < c for c in cliques):
                    cliques.append(s)
    return cliques


def brute_is_interval(g):
    """Exhaustive search for a consecutive arrangement of maximal cliques.

    A graph is interval iff its maximal cliques admit a linear order in
    which the cliques containing any fixed vertex are consecutive.
    """
    if g.n == 0:
        return True
    cliques = brute_maximal_cliques(g)
    for order in itertools.permutations(cliques):
        ok = True
        for v in range(g.n):
            hits = [i for i, c in enumerate(order) if v in c]
            if hits and hits[-1] - hits[0] + 1 != len(hits):
                ok = False
                break
        if ok:
            return True
    return False


# -- realize -----------------------------------------------------------------


def test_realize_all_bags_share_a_point_gives_complete():
    tree = Graph(1)
    rep = TreeRepresentation(tree, [{0}, {0}, {0}])
    g = realize(rep)
    assert g.edge_set() == complete(3).edge_set()


def test_realize_disjoint_bags_give_isolated_vertices():
    tree = Graph(2, [(0, 1)])
    rep = TreeRepresentation(tree, [{0}, {1}])
    g = realize(rep)
    assert g.edge_count() == 0


def test_realize_path_bags():
    tree = path(3)
    rep = TreeRepresentation(tree, [{0, 1}, {1, 2}, {2}])
    g = realize(rep)
    # frozen by brute pairwise intersection: edges {0,1} and {1,2}
    assert g.edge_set() == frozenset({frozenset({0, 1}), frozenset({1, 2})})


def test_realize_rejects_disconnected_bag():
    tree = path(3)
    rep = TreeRepresentation(tree, [{0, 2}, {1}])
    with pytest.raises(StructuralError):
        realize(rep)


def test_realized_graphs_are_chordal():
    tree = path(4)
    rep = TreeRepresentation(tree, [{0, 1}, {1, 2}, {2, 3}, {0, 1, 2, 3},
                                    {3}])
    assert is_chordal(realize(rep))


def test_realize_components_match_connected_bag_unions():
    tree = path(5)
    rep = TreeRepresentation(tree, [{0}, {0, 1}, {3}, {3, 4}, {4}])
    g = realize(rep)
    # bags {0},{0,1} touch; {3},{3,4},{4} touch; the two groups are apart
    assert components(g) == [frozenset({0, 1}), frozenset({2, 3, 4})]


# -- chordality and interval --------------------------------------------------


def test_is_chordal_examples():
    assert not is_chordal(cycle(4))
    assert is_chordal(path(5))
    assert is_chordal(claw())
    k4_minus = Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    # derived: brute enumeration of induced cycles finds none of length >= 4
    assert not brute_has_induced_long_cycle(k4_minus)
    assert is_chordal(k4_minus)
    assert brute_has_induced_long_cycle(cycle(4))


def test_is_chordal_matches_brute_on_small_graphs():
    import random

    rng = random.Random(5)
    for _ in range(60):
        n = rng.randint(1, 6)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)
                 if rng.random() < 0.5]
        g = Graph(n, edges)
        assert is_chordal(g) == (not brute_has_induced_long_cycle(g))


def test_is_interval_examples():
    assert is_interval(claw())
    assert not is_interval(cycle(4))
    spider = spider_three_legs(2)
    # derived: brute search over all interval assignments at n=7 fails
    assert not brute_is_interval(spider)
    assert not is_interval(spider)
    assert is_interval(path(6))
    assert brute_is_interval(claw())


def test_interval_implies_chordal_on_random_graphs():
    import random

    rng = random.Random(9)
    for _ in range(40):
        n = rng.randint(1, 6)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)
                 if rng.random() < 0.4]
        g = Graph(n, edges)
        if is_interval(g):
            assert is_chordal(g)
        assert is_interval(g) == brute_is_interval(g)


def test_maximal_cliques_chordal():
    g = path(4)
    cliques = maximal_cliques_chordal(g)
    assert set(cliques) == {frozenset({0, 1}), frozenset({1, 2}),
                            frozenset({2, 3})}
    k3 = complete(3)
    assert maximal_cliques_chordal(k3) == [frozenset({0, 1, 2})]


# -- components ---------------------------------------------------------------


def test_components_examples():
    g = Graph(5, [(0, 1), (1, 2), (3, 4)])
    assert components(g) == [frozenset({0, 1, 2}), frozenset({3, 4})]
    assert components(complete(4)) == [frozenset({0, 1, 2, 3})]
    assert components(Graph(3)) == [frozenset({0}), frozenset({1}),
                                    frozenset({2})]


# -- twins --------------------------------------------------------------------


def test_twin_classes_examples():
    k4_minus = Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    tc = twin_classes(k4_minus)
    assert tc.as_partition() == frozenset({frozenset({0, 1}),
                                           frozenset({2, 3})})
    assert twin_classes(path(4)).size() == 4
    assert twin_classes(complete(3)).size() == 1


def test_twin_classes_have_identical_neighborhoods():
    import random

    rng = random.Random(13)
    for _ in range(30):
        n = rng.randint(2, 7)
        g = Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)
                      if rng.random() < 0.5])
        tc = twin_classes(g)
        for cls in tc.classes:
            cls = sorted(cls)
            for a, b in itertools.combinations(cls, 2):
                assert (g.adj[a] - {b}) == (g.adj[b] - {a})


# -- boundary, closure, bipartite ----------------------------------------------


def test_boundary_and_closure_examples():
    g = path(4)
    boundary, view = boundary_and_closure(g, {0, 1})
    assert boundary == frozenset({2})
    assert set(view.vertices) == {0, 1, 2}
    boundary, _ = boundary_and_closure(g, set(range(4)))
    assert boundary == frozenset()
    boundary, view = boundary_and_closure(g, set())
    assert boundary == frozenset()
    assert view.vertices == ()


def test_bipartite_between_examples():
    g = path(4)
    view = bipartite_between(g, {0, 3}, {1, 2})
    got = {frozenset({view.to_parent(u), view.to_parent(v)})
           for u, v in view.graph.edges()}
    assert got == {frozenset({0, 1}), frozenset({2, 3})}

    full = bipartite_between(g, set(range(4)), set(range(4)))
    assert full.graph.edge_count() == g.edge_count()

    empty = bipartite_between(g, {0}, {3})
    assert empty.graph.edge_count() == 0


# -- coloring -----------------------------------------------------------------


def test_coloring_basics():
    c = Coloring([0, 1, 0, 2])
    assert c.classes == (frozenset({0, 2}), frozenset({1}), frozenset({3}))
    assert c.induce([1, 2, 3]).class_of == (1, 0, 2)
    assert Coloring.trivial(3).size() == 1
    assert Coloring.discrete(3).size() == 3
    with pytest.raises(ValueError):
        Coloring([0, 2])  # not dense


def test_coloring_refines():
    fine = Coloring([0, 1, 2, 1])
    coarse = Coloring([0, 1, 0, 1])
    assert fine.refines(coarse)
    assert not coarse.refines(fine)


# -- io -----------------------------------------------------------------------


def test_edge_list_round_trip():
    g = spider_three_legs(2)
    text = write_edge_list(g)
    h = parse_edge_list(text)
    assert h.edge_set() == g.edge_set()


def test_graph6_round_trip():
    import random

    rng = random.Random(21)
    for _ in range(25):
        n = rng.randint(1, 12)
        g = Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)
                      if rng.random() < 0.4])
        assert parse_graph6(write_graph6(g)).edge_set() == g.edge_set()


def test_graph6_known_values():
    # triangle is "Bw"; complete graph K4 is "C~"
    assert parse_graph6("Bw").edge_set() == complete(3).edge_set()
    assert write_graph6(complete(3)) == "Bw"
    assert parse_graph6("C~").edge_set() == complete(4).edge_set()
    # documented example: edges 0-2, 0-4, 1-3, 3-4 encode as "DQc"
    g = Graph(5, [(0, 2), (0, 4), (1, 3), (3, 4)])
    assert parse_graph6("DQc").edge_set() == g.edge_set()
    assert write_graph6(g) == "DQc"


def test_parse_auto_detects_format():
    g = path(3)
    assert parse_graph_auto(write_edge_list(g)).edge_set() == g.edge_set()
    assert parse_graph_auto(write_graph6(g)).edge_set() == g.edge_set()


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_edge_list("2\n0 1\n")
    with pytest.raises(ParseError):
        parse_edge_list("2 2\n0 1\n")
    with pytest.raises(ParseError):
        parse_graph6("")


def test_parse_coloring():
    c = parse_coloring("0 5\n1 5\n2 7\n", 4)
    # vertex 3 uncolored gets its own (first) class
    assert c.class_of == (1, 1, 2, 0)
    assert parse_coloring("", 3).size() == 1
