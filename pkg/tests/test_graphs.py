import itertools
import random

import pytest

import oracles
from virtgraph.diagram import edge_paths, validate
from virtgraph.errors import GraphError, NotATriangle, NotAYVertex, TooLarge
from virtgraph.graphs import (
    Graph,
    all_cycles,
    c14,
    canonical_form,
    complete,
    complete_multipartite,
    convex_diagram,
    cycle_graph,
    delta_y,
    disjoint_cycle_pairs,
    dumps_edges,
    dy_closure,
    girth,
    hamiltonian_cycles,
    interleaved,
    is_isomorphic,
    join,
    loads_edges,
    petersen,
    straight_line_diagram,
    triangles,
    twist_knot_diagram,
    y_delta,
)

nx = pytest.importorskip("networkx")


def _nx(g: Graph):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def test_generators():
    assert complete(6).m == 15
    assert complete_multipartite([3, 3, 1]).m == 9 + 3 + 3
    p = petersen()
    assert (p.n, p.m, girth(p)) == (10, 15, 5)
    assert all(p.degree(v) == 3 for v in range(10))
    j = join(cycle_graph(4), 2, cycle_graph(3), 1)
    assert (j.n, j.m) == (6, 7)


def test_edge_list_round_trip():
    g = petersen()
    assert loads_edges(dumps_edges(g)) == g
    with pytest.raises(GraphError):
        loads_edges("3 2\n0 1\n")


def test_cycles_against_networkx():
    rng = random.Random(1)
    for g in [complete(4), complete(5), petersen(), complete_multipartite([2, 3])]:
        ours = all_cycles(g)
        theirs = list(nx.simple_cycles(_nx(g)))
        assert len(ours) == len(theirs)
        assert {frozenset(c) for c in ours} == {frozenset(c) for c in theirs}
    for _ in range(10):
        n = rng.randint(4, 8)
        edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.5]
        g = Graph(n, frozenset(edges))
        assert len(all_cycles(g)) == len(list(nx.simple_cycles(_nx(g))))


def test_cycle_canonical_shape():
    assert len(all_cycles(complete(4))) == 7
    for c in all_cycles(complete(5)):
        assert c[0] == min(c) and c[1] < c[-1]


def test_pairs_and_hamiltonian():
    pairs = disjoint_cycle_pairs(complete(6))
    assert len(pairs) == 10
    assert all(len(p.c1) == len(p.c2) == 3 for p in pairs)
    assert len(hamiltonian_cycles(complete(7))) == 360
    k7 = disjoint_cycle_pairs(complete(7))
    assert len(k7) == 70 + 105
    sizes = [len(p.c1) + len(p.c2) for p in k7]
    assert sizes == sorted(sizes)


def test_delta_y_and_back():
    g = complete(6)
    for tri in triangles(g)[:4]:
        h = delta_y(g, tri)
        assert (h.n, h.m) == (7, 15)
        assert is_isomorphic(y_delta(h, 6), g)
    with pytest.raises(NotATriangle):
        delta_y(cycle_graph(4), (0, 1, 2))
    with pytest.raises(NotAYVertex):
        y_delta(complete(4), 0)


def test_isomorphism_against_networkx():
    rng = random.Random(3)
    g = petersen()
    perm = list(range(10))
    rng.shuffle(perm)
    assert is_isomorphic(g, g.relabel(perm))
    assert not is_isomorphic(g, complete(5))
    a = delta_y(complete(6), (0, 1, 2))
    b = delta_y(complete(6), (1, 3, 5))
    assert is_isomorphic(a, b)
    for _ in range(40):
        n = rng.randint(5, 8)
        e1 = [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.4]
        e2 = [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.4]
        g1, g2 = Graph(n, frozenset(e1)), Graph(n, frozenset(e2))
        assert is_isomorphic(g1, g2) == nx.is_isomorphic(_nx(g1), _nx(g2))
    with pytest.raises(TooLarge):
        canonical_form(cycle_graph(17))


def test_petersen_family_delta_only_and_two_way():
    one_way = dy_closure(complete(6))
    two_way = dy_closure(complete(6), inverse=True)
    assert len(two_way) == 7
    assert any(is_isomorphic(m.graph, petersen()) for m in one_way)
    assert any(is_isomorphic(m.graph, complete_multipartite([3, 3, 1])) for m in two_way)
    assert not any(is_isomorphic(m.graph, complete_multipartite([3, 3, 1])) for m in one_way)
    # members are pairwise non-isomorphic (networkx as referee)
    for a, b in itertools.combinations(two_way, 2):
        assert not nx.is_isomorphic(_nx(a.graph), _nx(b.graph))


def test_closure_is_closed_and_audited():
    members = dy_closure(complete(6))
    forms = {canonical_form(m.graph) for m in members}
    for k, m in enumerate(members):
        if k:
            parent = members[m.parent].graph
            assert is_isomorphic(delta_y(parent, m.triangle), m.graph)
        for tri in triangles(m.graph):
            assert canonical_form(delta_y(m.graph, tri)) in forms


def test_c14():
    g = c14()
    assert (g.n, g.m) == (14, 21)
    assert not triangles(g)
    # the Heawood graph: cubic, girth 6
    assert girth(g) == 6
    assert nx.is_isomorphic(_nx(g), nx.heawood_graph())


def test_convex_crossings_match_interleaving():
    for g, order in [(complete(6), range(6)), (complete(7), [3, 0, 6, 1, 5, 2, 4]), (petersen(), range(10))]:
        order = list(order)
        d = convex_diagram(g, order)
        assert validate(d) == []
        expected = oracles.interleaving_count(g.n, g.sorted_edges(), order)
        assert len(d.classical_crossings()) == expected
        assert set(edge_paths(d)) == set(g.edges)
    assert len(convex_diagram(complete(6)).classical_crossings()) == 15
    assert interleaved(range(4), (0, 2), (1, 3))
    assert not interleaved(range(4), (0, 1), (2, 3))


def test_straight_line_rejects_degenerate_input():
    with pytest.raises(GraphError):
        straight_line_diagram(cycle_graph(3), [(0, 0), (1, 0), (2, 0)])


def test_twist_knot_diagram():
    assert len(twist_knot_diagram(0).classical_crossings()) == 3
    assert len(twist_knot_diagram(5).classical_crossings()) == 8
