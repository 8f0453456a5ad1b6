import random

import pytest

from toughham.graph import Graph, GraphError, all_graphs, bits, mask_of


def test_neighbors_examples():
    k3 = Graph.complete(3)
    assert k3.neighbors(0) == mask_of([1, 2])
    p3 = Graph.path(3)
    assert p3.neighbors(1) == mask_of([0, 2])
    assert Graph.empty(4).neighbors(2) == 0


def test_neighbors_out_of_range():
    with pytest.raises(GraphError):
        Graph.complete(3).neighbors(3)


def test_set_neighborhood_examples():
    p4 = Graph.path(4)
    assert p4.set_neighborhood(mask_of([1, 2])) == mask_of([0, 3])
    k4 = Graph.complete(4)
    assert k4.set_neighborhood(mask_of([0])) == mask_of([1, 2, 3])
    c5 = Graph.cycle(5)
    # direct evaluation of the definition: N({0,1}) = {1,2,4,0} minus {0,1}
    assert c5.set_neighborhood(mask_of([0, 1])) == mask_of([2, 4])


def test_components_examples():
    c6 = Graph.cycle(6)
    assert c6.components(mask_of([0, 3])) == [mask_of([1, 2]), mask_of([4, 5])]
    assert Graph.complete(5).components() == [mask_of(range(5))]
    pattern = Graph.from_edges(5, [(0, 1), (2, 3)])
    assert len(pattern.components()) == 3


def test_induced_examples():
    c5 = Graph.cycle(5)
    p4 = Graph.path(4)
    # every 4-subset of a 5-cycle induces a 4-path (exhaustive)
    for drop in range(5):
        sub, vmap = c5.induced(c5.full & ~(1 << drop))
        assert sorted(r.bit_count() for r in sub.adj) == sorted(
            r.bit_count() for r in p4.adj)
        assert sub.edge_count() == 3
        assert len(vmap) == 4
    k3, _ = Graph.complete(5).induced(mask_of([0, 1, 2]))
    assert k3 == Graph.complete(3)
    empty, vmap = c5.induced(0)
    assert empty.n == 0 and vmap == ()


def test_induced_relabel_map_lifts_edges():
    g = Graph.from_edges(6, [(0, 3), (3, 5), (1, 5)])
    sub, vmap = g.induced(mask_of([0, 3, 5]))
    for u, v in sub.edges():
        assert g.has_edge(vmap[u], vmap[v])


def test_induced_idempotent():
    g = Graph.from_edges(7, [(0, 1), (2, 4), (4, 6), (1, 6)])
    sub, _ = g.induced(mask_of([0, 1, 4, 6]))
    again, _ = sub.induced(sub.full)
    assert again == sub


def test_bipartite_between_examples():
    k4 = Graph.complete(4)
    b = k4.bipartite_between(mask_of([0, 1]), mask_of([2, 3]))
    assert b.edge_count() == 4
    assert not b.has_edge(0, 1) and not b.has_edge(2, 3)
    c4 = Graph.cycle(4)
    assert c4.bipartite_between(mask_of([0, 2]), mask_of([1, 3])) == c4
    e = Graph.empty(5)
    assert e.bipartite_between(mask_of([0, 1]), mask_of([3, 4])).edge_count() == 0


def test_bipartite_between_rejects_overlap():
    with pytest.raises(GraphError):
        Graph.complete(4).bipartite_between(mask_of([0, 1]), mask_of([1, 2]))


def test_construction_rejects_asymmetry_and_loops():
    with pytest.raises(GraphError):
        Graph(2, [0b10, 0b00])
    with pytest.raises(GraphError):
        Graph(2, [0b01, 0b01])
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(0, 0)])


def test_random_invariants():
    rng = random.Random(7)
    for _ in range(60):
        n = rng.randrange(1, 11)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)
                 if rng.random() < 0.4]
        g = Graph.from_edges(n, edges)
        for v in range(n):
            assert g.neighbors(v).bit_count() == g.degree(v)
            for w in bits(g.neighbors(v)):
                assert g.has_edge(w, v)
        removed = rng.getrandbits(n)
        comps = g.components(removed)
        union = 0
        for comp in comps:
            assert comp & union == 0
            union |= comp
            # no edge leaves a component
            assert g.set_neighborhood(comp) & (g.full & ~removed) & ~comp == 0
        assert union == g.full & ~removed


def test_complement_involution():
    rng = random.Random(3)
    for _ in range(20):
        n = rng.randrange(1, 9)
        g = Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)
                                 if rng.random() < 0.5])
        assert g.complement().complement() == g


def test_all_graphs_count():
    assert sum(1 for _ in all_graphs(3)) == 8
    assert sum(1 for _ in all_graphs(4)) == 64
