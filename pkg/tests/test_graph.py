import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minorlab.constructions import K33, build_G, TruncationParams
from minorlab.graph import (
    Graph,
    GraphError,
    Grid,
    K5Private,
    build_graph,
    complete_graph,
    connected_components,
    contract_edge,
    delete_vertices,
    disjoint_union,
    empty_graph,
    induced_subgraph,
    is_connected_set,
    one_sum,
    path_graph,
    validate,
)

from conftest import graphs

K5 = complete_graph(5)


def test_build_k5():
    g = build_graph(5, [(u, v) for u in range(5) for v in range(u + 1, 5)])
    assert g.edge_count == 10


def test_single_vertex():
    g = build_graph(1, [])
    assert (g.n, g.edge_count) == (1, 0)


def test_dedup_reversed_edge():
    assert build_graph(2, [(0, 1), (1, 0)]).edge_count == 1


@pytest.mark.parametrize("edges", [[(0, 2)], [(-1, 0)], [(1, 1)]])
def test_build_rejects_bad_edges(edges):
    with pytest.raises(GraphError):
        build_graph(2, edges)


def test_tags_must_cover():
    with pytest.raises(GraphError):
        build_graph(2, [], {0: Grid(0, 0)})


def test_grid_row_nonnegative():
    with pytest.raises(ValueError):
        Grid(0, -1)
    with pytest.raises(ValueError):
        K5Private(-1, 5)


def test_disjoint_union_counts():
    g = disjoint_union(K5, K33)
    assert (g.n, g.edge_count) == (11, 19)
    assert disjoint_union(K5, empty_graph()) == K5
    parts = connected_components(disjoint_union(path_graph(3), path_graph(3)))
    assert [len(p) for p in parts] == [3, 3]


def test_one_sum():
    g = one_sum(K5, 0, K33, 0)
    assert (g.n, g.edge_count, g.degree(0)) == (10, 19, 7)
    assert one_sum(path_graph(2), 1, path_graph(2), 0) == path_graph(3)
    assert one_sum(K5, 0, empty_graph(1), 0) == K5
    with pytest.raises(GraphError):
        one_sum(K5, 5, K33, 0)


def test_delete_vertices():
    g, idmap = delete_vertices(K5, {2})
    assert g == complete_graph(4)
    assert idmap == {0: 0, 1: 1, 3: 2, 4: 3}
    same, ident = delete_vertices(K5, set())
    assert same == K5 and ident == {v: v for v in range(5)}
    with pytest.raises(GraphError):
        delete_vertices(K5, {7})


def test_delete_crossing_path_keeps_row_one_together():
    p = TruncationParams(1, 1)
    g = build_G(p)
    rest, idmap = delete_vertices(g, {p.grid_id(-1, 0), p.grid_id(0, 0)})
    row1 = {idmap[p.grid_id(c, 1)] for c in (-1, 0, 1)}
    assert sum(1 for c in connected_components(rest) if c & row1) == 1


def test_contract_edge():
    g, _ = contract_edge(K33, (0, 3))
    assert (g.n, g.edge_count) == (5, 8)
    assert contract_edge(path_graph(3), (0, 1))[0] == path_graph(2)
    k4, idmap = contract_edge(K5, (1, 3))
    assert k4 == complete_graph(4) and idmap[3] == idmap[1]
    with pytest.raises(GraphError):
        contract_edge(path_graph(3), (0, 2))


def test_components():
    assert len(connected_components(K5)) == 1
    assert [len(c) for c in connected_components(disjoint_union(K5, K33))] == [5, 6]
    assert connected_components(empty_graph(4)) == [{0}, {1}, {2}, {3}]


def test_induced_subgraph():
    p = TruncationParams(1, 1)
    g = build_G(p)
    block = [p.grid_id(-1, 0)] + [v for v, t in enumerate(g.tags) if isinstance(t, K5Private)]
    assert induced_subgraph(g, block)[0].untagged() == K5
    assert induced_subgraph(K33, [0, 1, 2])[0].edge_count == 0
    assert induced_subgraph(K5, range(5))[0] == K5


def test_constructor_rejects_asymmetry():
    with pytest.raises(GraphError):
        Graph(2, (frozenset({1}), frozenset()))


@given(graphs(), graphs())
def test_union_and_sum_counts(g1, g2):
    u = disjoint_union(g1, g2)
    assert u.edge_count == g1.edge_count + g2.edge_count
    validate(u)
    if g1.n and g2.n:
        s = one_sum(g1, 0, g2, 0)
        assert s.n == g1.n + g2.n - 1
        validate(s)


@given(graphs(min_n=1), st.data())
def test_delete_matches_induced_complement(g, data):
    s = data.draw(st.sets(st.integers(0, g.n - 1)))
    d, m1 = delete_vertices(g, s)
    i, m2 = induced_subgraph(g, set(range(g.n)) - s)
    assert d == i and m1 == m2


@given(graphs(min_n=2), st.data())
def test_contraction_shrinks(g, data):
    edges = g.edges()
    if not edges:
        return
    e = data.draw(st.sampled_from(edges))
    c, _ = contract_edge(g, e)
    assert c.n == g.n - 1 and c.edge_count <= g.edge_count - 1
    validate(c)


@settings(max_examples=50)
@given(graphs())
def test_components_partition(g):
    parts = connected_components(g)
    assert sorted(v for p in parts for v in p) == list(range(g.n))
    owner = {v: i for i, p in enumerate(parts) for v in p}
    assert all(owner[u] == owner[v] for u, v in g.edges())
    assert all(is_connected_set(g, p) for p in parts)
