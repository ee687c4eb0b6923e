import random

from hypothesis import given

from minorlab.blocks import block_cut_dot, block_decomposition, check_decomposition, is_biconnected
from minorlab.constructions import TruncationParams, build_G, build_I, half_grid
from minorlab.graph import Grid, build_graph, complete_graph, empty_graph, path_graph

from conftest import graphs, random_graph


def test_path_blocks():
    bd = block_decomposition(path_graph(4))
    assert len(bd.blocks) == 3 and bd.cut_vertices == {1, 2}


def test_I_blocks():
    bd = block_decomposition(build_I())
    assert [sorted(b) for b in bd.blocks] == [[0, 1, 2, 3, 4], [0, 5, 6, 7, 8, 9]]
    assert bd.cut_vertices == {0}


def test_G11_blocks():
    p = TruncationParams(1, 1)
    g = build_G(p)
    bd = block_decomposition(g)
    assert len(bd.blocks) == 4
    assert {g.tags[v] for v in bd.cut_vertices} == {Grid(-1, 0), Grid(0, 0), Grid(1, 0)}
    assert bd.blocks_of(p.grid_id(0, 0)) == [0, 2]


def test_isolated_vertices_have_no_block():
    bd = block_decomposition(empty_graph(3))
    assert bd.blocks == () and bd.cut_vertices == frozenset()


def test_biconnectivity():
    assert is_biconnected(complete_graph(5))
    assert not is_biconnected(build_I())
    assert is_biconnected(half_grid(TruncationParams(2, 2)))
    assert is_biconnected(path_graph(2))
    assert not is_biconnected(empty_graph(1))


def test_random_graphs_satisfy_axioms():
    rng = random.Random(3)
    for _ in range(100):
        g = random_graph(rng, rng.randint(1, 15), rng.choice([0.15, 0.3, 0.5]))
        bd = block_decomposition(g)
        assert check_decomposition(g, bd) == []
        assert sum(len(bd.block_edges(g, i)) for i in range(len(bd.blocks))) == g.edge_count


@given(graphs(max_n=12))
def test_cut_vertices_are_in_two_blocks(g):
    bd = block_decomposition(g)
    for v in range(g.n):
        assert (v in bd.cut_vertices) == (len(bd.blocks_of(v)) >= 2)


def test_checker_detects_broken_decomposition():
    g = complete_graph(4)
    bd = block_decomposition(g)
    broken = type(bd)((frozenset({0, 1, 2}), frozenset({1, 2, 3})), frozenset(), ())
    assert check_decomposition(g, broken)


def test_dot_output():
    g = build_graph(3, [(0, 1), (1, 2)])
    dot = block_cut_dot(g, block_decomposition(g))
    assert "b0 -- c1;" in dot and "b1 -- c1;" in dot
