import random
from itertools import combinations

import pytest

from minorlab.constructions import TruncationParams, build_G, half_grid
from minorlab.flow import (
    CutSet,
    InseparableError,
    PathError,
    PathFamily,
    crossing_violations,
    is_path_family,
    max_vertex_disjoint_paths,
    min_vertex_cut,
    select_vertices,
)
from minorlab.graph import GraphError, build_graph, complete_graph

from conftest import random_graph

P = TruncationParams


def test_grid_columns():
    g = half_grid(P(2, 2))
    family = max_vertex_disjoint_paths(g, select_vertices(g, "row==0"), select_vertices(g, "row==2"))
    assert len(family) == 5
    assert all(len(path) == 3 for path in family.paths)


def test_rows_between_side_columns():
    p = P(1, 1)
    g = half_grid(p)
    left, right = select_vertices(g, "col==-1"), select_vertices(g, "col==1")
    assert len(max_vertex_disjoint_paths(g, left, right)) == 2
    cut = min_vertex_cut(g, left, right)
    assert cut.vertices == {p.grid_id(0, 0), p.grid_id(0, 1)}


def test_trivial_path():
    g = half_grid(P(1, 1))
    assert max_vertex_disjoint_paths(g, [3], [3]).paths == ((3,),)


def test_cut_may_take_an_endpoint():
    cut = min_vertex_cut(complete_graph(5), [0], [4])
    assert cut.vertices in ({0}, {4})


def test_errors():
    g = complete_graph(3)
    with pytest.raises(ValueError):
        max_vertex_disjoint_paths(g, [], [1])
    with pytest.raises(InseparableError):
        min_vertex_cut(g, [0, 1], [1])
    with pytest.raises(GraphError):
        max_vertex_disjoint_paths(g, [5], [1])


def test_disconnected_sides():
    g = build_graph(4, [(0, 1), (2, 3)])
    assert len(max_vertex_disjoint_paths(g, [0], [3])) == 0
    assert len(min_vertex_cut(g, [0], [3])) == 0


def _brute_min_cut(g, s, t):
    for r in range(g.n + 1):
        for c in combinations(range(g.n), r):
            if CutSet(frozenset(c)).separates(g, s, t):
                return r


def test_menger_duality_random():
    rng = random.Random(2)
    for _ in range(50):
        n = rng.randint(2, 12)
        g = random_graph(rng, n, rng.choice([0.2, 0.35, 0.5]))
        vs = list(range(n))
        rng.shuffle(vs)
        k = rng.randint(1, n - 1)
        s, t = vs[:k][: rng.randint(1, k)], vs[k:]
        family = max_vertex_disjoint_paths(g, s, t)
        cut = min_vertex_cut(g, s, t)
        assert cut.separates(g, s, t)
        assert len(family) == len(cut) == _brute_min_cut(g, s, t)
        assert all(path[0] in s and path[-1] in t for path in family.paths)


def test_family_validation():
    g = half_grid(P(1, 1))
    assert is_path_family(g, [[0, 1], [3, 4]])
    assert not is_path_family(g, [[0, 1], [1, 2]])
    assert not is_path_family(g, [[0, 2]])
    with pytest.raises(PathError):
        PathFamily(((0, 1, 0),)).validate(g)
    with pytest.raises(PathError):
        PathFamily(((),)).validate(g)


def test_crossing_fact_on_G():
    p = P(2, 1)
    g = build_G(p)
    left, right = select_vertices(g, "col<0"), select_vertices(g, "col>=0")
    family = max_vertex_disjoint_paths(g, left, right)
    assert len(family) == p.h + 1
    assert crossing_violations(g, family) == []
    for path in family.paths:
        assert any(g.tags[v].col == 0 for v in path)


def test_crossing_fact_skips_non_lattice_hosts():
    p = P(1, 0)
    g = half_grid(p)
    shortcut = build_graph(g.n, g.edges() + [(0, 2)], g.tags)
    family = PathFamily(((0, 2),))
    assert crossing_violations(shortcut, family) == []


def test_selectors():
    g = build_G(P(1, 1))
    assert select_vertices(g, "row==0&col<0") == [0]
    assert select_vertices(g, "3, 1,1") == [1, 3]
    with pytest.raises(ValueError):
        select_vertices(g, "depth<2")
    with pytest.raises(GraphError):
        select_vertices(g.untagged(), "row==0")
