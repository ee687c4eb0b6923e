import pytest

from minorlab.constructions import K5, TruncationParams, build_G, build_I, half_grid
from minorlab.graph import GraphError, build_graph, complete_graph, disjoint_union
from minorlab.minors import MinorModel, SearchBudget
from minorlab.packing import (
    Packing,
    PackingError,
    PackingExhausted,
    Reached,
    UpperBounded,
    exact_packing,
    greedy_packing,
    grid_sides,
    packing_upper_bound_by_cut,
)

P = TruncationParams
I = build_I()


def test_greedy_examples():
    assert len(greedy_packing(K5, build_G(P(2, 1)))) == 2
    assert len(greedy_packing(I, build_G(P(2, 1)))) >= 1
    assert len(greedy_packing(K5, half_grid(P(2, 2)))) == 0


def test_exact_reaches_two_in_G21():
    r = exact_packing(I, build_G(P(2, 1)), 2)
    assert isinstance(r, Reached) and len(r.packing) == 2
    r.packing.validate(build_G(P(2, 1)))


def test_exact_single_row_caps_at_one():
    r = exact_packing(I, build_G(P(2, 0)), 2)
    assert isinstance(r, UpperBounded) and len(r.best) == 1


def test_exact_counts_disjoint_k5s():
    host = disjoint_union(complete_graph(5), complete_graph(6))
    r = exact_packing(K5, host, 3)
    assert isinstance(r, UpperBounded) and len(r.best) == 2


def test_exact_exhaustion():
    r = exact_packing(I, build_G(P(2, 1)), 3, SearchBudget(500))
    assert isinstance(r, PackingExhausted)
    with pytest.raises(ValueError):
        exact_packing(I, build_G(P(1, 1)), 0)


def test_greedy_le_exact_le_cut():
    g = build_G(P(2, 1))
    bound = packing_upper_bound_by_cut(g, *grid_sides(g))
    exact = exact_packing(I, g, bound + 1)
    assert isinstance(exact, UpperBounded)
    assert len(greedy_packing(I, g)) <= len(exact.best) <= bound


@pytest.mark.parametrize("m,h,bound", [(1, 1, 2), (2, 1, 2), (3, 1, 2), (1, 3, 4)])
def test_cut_bound(m, h, bound):
    g = build_G(P(m, h))
    assert packing_upper_bound_by_cut(g, *grid_sides(g)) == bound


def test_cut_bound_disconnected_and_errors():
    g = build_graph(4, [(0, 1), (2, 3)])
    assert packing_upper_bound_by_cut(g, [0], [3]) == 0
    with pytest.raises(GraphError):
        packing_upper_bound_by_cut(g, [], [3])
    with pytest.raises(GraphError):
        grid_sides(g)


def test_packing_validation():
    host = complete_graph(5)
    one = MinorModel.from_lists([[0], [1]])
    two = MinorModel.from_lists([[1], [2]])
    edge = build_graph(2, [(0, 1)])
    Packing(edge, (one,)).validate(host)
    with pytest.raises(PackingError):
        Packing(edge, (one, two)).validate(host)
    with pytest.raises(PackingError):
        Packing(edge, (MinorModel.from_lists([[0], [0]]),)).validate(host)
