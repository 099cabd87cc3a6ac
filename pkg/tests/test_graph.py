import pytest
from hypothesis import given, settings

from rigidkit.errors import CapExceeded, DomainError
from rigidkit.graph import (
    BLUE,
    RED,
    Loop,
    LoopedGraph,
    contract,
    contract_with_maps,
    induced_counts,
    relabel,
    same_multigraph,
    validate,
)

from .conftest import TRIANGLE, looped_graphs


def test_loops_normalize_from_several_forms():
    g = LoopedGraph(2, ((1, 2),), (1, {"v": 2, "color": "red"}, (2, "blue")))
    assert g.loops == (Loop(1), Loop(2, RED), Loop(2, BLUE))
    assert g.m == 1 and g.c == 3


def test_validate_messages():
    assert validate(LoopedGraph(2, ((1, 2),) * 3)) == "edge {1,2} multiplicity 3"
    assert validate(LoopedGraph(1, (), (1, 1, 1))) == "loop on 1 multiplicity 3"
    assert validate(LoopedGraph(3, TRIANGLE)) is None


def test_induced_counts(looped_triangle):
    sub = induced_counts(looped_triangle, [1, 2])
    assert (sub.size, sub.edges, sub.loops) == (2, 1, 2)
    with pytest.raises(DomainError):
        induced_counts(looped_triangle, [])


def test_contracting_triangle_gives_doubled_edge(k3):
    h = contract(k3, (1, 2))
    assert same_multigraph(h, LoopedGraph(2, ((1, 2), (1, 2))))


def test_contraction_moves_loops_and_shifts_labels():
    g = LoopedGraph(3, ((1, 3), (2, 3)), (3, 2))
    con = contract_with_maps(g, (2, 3))
    assert con.graph == LoopedGraph(2, ((1, 2),), (2, 2))
    assert (con.kept, con.removed) == (2, 3)
    assert con.edge_origin == (0,)


def test_contraction_drops_all_parallel_copies():
    g = LoopedGraph(3, ((1, 2), (1, 2), (2, 3)))
    assert contract(g, 0) == LoopedGraph(2, ((1, 2),))


def test_contraction_cap():
    g = LoopedGraph(3, ((1, 2), (1, 3), (2, 3)), (1, 1, 2))
    with pytest.raises(CapExceeded):
        contract(g, (1, 2))
    assert contract(g, (1, 2), strict=False).c == 3


def test_components():
    g = LoopedGraph(5, ((1, 2), (4, 5)))
    assert g.components() == [[1, 2], [3], [4, 5]]
    assert not g.is_connected()


@settings(max_examples=60, deadline=None)
@given(looped_graphs(max_n=5))
def test_contraction_counts(g):
    for k, (i, j) in enumerate(g.edges):
        h = contract(g, k, strict=False)
        parallel = sum(1 for e in g.edges if sorted(e) == sorted((i, j)))
        assert h.n == g.n - 1 and h.m == g.m - parallel and h.c == g.c


@settings(max_examples=60, deadline=None)
@given(looped_graphs(max_n=5))
def test_contraction_is_symmetric_up_to_relabeling(g):
    for k, (i, j) in enumerate(g.edges):
        a = contract_with_maps(g, k, keep=min(i, j), strict=False)
        b = contract_with_maps(g, k, keep=max(i, j), strict=False)
        perm = [0] * a.graph.n
        for v in g.vertices:
            perm[a.vertex_map[v] - 1] = b.vertex_map[v]
        assert same_multigraph(relabel(a.graph, perm), b.graph)
