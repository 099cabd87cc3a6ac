import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rigidkit.errors import DomainError, NonGenericSamplingExhausted
from rigidkit.graph import BLUE, RED, Loop, LoopedGraph, contract_with_maps
from rigidkit.linalg import nullspace
from rigidkit.oracles import GenSpec, generate, generate_non_laman
from rigidkit.realize import (
    DirectionAssignment,
    SliderAssignment,
    assemble_direction_system,
    check_generic_directions,
    check_generic_sliders,
    contract_network,
    contracted_system,
    flatten,
    is_solution,
    sample_generic_directions,
    sample_generic_sliders,
    solve_axis_parallel,
    solve_direction_network,
    solve_direction_slider,
    translate,
)

from .conftest import TRIANGLE

F = Fraction


def _lift(vec, con, n):
    """Kernel vector of the contracted system back on the original vertices."""
    out = []
    for v in range(1, n + 1):
        w = con.vertex_map[v]
        out += [vec[2 * (w - 1)], vec[2 * (w - 1) + 1]]
    return out


def test_k3_explicit_directions(k3):
    d = DirectionAssignment(((1, 0), (0, 1), (1, 1)))
    rep = solve_direction_network(k3, d)
    assert rep.unique and rep.faithful
    assert rep.realization.points == ((0, 0), (1, 0), (0, -1))
    assert rep.realization.normalization == "p1=(0,0), x2=1"


def test_non_generic_triangle(k3):
    d = DirectionAssignment(((1, 0), (1, 0), (0, 1)))
    rep = solve_direction_network(k3, d)
    pts = rep.realization.points
    assert pts[1] == pts[2] and pts[0] != pts[1]
    assert rep.realization.collapsed_edges == (2,)
    con = contracted_system(k3, d, 2)
    assert con.system.shape == (2, 4) and con.rank == 1
    assert not check_generic_directions(k3, d).ok


def test_k4_collapses_everything(k4):
    d = DirectionAssignment(((1, 2), (3, -1), (2, 5), (-4, 1), (1, 1), (7, 3)))
    rep = solve_direction_network(k4, d)
    assert rep.kernel_dimension == 2
    assert len(rep.realization.collapsed_edges) == 6


def test_zero_direction_rejected():
    with pytest.raises(DomainError):
        DirectionAssignment(((0, 0),))


def test_disconnected_rejected():
    g = LoopedGraph(4, ((1, 2), (3, 4)))
    with pytest.raises(DomainError):
        solve_direction_network(g, DirectionAssignment(((1, 0), (0, 1))))


def test_loops_rejected_for_direction_networks(looped_triangle):
    with pytest.raises(DomainError):
        assemble_direction_system(looped_triangle, DirectionAssignment(((1, 0), (0, 1), (1, 1))))


def test_slider_triangle(looped_triangle):
    d, sl = sample_generic_sliders(looped_triangle, seed=7)
    rep = solve_direction_slider(looped_triangle, d, sl)
    assert rep.rank == 6 and rep.unique and rep.faithful
    for k in range(3):
        assert not contracted_system(looped_triangle, d, k, sl).solvable


def test_axis_parallel_colored_triangle():
    g = LoopedGraph(3, TRIANGLE, (Loop(1, RED), Loop(2, BLUE), Loop(3, RED)))
    d, sl = sample_generic_sliders(g, seed=1, axis_parallel=True)
    assert sl.normals == ((1, 0), (0, 1), (1, 0))
    rep = solve_axis_parallel(g, d, sl.offsets)
    assert rep.unique and rep.faithful


def test_sampling_exhaustion_on_non_laman(k4):
    with pytest.raises(NonGenericSamplingExhausted):
        sample_generic_directions(k4, seed=0)
    with pytest.raises(DomainError):
        sample_generic_directions(LoopedGraph(2, ((1, 2),)), bound=1)


def test_inconsistent_slider_data():
    g = LoopedGraph(1, (), (1, 1))
    sl = SliderAssignment(((1, 0), (1, 0)), (0, 1))
    rep = solve_direction_slider(g, DirectionAssignment(()), sl)
    assert not rep.solvable and not check_generic_sliders(g, DirectionAssignment(()), sl).ok


def test_sampling_is_deterministic():
    g = generate(GenSpec(6, "laman", 3))
    assert sample_generic_directions(g, seed=5) == sample_generic_directions(g, seed=5)


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 7), st.integers(0, 10**6), st.tuples(st.integers(-9, 9), st.integers(-9, 9)))
def test_translation_invariance(n, seed, t):
    g = generate(GenSpec(n, "laman", seed))
    d = sample_generic_directions(g, seed)
    rep = solve_direction_network(g, d)
    rows = rep.system.as_lists()
    assert is_solution(rows, flatten(rep.realization.points))
    assert is_solution(rows, flatten(translate(rep.realization.points, t)))


@settings(max_examples=25, deadline=None)
@given(st.integers(5, 8), st.integers(0, 10**6))
def test_non_laman_realizations_collapse(n, seed):
    rng = random.Random(seed)
    g = generate_non_laman(rng, n)
    d = DirectionAssignment(tuple((rng.randint(-50, 50) or 1, rng.randint(-50, 50)) for _ in g.edges))
    rep = solve_direction_network(g, d)
    if rep.realization is not None:
        assert rep.realization.collapsed_edges
    else:
        # larger kernel: every kernel vector collapses some edge, so check a basis sum
        vec = [sum(col) for col in zip(*rep.kernel_basis)]
        pts = [(vec[2 * i], vec[2 * i + 1]) for i in range(n)]
        assert any(pts[i - 1] == pts[j - 1] for i, j in g.edges)


@settings(max_examples=30, deadline=None)
@given(st.integers(5, 7), st.integers(0, 10**6))
def test_collapse_contract_equivalence(n, seed):
    rng = random.Random(seed)
    g = generate_non_laman(rng, n)
    d = DirectionAssignment(tuple((rng.randint(1, 30), rng.randint(-30, 30)) for _ in g.edges))
    rep = solve_direction_network(g, d)
    if rep.realization is None:
        return
    pts = rep.realization.points
    for k in rep.realization.collapsed_edges:
        con = contract_with_maps(g, k, strict=False)
        net = contract_network(g, d, k, strict=False)
        rows = assemble_direction_system(net.graph, net.directions).as_lists()
        dropped = [p for v, p in enumerate(pts, start=1) if v != con.removed]
        assert is_solution(rows, flatten(dropped))
        for vec in nullspace(rows, 2 * net.graph.n):
            assert is_solution(rep.system.as_lists(), _lift(vec, con, g.n))


def test_collapse_contract_on_remark_triangle(k3):
    d = DirectionAssignment(((1, 0), (1, 0), (0, 1)))
    pts = solve_direction_network(k3, d).realization.points
    net = contract_network(k3, d, 2)
    rows = assemble_direction_system(net.graph, net.directions).as_lists()
    assert is_solution(rows, flatten(pts[:2]))
