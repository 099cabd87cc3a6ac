import itertools
import random

import pytest
from hypothesis import given, settings

from rigidkit.errors import DomainError, OracleRefusal
from rigidkit.genmat import (
    build_pattern,
    evaluate,
    generic_rank,
    structured_determinant,
    symbolic_det_oracle,
)
from rigidkit.graph import BLUE, RED, Loop, LoopedGraph

from .conftest import looped_graphs


def test_m22_of_k4(k4):
    p = build_pattern(k4, "M22")
    assert p.shape == (6, 8)
    assert generic_rank(p).rank == 6


def test_m202_ranks(looped_triangle):
    assert generic_rank(build_pattern(looped_triangle, "M202")).rank == 6
    assert generic_rank(build_pattern(LoopedGraph(1, (), (1, 1)), "M202")).rank == 2


def test_doubled_edge_m22():
    assert generic_rank(build_pattern(LoopedGraph(2, ((1, 2), (1, 2))), "M22")).rank == 2


def test_row_and_column_labels(looped_triangle):
    p = build_pattern(looped_triangle, "M202")
    assert p.row_labels[:3] == ("1,2#1", "1,3#1", "2,3#1")
    assert p.col_labels == ("x1", "y1", "x2", "y2", "x3", "y3")
    assert "a[1,2#1]" in p.variables()


def test_m202c_uses_constant_entries():
    g = LoopedGraph(1, (), (Loop(1, RED), Loop(1, BLUE)))
    m = evaluate(build_pattern(g, "M202c"), {})
    assert m.as_lists() == [[1, 0], [0, 1]]


def test_loopless_kinds_reject_loops(looped_triangle):
    for kind in ("M11", "M11dot", "M22", "M23"):
        with pytest.raises(DomainError):
            build_pattern(looped_triangle, kind)
    with pytest.raises(DomainError):
        build_pattern(looped_triangle, "M202c")


def test_missing_variable(k3):
    with pytest.raises(DomainError):
        evaluate(build_pattern(k3, "M22"), {})


def test_tree_determinant_matches_oracle():
    path = LoopedGraph(3, ((1, 2), (2, 3)))
    mono = structured_determinant(path, "M11dot")
    assert not mono.zero and len(mono.factors) == 2
    assert symbolic_det_oracle(build_pattern(path, "M11dot")).matches_monomial(mono)


def test_non_tree_determinant_is_zero():
    g = LoopedGraph(3, ((1, 2), (1, 2)))
    assert structured_determinant(g, "M11dot").zero
    assert symbolic_det_oracle(build_pattern(g, "M11dot")).is_zero()


def test_looped_forest_determinant():
    g = LoopedGraph(3, ((1, 2),), (1, 3))
    mono = structured_determinant(g, "M101")
    assert len(mono.factors) == 3
    assert symbolic_det_oracle(build_pattern(g, "M101")).matches_monomial(mono)


def test_oracle_refuses_large_and_rectangular(k4):
    with pytest.raises(DomainError):
        symbolic_det_oracle(build_pattern(k4, "M22"))
    big = LoopedGraph(5, tuple((i, i + 1) for i in range(1, 5)), (1, 2, 3, 4, 5, 1))
    with pytest.raises(OracleRefusal):
        symbolic_det_oracle(build_pattern(big, "M202"))


@settings(max_examples=40, deadline=None)
@given(looped_graphs(max_n=5, loops=False))
def test_m11dot_rank_does_not_depend_on_dropped_column(g):
    ranks = {generic_rank(build_pattern(g, "M11dot", dropped_column=c), seed=1).rank for c in g.vertices}
    assert len(ranks) == 1


@settings(max_examples=40, deadline=None)
@given(looped_graphs(max_n=5))
def test_evaluations_never_exceed_generic_rank(g):
    p = build_pattern(g, "M202")
    r = generic_rank(p, seed=3).rank
    rng = random.Random(0)
    sample = {v: rng.randint(-3, 3) for v in p.variables()}
    assert evaluate(p, sample).rank() <= r


def test_all_small_looped_forests():
    # every graph with n <= 3 and m + c = n: closed form against the oracle
    for n in (1, 2, 3):
        pairs = list(itertools.combinations(range(1, n + 1), 2))
        for m in range(n + 1):
            for edges in itertools.combinations_with_replacement(pairs, m):
                for loops in itertools.combinations_with_replacement(range(1, n + 1), n - m):
                    g = LoopedGraph(n, edges, loops)
                    if g.c and max(loops.count(v) for v in set(loops)) > 2:
                        continue
                    if any(edges.count(e) > 2 for e in edges):
                        continue
                    mono = structured_determinant(g, "M101")
                    assert symbolic_det_oracle(build_pattern(g, "M101")).matches_monomial(mono)
