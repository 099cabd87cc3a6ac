import itertools
import random

import pytest

from rigidkit.errors import DomainError, OracleRefusal
from rigidkit.graph import LoopedGraph
from rigidkit.oracles import (
    CLASSES,
    GenSpec,
    brute_decomposition,
    brute_sparsity,
    enumerate_graphs,
    enumerate_up_to_isomorphism,
    generate,
    generate_counted,
)
from rigidkit.sparsity import check_color_looped_laman, check_graded, check_sparse

from .conftest import TRIANGLE


def test_brute_examples(k4, looped_triangle):
    assert brute_sparsity(k4, (2, 2)).is_tight
    assert not brute_sparsity(k4, (2, 3)).is_sparse
    doubled = LoopedGraph(2, ((1, 2), (1, 2)), (1, 1))
    assert not brute_sparsity(doubled, "203").is_sparse
    assert brute_sparsity(doubled, "202").is_tight
    assert brute_decomposition(looped_triangle) is not None


def test_refusals():
    with pytest.raises(OracleRefusal):
        brute_sparsity(LoopedGraph(13), (2, 2))
    big = LoopedGraph(9, tuple((i, i + 1) for i in range(1, 9)) * 2 + ((1, 9),))
    with pytest.raises(OracleRefusal):
        brute_decomposition(big)


def test_enumeration_counts():
    # n = 2: edge multiplicity 0..2 times loop multiplicities 0..2 per vertex
    assert sum(1 for _ in enumerate_graphs(2, 10)) == 27
    assert sum(1 for _ in enumerate_graphs(3, 1, loops=False)) == 4


def test_generator_examples():
    assert sorted(generate(GenSpec(3, "laman", 0)).edges) == list(TRIANGLE)
    g = generate(GenSpec(1, "loopedLaman", 0))
    assert (g.m, g.c) == (0, 2)
    assert check_sparse(generate(GenSpec(4, "tight22", 0)), 2, 2).is_tight


def test_infeasible_specs():
    with pytest.raises(DomainError):
        GenSpec(1, "laman")
    with pytest.raises(DomainError):
        GenSpec(3, "nope")


@pytest.mark.parametrize("cls", CLASSES)
def test_generated_classes_are_valid(cls):
    for seed in range(5):
        for n in (2, 4, 6):
            g = generate(GenSpec(n, cls, seed))
            if cls == "laman":
                assert check_sparse(g, 2, 3).is_tight and g.is_simple()
            elif cls == "tight22":
                assert check_sparse(g, 2, 2).is_tight
            elif cls == "looped22":
                assert check_graded(g, "202").is_tight
            elif cls == "loopedLaman":
                assert check_graded(g, "203").is_tight
            else:
                assert check_color_looped_laman(g).ok


def test_generate_counted_total():
    rng = random.Random(0)
    for n in range(1, 7):
        g = generate_counted(rng, n, 2 * n)
        assert g.m + g.c == 2 * n


def _canonical(g):
    best = None
    for perm in itertools.permutations(g.vertices):
        key = (
            tuple(sorted(tuple(sorted((perm[i - 1], perm[j - 1]))) for i, j in g.edges)),
            tuple(sorted(perm[l.v - 1] for l in g.loops)),
        )
        best = key if best is None or key < best else best
    return best


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_isomorphism_classes_hit_exactly_once(n):
    classes = {_canonical(g) for g in enumerate_graphs(n, 6)}
    reps = [_canonical(g) for g in enumerate_up_to_isomorphism(n, 6)]
    assert len(reps) == len(set(reps)) == len(classes)
