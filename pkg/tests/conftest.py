from __future__ import annotations

import pytest
from hypothesis import strategies as st

from rigidkit.graph import COLORS, Loop, LoopedGraph

K4_EDGES = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))
TRIANGLE = ((1, 2), (1, 3), (2, 3))


@pytest.fixture
def k4():
    return LoopedGraph(4, K4_EDGES)


@pytest.fixture
def k3():
    return LoopedGraph(3, TRIANGLE)


@pytest.fixture
def looped_triangle():
    return LoopedGraph(3, TRIANGLE, (1, 2, 3))


@st.composite
def looped_graphs(draw, max_n=6, max_elements=10, loops=True, colored=False, min_n=1):
    """Valid looped graphs: multiplicity at most 2 for every edge and loop."""
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    emult = draw(st.lists(st.integers(0, 2), min_size=len(pairs), max_size=len(pairs)))
    lmult = draw(st.lists(st.integers(0, 2 if loops else 0), min_size=n, max_size=n))
    edges = [p for p, k in zip(pairs, emult) for _ in range(k)][:max_elements]
    room = max(0, max_elements - len(edges))
    vs = [v for v, k in zip(range(1, n + 1), lmult) for _ in range(k)][:room]
    if colored:
        cols = draw(st.lists(st.sampled_from(COLORS), min_size=len(vs), max_size=len(vs)))
        return LoopedGraph(n, tuple(edges), tuple(Loop(v, c) for v, c in zip(vs, cols)))
    return LoopedGraph(n, tuple(edges), tuple(vs))
