"""Looped multigraphs: the data model behind every other module.

Vertices are ``1..n``. Edges are stored as ordered pairs ``(i, j)``; the
order fixes the sign convention of matrix rows (the ``+`` entries sit in
the columns of ``i``) but multiplicity treats them as unordered. The edge
list order, followed by the loop list order, is the canonical row order.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import CapExceeded, DomainError

RED = "red"
BLUE = "blue"
COLORS = (RED, BLUE)
MAX_MULTIPLICITY = 2


class Loop(NamedTuple):
    v: int
    color: Optional[str] = None


@dataclass(frozen=True)
class SubgraphCounts:
    vertices: frozenset
    edges: int
    loops: int

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def elements(self) -> int:
        return self.edges + self.loops


def _key(i, j):
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class LoopedGraph:
    n: int
    edges: tuple = ()
    loops: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(int(x) for x in e) for e in self.edges))
        object.__setattr__(
            self, "loops", tuple(l if isinstance(l, Loop) else _as_loop(l) for l in self.loops)
        )

    # -- construction helpers -------------------------------------------------

    @classmethod
    def simple(cls, n, edges, loops=()):
        return cls(n, tuple(edges), tuple(loops))

    @classmethod
    def complete(cls, n):
        return cls(n, tuple((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)))

    def with_loops(self, loops) -> "LoopedGraph":
        return LoopedGraph(self.n, self.edges, tuple(self.loops) + tuple(loops))

    def without_loop(self, index) -> "LoopedGraph":
        loops = self.loops[:index] + self.loops[index + 1 :]
        return LoopedGraph(self.n, self.edges, loops)

    def edge_subgraph(self) -> "LoopedGraph":
        """The same vertex set with every loop dropped."""
        return LoopedGraph(self.n, self.edges, ())

    def recolored(self, colors) -> "LoopedGraph":
        return LoopedGraph(self.n, self.edges, tuple(Loop(l.v, col) for l, col in zip(self.loops, colors)))

    # -- basic counts ---------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def c(self) -> int:
        return len(self.loops)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def edge_copy_indices(self) -> list:
        """Copy index (1 or 2, more for invalid graphs) of each edge."""
        seen = Counter()
        out = []
        for i, j in self.edges:
            seen[_key(i, j)] += 1
            out.append(seen[_key(i, j)])
        return out

    def loop_copy_indices(self) -> list:
        seen = Counter()
        out = []
        for loop in self.loops:
            seen[loop.v] += 1
            out.append(seen[loop.v])
        return out

    def edge_label(self, index) -> str:
        i, j = self.edges[index]
        return f"{i},{j}#{self.edge_copy_indices()[index]}"

    def loop_label(self, index) -> str:
        return f"{self.loops[index].v}#{self.loop_copy_indices()[index]}"

    def is_simple(self) -> bool:
        return not self.loops and all(k == 1 for k in self.edge_copy_indices())

    def all_loops_colored(self) -> bool:
        return all(l.color in COLORS for l in self.loops)

    def adjacency(self) -> dict:
        adj = {v: [] for v in self.vertices}
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return adj

    def components(self) -> list:
        """Connected components of the edge graph, each a sorted vertex list."""
        parent = list(range(self.n + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, j in self.edges:
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
        groups = {}
        for v in self.vertices:
            groups.setdefault(find(v), []).append(v)
        return [groups[r] for r in sorted(groups)]

    def is_connected(self) -> bool:
        return self.n >= 1 and len(self.components()) == 1


def _as_loop(item) -> Loop:
    if isinstance(item, int):
        return Loop(item)
    if isinstance(item, dict):
        return Loop(int(item["v"]), item.get("color"))
    v, *rest = item
    return Loop(int(v), rest[0] if rest else None)


def validate(g: LoopedGraph) -> Optional[str]:
    """Return ``None`` for a valid graph, else a description of the first violation."""
    if g.n < 1:
        return f"vertex count {g.n} < 1"
    pairs = Counter()
    for i, j in g.edges:
        for v in (i, j):
            if not 1 <= v <= g.n:
                return f"edge {{{i},{j}}} endpoint {v} outside 1..{g.n}"
        if i == j:
            return f"edge {{{i},{j}}} is a loop; list it under loops"
        pairs[_key(i, j)] += 1
        if pairs[_key(i, j)] > MAX_MULTIPLICITY:
            a, b = _key(i, j)
            return f"edge {{{a},{b}}} multiplicity {pairs[_key(i, j)]}"
    per_vertex = Counter()
    for loop in g.loops:
        if not 1 <= loop.v <= g.n:
            return f"loop on {loop.v} outside 1..{g.n}"
        if loop.color is not None and loop.color not in COLORS:
            return f"loop on {loop.v} has unknown color {loop.color!r}"
        per_vertex[loop.v] += 1
        if per_vertex[loop.v] > MAX_MULTIPLICITY:
            return f"loop on {loop.v} multiplicity {per_vertex[loop.v]}"
    return None


def require_valid(g: LoopedGraph) -> LoopedGraph:
    problem = validate(g)
    if problem is not None:
        raise DomainError(problem)
    return g


def induced_counts(g: LoopedGraph, vs: Iterable[int]) -> SubgraphCounts:
    vs = frozenset(vs)
    if not vs:
        raise DomainError("induced_counts needs a nonempty vertex set")
    bad = [v for v in vs if not 1 <= v <= g.n]
    if bad:
        raise DomainError(f"vertices {sorted(bad)} outside 1..{g.n}")
    m = sum(1 for i, j in g.edges if i in vs and j in vs)
    c = sum(1 for loop in g.loops if loop.v in vs)
    return SubgraphCounts(vs, m, c)


@dataclass(frozen=True)
class Contraction:
    """A contracted graph plus maps from its elements back to the original."""

    graph: LoopedGraph
    edge_origin: tuple
    loop_origin: tuple
    kept: int
    removed: int
    vertex_map: dict = field(default_factory=dict)


def _edge_index(g: LoopedGraph, edge) -> int:
    if isinstance(edge, int):
        if not 0 <= edge < g.m:
            raise DomainError(f"edge index {edge} out of range")
        return edge
    i, j = edge
    for k, e in enumerate(g.edges):
        if _key(*e) == _key(i, j):
            return k
    raise DomainError(f"edge {{{i},{j}}} not in graph")


def contract_with_maps(g: LoopedGraph, edge, keep=None, strict=True) -> Contraction:
    """Contract ``edge`` (an edge index or a vertex pair) and track element origins.

    With ``strict`` the multiplicity cap is enforced and :class:`CapExceeded`
    raised; without it loops may pile up beyond two on the surviving vertex,
    which is what contracting an edge of a looped-Laman graph needs.
    """
    index = _edge_index(g, edge)
    i, j = g.edges[index]
    if keep is None:
        keep = min(i, j)
    if keep not in (i, j):
        raise DomainError(f"surviving vertex {keep} is not an endpoint of {{{i},{j}}}")
    gone = j if keep == i else i

    def relabel(v):
        v = keep if v == gone else v
        return v - 1 if v > gone else v

    vertex_map = {v: relabel(v) for v in g.vertices}
    contracted = _key(i, j)
    edges, edge_origin = [], []
    pairs = Counter()
    for k, (a, b) in enumerate(g.edges):
        if k == index or _key(a, b) == contracted:
            continue
        e = (relabel(a), relabel(b))
        pairs[_key(*e)] += 1
        if strict and pairs[_key(*e)] > MAX_MULTIPLICITY:
            raise CapExceeded(f"contraction creates edge {{{e[0]},{e[1]}}} with multiplicity {pairs[_key(*e)]}", e)
        edges.append(e)
        edge_origin.append(k)
    loops, loop_origin = [], []
    per_vertex = Counter()
    for k, loop in enumerate(g.loops):
        v = relabel(loop.v)
        per_vertex[v] += 1
        if strict and per_vertex[v] > MAX_MULTIPLICITY:
            raise CapExceeded(f"contraction creates loop on {v} with multiplicity {per_vertex[v]}", v)
        loops.append(Loop(v, loop.color))
        loop_origin.append(k)
    out = LoopedGraph(g.n - 1, tuple(edges), tuple(loops))
    return Contraction(out, tuple(edge_origin), tuple(loop_origin), keep, gone, vertex_map)


def contract(g: LoopedGraph, edge, keep=None, strict=True) -> LoopedGraph:
    """The contraction ``G/ij``: merge the endpoints, drop every copy of ``ij``."""
    return contract_with_maps(g, edge, keep=keep, strict=strict).graph


def edge_multiset(g: LoopedGraph) -> Counter:
    return Counter(_key(*e) for e in g.edges)


def loop_multiset(g: LoopedGraph) -> Counter:
    return Counter(g.loops)


def same_multigraph(g: LoopedGraph, h: LoopedGraph) -> bool:
    return g.n == h.n and edge_multiset(g) == edge_multiset(h) and loop_multiset(g) == loop_multiset(h)


def relabel(g: LoopedGraph, perm: Sequence[int]) -> LoopedGraph:
    """Apply ``v -> perm[v-1]`` to every vertex."""
    edges = tuple((perm[i - 1], perm[j - 1]) for i, j in g.edges)
    loops = tuple(Loop(perm[l.v - 1], l.color) for l in g.loops)
    return LoopedGraph(g.n, edges, loops)
