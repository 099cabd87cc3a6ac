"""Brute-force oracles and instance generators for cross-checking.

Nothing here calls the pebble game or the matroid-partition code to reach
a verdict; generators use the fast checkers only to steer construction and
validate with the brute-force oracle whenever it is affordable.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from .errors import DomainError, OracleRefusal, RigidkitError
from .graph import COLORS, LoopedGraph, induced_counts
from .sparsity import (
    GRADED,
    SPARSE,
    TIGHT,
    VIOLATING,
    ForestColoring,
    PebbleGame,
    SparsityVerdict,
    check_graded,
    check_sparse,
)

MAX_BRUTE_N = 12
MAX_BRUTE_M = 16
CLASSES = ("laman", "tight22", "loopedLaman", "looped22", "colorLoopedLaman")


class GenerationError(RigidkitError):
    pass


# -- sparsity by subset enumeration -------------------------------------------------


def _masks(g: LoopedGraph):
    edge_masks = [(1 << (i - 1)) | (1 << (j - 1)) for i, j in g.edges]
    loop_masks = [1 << (l.v - 1) for l in g.loops]
    return edge_masks, loop_masks


def _profile_rules(profile):
    """``[(k, l, scope)]`` count rules for a profile plus the tight total."""
    if isinstance(profile, str) and profile in GRADED:
        return [(2, 0, "all"), (2, GRADED[profile], "edges")], (2, 0)
    if isinstance(profile, str):
        profile = (int(profile[0]), int(profile[1]))
    k, l = profile
    return [(k, l, "all")], (k, l)


def brute_sparsity(g: LoopedGraph, profile) -> SparsityVerdict:
    """Ground truth over every vertex subset whose induced subgraph is nonempty."""
    if g.n > MAX_BRUTE_N:
        raise OracleRefusal(f"brute-force sparsity refused for n={g.n} > {MAX_BRUTE_N}")
    rules, (kt, lt) = _profile_rules(profile)
    name = profile if isinstance(profile, str) else f"{profile[0]}{profile[1]}"
    edge_masks, loop_masks = _masks(g)
    for k, l, scope in rules:
        for mask in range(1, 1 << g.n):
            me = sum(1 for em in edge_masks if em & mask == em)
            mc = sum(1 for lm in loop_masks if lm & mask) if scope == "all" else 0
            if me + mc == 0:
                continue
            size = bin(mask).count("1")
            if me + mc > k * size - l:
                vs = [v for v in g.vertices if mask >> (v - 1) & 1]
                return SparsityVerdict(VIOLATING, k, l, name, induced_counts(g, vs), scope)
    cls = TIGHT if g.m + g.c == kt * g.n - lt else SPARSE
    return SparsityVerdict(cls, kt, lt, name)


# -- decompositions by exhaustive colorings -----------------------------------------------


def _forest_components(n, pairs):
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra == rb:
            return None
        parent[ra] = rb
    return find


def brute_decomposition(g: LoopedGraph, colored=False) -> Optional[ForestColoring]:
    """Try all ``2^m`` edge colorings (and all loop splits when uncolored)."""
    if g.m > MAX_BRUTE_M or g.c > MAX_BRUTE_M:
        raise OracleRefusal(f"brute-force decomposition refused for m={g.m}, c={g.c} > {MAX_BRUTE_M}")
    if colored and not g.all_loops_colored():
        raise DomainError("colored decomposition needs every loop colored")
    loop_choices = [tuple(l.color for l in g.loops)] if colored else itertools.product(COLORS, repeat=g.c)
    loop_choices = list(loop_choices)
    for bits in itertools.product(COLORS, repeat=g.m):
        finds = {}
        for col in COLORS:
            finds[col] = _forest_components(g.n, [e for e, b in zip(g.edges, bits) if b == col])
        if any(f is None for f in finds.values()):
            continue
        roots = {col: {finds[col](v) for v in g.vertices} for col in COLORS}
        for loops in loop_choices:
            ok = True
            for col in COLORS:
                hits = [finds[col](l.v) for l, lc in zip(g.loops, loops) if lc == col]
                if len(hits) != len(set(hits)) or set(hits) != roots[col]:
                    ok = False
                    break
            if ok:
                return ForestColoring(tuple(bits), tuple(loops))
    return None


# -- enumeration ------------------------------------------------------------------


def enumerate_graphs(n: int, max_elements: int, loops=True) -> Iterator[LoopedGraph]:
    """Every labeled looped graph on ``n`` vertices with multiplicities <= 2."""
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    loop_range = range(3) if loops else range(1)
    for emult in itertools.product(range(3), repeat=len(pairs)):
        m = sum(emult)
        if m > max_elements:
            continue
        edges = tuple(p for p, k in zip(pairs, emult) for _ in range(k))
        for lmult in itertools.product(loop_range, repeat=n):
            if m + sum(lmult) > max_elements:
                continue
            yield LoopedGraph(n, edges, tuple(v for v, k in zip(range(1, n + 1), lmult) for _ in range(k)))


def enumerate_up_to_isomorphism(n: int, max_elements: int) -> Iterator[LoopedGraph]:
    """One labeled representative per isomorphism class of looped graphs.

    Edge-multiplicity vectors are reduced under all vertex permutations;
    loop vectors are then reduced under the stabilizer of the edge vector.
    """
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    index = {p: k for k, p in enumerate(pairs)}
    perms = list(itertools.permutations(range(1, n + 1)))
    pair_perm = np.array(
        [[index[tuple(sorted((perm[i - 1], perm[j - 1])))] for i, j in pairs] for perm in perms], dtype=np.int64
    ).reshape(len(perms), len(pairs))
    vectors = list(itertools.product(range(3), repeat=len(pairs)))
    vectors = np.array(vectors, dtype=np.int64).reshape(len(vectors), len(pairs))
    vectors = vectors[vectors.sum(axis=1) <= max_elements]
    weights = 3 ** np.arange(len(pairs), dtype=np.int64)[::-1]
    codes = vectors @ weights
    # images[k, p] = code of vectors[k] relabeled by perms[p]; edge (i,j) moves to pair_perm[p][slot]
    images = np.empty((len(vectors), len(perms)), dtype=np.int64)
    for p in range(len(perms)):
        moved = np.zeros_like(vectors)
        moved[:, pair_perm[p]] = vectors
        images[:, p] = moved @ weights
    reps = np.nonzero(images.min(axis=1) == codes)[0]
    loop_vectors = list(itertools.product(range(3), repeat=n))
    for r in reps:
        emult = [int(x) for x in vectors[r]]
        stab = [perms[p] for p in np.nonzero(images[r] == codes[r])[0]]
        edges = tuple(q for q, k in zip(pairs, emult) for _ in range(k))
        room = max_elements - sum(emult)
        for lmult in loop_vectors:
            if sum(lmult) > room:
                continue
            moved = []
            for perm in stab:
                img = [0] * n
                for v, k in enumerate(lmult):
                    img[perm[v] - 1] = k
                moved.append(tuple(img))
            if min(moved) != lmult:
                continue
            yield LoopedGraph(n, edges, tuple(v for v, k in zip(range(1, n + 1), lmult) for _ in range(k)))


def random_graph(rng: random.Random, n: int, m: int, c: int, simple=False) -> LoopedGraph:
    """Uniformly random element choice subject to multiplicity <= 2 (1 if ``simple``)."""
    cap = 1 if simple else 2
    slots = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)] * cap
    if m > len(slots) or c > 2 * n:
        raise DomainError(f"cannot place m={m}, c={c} on n={n}")
    edges = rng.sample(slots, m)
    loops = rng.sample([v for v in range(1, n + 1) for _ in range(2)], c)
    edges = [e if rng.random() < 0.5 else (e[1], e[0]) for e in edges]
    return LoopedGraph(n, tuple(edges), tuple(loops))


def random_coloring(rng: random.Random, g: LoopedGraph) -> LoopedGraph:
    return g.recolored([rng.choice(COLORS) for _ in g.loops])


# -- generators ----------------------------------------------------------------------


@dataclass(frozen=True)
class GenSpec:
    n: int
    cls: str
    seed: int = 0

    def __post_init__(self):
        if self.cls not in CLASSES:
            raise DomainError(f"unknown class {self.cls!r}")
        if self.n < 1 or (self.cls == "laman" and self.n < 2):
            raise DomainError(f"class {self.cls} infeasible on n={self.n}")


def _henneberg(rng, n, tight22):
    """Henneberg-I (new vertex, two edges) and Henneberg-II (edge split) moves."""
    if tight22:
        edges = []
        start = 1
    else:
        edges = [(1, 2)]
        start = 2
    for v in range(start + 1, n + 1):
        old = list(range(1, v))
        if edges and rng.random() < 0.5 and len(old) >= 2:
            k = rng.randrange(len(edges))
            a, b = edges.pop(k)
            third = [u for u in old if u not in (a, b)] if not tight22 else old
            if not third:
                edges.append((a, b))
            else:
                w = rng.choice(third)
                edges += [(a, v), (b, v), (w, v)]
                continue
        if tight22:
            picks = [rng.choice(old), rng.choice(old)]
        else:
            picks = rng.sample(old, 2)
        edges += [(p, v) for p in picks]
    return LoopedGraph(n, tuple(edges))


def _greedy_basis(rng, n, profile):
    """Random-order greedy basis of the graded matroid over two edges per pair and two loops per vertex."""
    ground = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)] * 2 + [
        (v, v) for v in range(1, n + 1)
    ] * 2
    rng.shuffle(ground)
    everything = PebbleGame(n, 2, 0)
    edges_only = PebbleGame(n, 2, GRADED[profile])
    edges, loops = [], []
    for u, v in ground:
        if everything.insert(u, v) is None:
            continue
        if u == v:
            loops.append(u)
            continue
        if edges_only.insert(u, v) is None:
            everything.remove(u, v)
            continue
        edges.append((u, v))
    return LoopedGraph(n, tuple(edges), tuple(loops))


def _valid(g, profile):
    if g.n <= MAX_BRUTE_N:
        return brute_sparsity(g, profile).is_tight
    return check_graded(g, profile).is_tight if profile in GRADED else check_sparse(g, *profile).is_tight


def generate(spec: GenSpec, retries=64) -> LoopedGraph:
    """A graph of the requested class, validated by brute force (n <= 12)."""
    rng = random.Random(f"{spec.cls}:{spec.n}:{spec.seed}")
    for _ in range(retries):
        if spec.cls == "laman":
            g, profile = _henneberg(rng, spec.n, tight22=False), (2, 3)
        elif spec.cls == "tight22":
            g, profile = _henneberg(rng, spec.n, tight22=True), (2, 2)
        elif spec.cls in ("looped22",):
            g, profile = _greedy_basis(rng, spec.n, "202"), "202"
        else:
            g, profile = _greedy_basis(rng, spec.n, "203"), "203"
        if spec.cls == "colorLoopedLaman":
            g = random_coloring(rng, g)
            if g.m > MAX_BRUTE_M:
                raise OracleRefusal(f"colored generation validates by brute force; m={g.m} > {MAX_BRUTE_M}")
            if brute_decomposition(g, colored=True) is None:
                continue
        if _valid(g, profile):
            return g
    raise GenerationError(f"could not generate {spec.cls} on n={spec.n} in {retries} tries")


def generate_non_laman(rng: random.Random, n: int, require_22_sparse=True, retries=500) -> LoopedGraph:
    """Simple connected graph with ``m = 2n-3`` that is not Laman."""
    for _ in range(retries):
        g = random_graph(rng, n, 2 * n - 3, 0, simple=True)
        if not g.is_connected():
            continue
        if brute_sparsity(g, (2, 3)).is_tight:
            continue
        if require_22_sparse and not brute_sparsity(g, (2, 2)).is_sparse:
            continue
        return g
    raise GenerationError(f"no non-Laman graph on n={n}")


def generate_counted(rng: random.Random, n: int, total: int, simple=False, loops=True) -> LoopedGraph:
    """Random graph with ``m + c = total`` and a random edge/loop split."""
    max_c = min(total, 2 * n) if loops else 0
    pairs = n * (n - 1) // 2 * (1 if simple else 2)
    lo = max(0, total - pairs)
    if lo > max_c:
        raise DomainError(f"cannot place {total} elements on n={n}")
    c = rng.randint(lo, max_c)
    return random_graph(rng, n, total - c, c, simple=simple)
