"""Cross-check suites run by ``rigidkit oracle``: fast code against brute force.

Each suite is a list of cases derived from ``(max_n, seed)``; cases are
split into shards that can run in worker processes. Results do not depend
on the number of workers.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from typing import Optional

from .errors import DomainError, NotDecomposable, OracleRefusal
from .graph import LoopedGraph
from .oracles import (
    GenSpec,
    brute_decomposition,
    brute_sparsity,
    enumerate_graphs,
    generate,
    generate_counted,
    random_coloring,
)
from .sparsity import check_profile, colored_decomposition, decompose_looped_forests, verify_forest_coloring

PROFILES = ((2, 2), (2, 3), "202", "203")
LIMITS = {"sparsity": 12, "decomposition": 8, "realization": 10}
EXHAUSTIVE_N = 3  # every graph with n <= 3 and m + c <= 10 is checked in the sparsity suite
RANDOM_CASES = {"sparsity": 300, "decomposition": 200, "realization": 40}


def _sparsity_case(g: LoopedGraph) -> Optional[str]:
    for prof in PROFILES:
        fast, slow = check_profile(g, prof), brute_sparsity(g, prof)
        if fast.cls != slow.cls:
            return f"profile {prof}: pebble game says {fast.cls}, brute force says {slow.cls}"
    return None


def _decomposition_case(g: LoopedGraph) -> Optional[str]:
    slow = brute_decomposition(g)
    try:
        fast = decompose_looped_forests(g)
    except NotDecomposable:
        fast = None
    if (fast is None) != (slow is None):
        return f"decomposition exists: fast {fast is not None}, brute force {slow is not None}"
    if fast is not None and not verify_forest_coloring(g, fast):
        return "returned coloring is not a looped-forest pair"
    if g.all_loops_colored():
        slow_c = brute_decomposition(g, colored=True)
        fast_c = colored_decomposition(g)
        if (fast_c is None) != (slow_c is None):
            return f"colored decomposition exists: fast {fast_c is not None}, brute force {slow_c is not None}"
        if fast_c is not None and not verify_forest_coloring(g, fast_c, colored=True):
            return "returned colored certificate is invalid"
    return None


def _realization_case(g: LoopedGraph, seed: int) -> Optional[str]:
    from .realize import (
        contracted_system,
        sample_generic_directions,
        sample_generic_sliders,
        solve_direction_network,
        solve_direction_slider,
    )

    if g.loops:
        d, sl = sample_generic_sliders(g, seed)
        rep = solve_direction_slider(g, d, sl)
        if not rep.unique or not rep.faithful:
            return "slider realization not unique and faithful"
        for k in range(g.m):
            if contracted_system(g, d, k, sl).solvable:
                return f"contraction of edge {g.edge_label(k)} is solvable"
        return None
    d = sample_generic_directions(g, seed)
    rep = solve_direction_network(g, d)
    if not rep.faithful:
        return "direction realization not faithful"
    return None


def _cases(suite, max_n, seed):
    rng = random.Random(f"{suite}:{max_n}:{seed}")
    if suite == "sparsity":
        for n in range(1, min(max_n, EXHAUSTIVE_N) + 1):
            yield from enumerate_graphs(n, 10)
        for _ in range(RANDOM_CASES[suite]):
            n = rng.randint(1, max_n)
            yield generate_counted(rng, n, rng.randint(0, min(2 * n + 1, n * (n - 1) + 2 * n)))
    elif suite == "decomposition":
        for _ in range(RANDOM_CASES[suite]):
            n = rng.randint(1, max_n)
            g = generate_counted(rng, n, 2 * n)
            yield random_coloring(rng, g) if rng.random() < 0.5 else g
    else:
        for k in range(RANDOM_CASES[suite]):
            cls = ("laman", "loopedLaman")[k % 2]
            n = rng.randint(2 if cls == "laman" else 1, max_n)
            yield (generate(GenSpec(n, cls, seed * 1000 + k)), seed * 1000 + k)


def _run_shard(args):
    suite, items = args
    out = []
    for index, item in items:
        if suite == "realization":
            g, s = item
            msg = _realization_case(g, s)
        else:
            g = item
            msg = _sparsity_case(g) if suite == "sparsity" else _decomposition_case(g)
        out.append((index, msg, g))
    return out


def run_suite(suite: str, max_n: int, seed=0, jobs=1) -> dict:
    if suite not in LIMITS:
        raise DomainError(f"unknown suite {suite!r}")
    if max_n < 1:
        raise DomainError("max-n must be >= 1")
    if max_n > LIMITS[suite]:
        raise OracleRefusal(f"suite {suite} refuses max-n {max_n} > {LIMITS[suite]}")
    items = list(enumerate(_cases(suite, max_n, seed)))
    jobs = max(1, int(jobs))
    if jobs == 1:
        results = _run_shard((suite, items))
    else:
        shards = [(suite, items[k::jobs]) for k in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(itertools.chain.from_iterable(pool.map(_run_shard, shards)))
        results.sort(key=lambda r: r[0])
    failures = [(i, msg, g) for i, msg, g in results if msg is not None]
    report = {
        "suite": suite,
        "max_n": max_n,
        "seed": seed,
        "cases": len(results),
        "passed": len(results) - len(failures),
        "failed": len(failures),
    }
    if failures:
        i, msg, g = failures[0]
        report["first_counterexample"] = {"case": i, "reason": msg, "graph": g}
    return report
