"""Direction networks and direction-slider networks, solved exactly over Q.

A direction network puts ``p_i - p_j`` parallel to ``d_ij``; each edge
gives the row ``<p_i - p_j, d_ij_perp> = 0`` with ``d_perp = (-b, a)``.
A slider on vertex ``i`` adds ``<p_i, n> = s``. Faithfulness (no edge with
coincident endpoints) is decided by exact equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import DomainError, NonGenericSamplingExhausted
from .genmat import NumericMatrix, build_pattern, edge_var, evaluate, loop_var
from .graph import BLUE, RED, LoopedGraph, contract_with_maps
from .linalg import nullspace, solve
from .sparsity import check_graded, check_sparse, graded_rank, sparsity_rank

MAX_ROUNDS = 16
AXIS_NORMALS = {RED: (1, 0), BLUE: (0, 1)}


def _vec(v):
    a, b = v
    return (Fraction(a), Fraction(b))


@dataclass(frozen=True)
class DirectionAssignment:
    directions: tuple

    def __post_init__(self):
        dirs = tuple(_vec(d) for d in self.directions)
        for k, d in enumerate(dirs):
            if d == (0, 0):
                raise DomainError(f"direction of edge {k} is the zero vector")
        object.__setattr__(self, "directions", dirs)

    def __len__(self):
        return len(self.directions)

    def __getitem__(self, k):
        return self.directions[k]


@dataclass(frozen=True)
class SliderAssignment:
    normals: tuple
    offsets: tuple

    def __post_init__(self):
        normals = tuple(_vec(n) for n in self.normals)
        offsets = tuple(Fraction(s) for s in self.offsets)
        if len(normals) != len(offsets):
            raise DomainError("need one offset per slider normal")
        for k, nv in enumerate(normals):
            if nv == (0, 0):
                raise DomainError(f"normal of slider {k} is the zero vector")
        object.__setattr__(self, "normals", normals)
        object.__setattr__(self, "offsets", offsets)

    @classmethod
    def axis_parallel(cls, g: LoopedGraph, offsets):
        """Red loops slide on ``x = s``, blue loops on ``y = s``."""
        if not g.all_loops_colored():
            raise DomainError("axis-parallel sliders need every loop colored")
        return cls(tuple(AXIS_NORMALS[l.color] for l in g.loops), tuple(offsets))

    def __len__(self):
        return len(self.normals)


@dataclass(frozen=True)
class Realization:
    points: tuple
    collapsed_edges: tuple
    normalization: str

    @property
    def faithful(self) -> bool:
        return not self.collapsed_edges


@dataclass(frozen=True)
class SolveReport:
    graph: LoopedGraph
    system: NumericMatrix
    rank: int
    kernel_dimension: int
    solvable: bool
    unique: bool
    realization: Optional[Realization] = None
    kernel_basis: tuple = ()
    rhs: tuple = ()
    underdetermined: bool = False
    particular: tuple = ()  # one solution (free variables zero) when not unique

    @property
    def faithful(self) -> bool:
        return self.realization is not None and self.realization.faithful


def points_from_vector(x):
    return tuple((x[2 * i], x[2 * i + 1]) for i in range(len(x) // 2))


def collapsed_edges(g: LoopedGraph, points) -> tuple:
    return tuple(k for k, (i, j) in enumerate(g.edges) if points[i - 1] == points[j - 1])


def _check_lengths(g, d=None, sl=None):
    if d is not None and len(d) != g.m:
        raise DomainError(f"{len(d)} directions for {g.m} edges")
    if sl is not None and len(sl) != g.c:
        raise DomainError(f"{len(sl)} sliders for {g.c} loops")


def _edge_values(g, d):
    values = {}
    for e, (a, b) in enumerate(d.directions):
        # substitute the perpendicular (-b, a) into the (a, b) slots
        values[edge_var(g, e, "a")] = -b
        values[edge_var(g, e, "b")] = a
    return values


def assemble_direction_system(g: LoopedGraph, d: DirectionAssignment) -> NumericMatrix:
    if g.loops:
        raise DomainError("direction networks are loopless; use the slider system")
    _check_lengths(g, d)
    return evaluate(build_pattern(g, "M22"), _edge_values(g, d))


def assemble_slider_system(g: LoopedGraph, d: DirectionAssignment, sl: SliderAssignment):
    """Return ``(matrix, rhs)`` with edge rows then slider rows."""
    if d is None or sl is None:
        raise DomainError("slider systems need both directions and sliders")
    _check_lengths(g, d, sl)
    values = _edge_values(g, d)
    for k, (c, dd) in enumerate(sl.normals):
        values[loop_var(g, k, "c")] = c
        values[loop_var(g, k, "d")] = dd
    matrix = evaluate(build_pattern(g, "M202"), values)
    rhs = tuple([Fraction(0)] * g.m + list(sl.offsets))
    return matrix, rhs


def direction_rank(g: LoopedGraph, d: DirectionAssignment) -> int:
    return assemble_direction_system(g, d).rank()


def solve_direction_network(g: LoopedGraph, d: DirectionAssignment) -> SolveReport:
    """Kernel of the homogeneous system, normalized by pinning.

    Kernel dimension 2 leaves only translations: every edge is collapsed.
    Kernel dimension 3 pins ``p1 = (0, 0)`` and then the first coordinate
    among ``x2, y2, x3, ...`` that can be set to 1.
    """
    if not g.is_connected():
        raise DomainError("direction network must be connected")
    system = assemble_direction_system(g, d)
    n = g.n
    rows = system.as_lists()
    kernel = nullspace(rows, 2 * n) if rows else nullspace([], 2 * n)
    rank = 2 * n - len(kernel)
    base = dict(graph=g, system=system, rank=rank, kernel_dimension=len(kernel), solvable=True)
    if len(kernel) == 2:
        points = tuple((Fraction(0), Fraction(0)) for _ in range(n))
        real = Realization(points, collapsed_edges(g, points), "translations only: all points at (0,0)")
        return SolveReport(**base, unique=True, realization=real, kernel_basis=tuple(map(tuple, kernel)))
    if len(kernel) == 3:
        pin = [[Fraction(int(c == j)) for c in range(2 * n)] for j in (0, 1)]
        (direction,) = nullspace(rows + pin, 2 * n)
        coord = next(c for c in range(2, 2 * n) if direction[c] != 0)
        x = [v / direction[coord] for v in direction]
        points = points_from_vector(x)
        label = f"p1=(0,0), {'xy'[coord % 2]}{coord // 2 + 1}=1"
        real = Realization(points, collapsed_edges(g, points), label)
        return SolveReport(**base, unique=True, realization=real, kernel_basis=tuple(map(tuple, kernel)))
    return SolveReport(**base, unique=False, underdetermined=True, kernel_basis=tuple(map(tuple, kernel)))


def solve_direction_slider(g: LoopedGraph, d: DirectionAssignment, sl: SliderAssignment) -> SolveReport:
    """Exact solve of the inhomogeneous direction-slider system."""
    system, rhs = assemble_slider_system(g, d, sl)
    n = g.n
    rank, x, kernel = solve(system.as_lists(), list(rhs), 2 * n)
    base = dict(graph=g, system=system, rank=rank, kernel_dimension=len(kernel), rhs=rhs)
    if x is None:
        return SolveReport(**base, solvable=False, unique=False, kernel_basis=tuple(map(tuple, kernel)))
    if kernel:
        return SolveReport(
            **base,
            solvable=True,
            unique=False,
            underdetermined=True,
            kernel_basis=tuple(map(tuple, kernel)),
            particular=tuple(x),
        )
    points = points_from_vector(x)
    real = Realization(points, collapsed_edges(g, points), "none (inhomogeneous system)")
    return SolveReport(**base, solvable=True, unique=True, realization=real)


def solve_axis_parallel(g: LoopedGraph, d: DirectionAssignment, offsets) -> SolveReport:
    return solve_direction_slider(g, d, SliderAssignment.axis_parallel(g, offsets))


@dataclass(frozen=True)
class ContractedNetwork:
    graph: LoopedGraph
    directions: DirectionAssignment
    sliders: Optional[SliderAssignment]
    kept: int
    removed: int


def contract_network(g, d, edge, sl=None, strict=None) -> ContractedNetwork:
    """Contract ``edge`` and carry the data of the surviving edges and loops along.

    Slider networks never enforce the multiplicity cap: contracting an edge
    of a looped-Laman graph can leave three loops on the merged vertex.
    """
    if strict is None:
        strict = sl is None
    con = contract_with_maps(g, edge, strict=strict)
    dirs = DirectionAssignment(tuple(d[k] for k in con.edge_origin))
    sliders = None
    if sl is not None:
        sliders = SliderAssignment(
            tuple(sl.normals[k] for k in con.loop_origin), tuple(sl.offsets[k] for k in con.loop_origin)
        )
    return ContractedNetwork(con.graph, dirs, sliders, con.kept, con.removed)


def contracted_system(g, d, edge, sl=None) -> SolveReport:
    """Solve the network on ``G/edge`` with the inherited data."""
    net = contract_network(g, d, edge, sl)
    if sl is None:
        return solve_direction_network(net.graph, net.directions)
    return solve_direction_slider(net.graph, net.directions, net.sliders)


# -- genericity -------------------------------------------------------------------


@dataclass(frozen=True)
class GenericityCheck:
    ok: bool
    reason: str = ""


def check_generic_directions(g: LoopedGraph, d: DirectionAssignment, contractions=True) -> GenericityCheck:
    """Explicit rank conditions on directions for a Laman graph.

    The main system must have rank ``2n-3`` and, with ``contractions``,
    every ``G/ij`` must have rank ``2(n-1)-2``. Without ``contractions``
    only the first condition is tested, with the target replaced by the
    (2,2)-matroid rank of ``g`` so that non-Laman graphs can be sampled.
    """
    target = 2 * g.n - 3 if contractions else sparsity_rank(g, 2, 2)
    rank = direction_rank(g, d)
    if rank != target:
        return GenericityCheck(False, f"system rank {rank} != {target}")
    if contractions:
        for k in range(g.m):
            net = contract_network(g, d, k, strict=False)
            r = direction_rank(net.graph, net.directions) if net.graph.m else 0
            if r != 2 * (g.n - 1) - 2:
                return GenericityCheck(False, f"contraction of edge {g.edge_label(k)} has rank {r} != {2 * g.n - 4}")
    return GenericityCheck(True)


def check_generic_sliders(
    g: LoopedGraph, d: DirectionAssignment, sl: SliderAssignment, contractions=True
) -> GenericityCheck:
    """Rank ``2n`` for the slider system and, with ``contractions``, no solution after any contraction.

    Without ``contractions`` the rank target is the (2,0,2)-matroid rank of
    ``g``, so graphs outside the looped-Laman class can be sampled too.
    """
    system, rhs = assemble_slider_system(g, d, sl)
    rank = system.rank()
    target = 2 * g.n if contractions else graded_rank(g, "202")
    if rank != target:
        return GenericityCheck(False, f"slider system rank {rank} != {target}")
    if contractions:
        for k in range(g.m):
            if contracted_system(g, d, k, sl).solvable:
                return GenericityCheck(False, f"contraction of edge {g.edge_label(k)} is solvable")
    return GenericityCheck(True)


def _stream(seed, round_):
    return np.random.default_rng([int(seed), round_])


def _draw_vector(rng, bound):
    while True:
        v = tuple(int(x) for x in rng.integers(-bound, bound + 1, size=2))
        if v != (0, 0):
            return v


def _require_bound(bound):
    if bound < 2:
        raise DomainError(f"sampling bound must be >= 2, got {bound}")


def sample_generic_directions(g: LoopedGraph, seed=0, bound=1000, contractions=True) -> DirectionAssignment:
    """Integer directions in ``[-bound, bound]`` passing :func:`check_generic_directions`."""
    _require_bound(bound)
    for round_ in range(MAX_ROUNDS):
        rng = _stream(seed, round_)
        d = DirectionAssignment(tuple(_draw_vector(rng, bound) for _ in range(g.m)))
        if check_generic_directions(g, d, contractions).ok:
            return d
    raise NonGenericSamplingExhausted(
        f"no generic directions after {MAX_ROUNDS} rounds (seed {seed}, bound {bound}); bound too small or graph not Laman"
    )


def sample_generic_sliders(g: LoopedGraph, seed=0, bound=1000, contractions=True, axis_parallel=False):
    """Directions plus sliders passing :func:`check_generic_sliders`.

    With ``axis_parallel`` the normals come from the loop colors and only
    directions and offsets are sampled.
    """
    _require_bound(bound)
    if axis_parallel and not g.all_loops_colored():
        raise DomainError("axis-parallel sampling needs every loop colored")
    for round_ in range(MAX_ROUNDS):
        rng = _stream(seed, round_)
        d = DirectionAssignment(tuple(_draw_vector(rng, bound) for _ in range(g.m)))
        if axis_parallel:
            normals = tuple(AXIS_NORMALS[l.color] for l in g.loops)
        else:
            normals = tuple(_draw_vector(rng, bound) for _ in range(g.c))
        offsets = tuple(int(x) for x in rng.integers(-bound, bound + 1, size=g.c))
        sl = SliderAssignment(normals, offsets)
        if check_generic_sliders(g, d, sl, contractions).ok:
            return d, sl
    raise NonGenericSamplingExhausted(
        f"no generic slider data after {MAX_ROUNDS} rounds (seed {seed}, bound {bound}); bound too small or graph not looped-Laman"
    )


def is_solution(system_rows, x, rhs=None) -> bool:
    rhs = rhs if rhs is not None else [0] * len(system_rows)
    return all(sum(a * b for a, b in zip(row, x)) == r for row, r in zip(system_rows, rhs))


def translate(points, t):
    tx, ty = t
    return tuple((x + tx, y + ty) for x, y in points)


def flatten(points):
    return [c for p in points for c in p]


def is_laman(g: LoopedGraph) -> bool:
    return not g.loops and check_sparse(g, 2, 3).is_tight


def is_looped_laman(g: LoopedGraph) -> bool:
    return check_graded(g, "203").is_tight
