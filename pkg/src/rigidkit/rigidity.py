"""Bar-joint and bar-slider rigidity matrices, pinning, and the substitution argument.

The generic deciders build a witness framework from a generic direction
(or direction-slider) network and read rigidity off the exact rank of the
rigidity matrix at the realized points. They also compute the
combinatorial verdict and refuse to answer when the two disagree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import DomainError, InternalConsistencyError
from .genmat import NumericMatrix, build_pattern, evaluate, point_assignment, slider_assignment
from .graph import LoopedGraph
from .linalg import nullspace, rank_exact
from .realize import (
    DirectionAssignment,
    Realization,
    SliderAssignment,
    assemble_direction_system,
    assemble_slider_system,
    points_from_vector,
    sample_generic_directions,
    sample_generic_sliders,
    solve_direction_network,
    solve_direction_slider,
)
from .sparsity import check_graded, check_sparse


@dataclass(frozen=True)
class Framework:
    """Points for every vertex and a line through the point for every loop."""

    graph: LoopedGraph
    points: tuple
    normals: tuple = ()
    offsets: Optional[tuple] = None

    def __post_init__(self):
        g = self.graph
        points = tuple((Fraction(x), Fraction(y)) for x, y in self.points)
        if len(points) != g.n:
            raise DomainError(f"{len(points)} points for {g.n} vertices")
        normals = tuple((Fraction(c), Fraction(d)) for c, d in self.normals)
        if len(normals) != g.c:
            raise DomainError(f"{len(normals)} slider normals for {g.c} loops")
        derived = tuple(
            points[l.v - 1][0] * nv[0] + points[l.v - 1][1] * nv[1] for l, nv in zip(g.loops, normals)
        )
        if self.offsets is not None:
            given = tuple(Fraction(s) for s in self.offsets)
            bad = [k for k, (a, b) in enumerate(zip(given, derived)) if a != b]
            if bad:
                raise DomainError(f"slider {g.loop_label(bad[0])} does not pass through its vertex")
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "normals", normals)
        object.__setattr__(self, "offsets", derived)

    @property
    def lengths(self) -> tuple:
        """Squared bar lengths, derived from the points."""
        out = []
        for i, j in self.graph.edges:
            (xi, yi), (xj, yj) = self.points[i - 1], self.points[j - 1]
            out.append((xi - xj) ** 2 + (yi - yj) ** 2)
        return tuple(out)

    @property
    def sliders(self) -> SliderAssignment:
        return SliderAssignment(self.normals, self.offsets)


@dataclass(frozen=True)
class RigidityReport:
    kind: str
    rank: int
    target: int
    minimal: Optional[bool] = None

    @property
    def pinned(self) -> bool:
        return self.kind == "M203" and self.rank == self.target

    @property
    def rigid(self) -> bool:
        return self.kind == "M23" and self.rank == self.target


def build_rigidity_matrix(fw: Framework, kind: str) -> NumericMatrix:
    if kind not in ("M23", "M203"):
        raise DomainError(f"rigidity matrix kind must be M23 or M203, not {kind!r}")
    if kind == "M23" and fw.graph.loops:
        raise DomainError("M23 is for loopless frameworks")
    values = point_assignment(fw.points)
    values.update(slider_assignment(fw.graph, fw.normals))
    return evaluate(build_pattern(fw.graph, kind), values)


def trivial_motions(points) -> list:
    """Two translations and the rotation differential, flattened vertex-major."""
    tx = [c for _ in points for c in (1, 0)]
    ty = [c for _ in points for c in (0, 1)]
    rot = [c for x, y in points for c in (-y, x)]
    return [tx, ty, rot]


def decide_infinitesimal_pinning(fw: Framework, minimality=False) -> RigidityReport:
    """Rank of the pinned rigidity matrix; pinned iff it reaches ``2n``."""
    matrix = build_rigidity_matrix(fw, "M203")
    rank = matrix.rank()
    target = 2 * fw.graph.n
    minimal = None
    if minimality:
        rows = matrix.as_lists()
        minimal = rank == target and all(
            rank_exact(rows[:k] + rows[k + 1 :]) < target for k in range(len(rows))
        )
    return RigidityReport("M203", rank, target, minimal)


def decide_infinitesimal_rigidity(fw: Framework) -> RigidityReport:
    matrix = build_rigidity_matrix(fw, "M23")
    return RigidityReport("M23", matrix.rank(), 2 * fw.graph.n - 3)


def _kernel_point(rows, n, rng):
    """A random rational vector in the kernel of ``rows`` (integer combination of a basis)."""
    basis = nullspace(rows, 2 * n)
    coeffs = [int(x) for x in rng.integers(-1000, 1001, size=len(basis))]
    return [sum(c * v[k] for c, v in zip(coeffs, basis)) for k in range(2 * n)]


@dataclass(frozen=True)
class GenericVerdict:
    value: bool
    combinatorial: bool
    framework: Framework
    report: RigidityReport
    directions: DirectionAssignment
    sliders: Optional[SliderAssignment] = None
    seed: int = 0


def generic_bar_joint_rigid(g: LoopedGraph, seed=0, bound=1000) -> GenericVerdict:
    """Is ``g`` (m = 2n-3) generically minimally rigid? Algebraic answer, cross-checked."""
    if g.loops or not g.is_simple():
        raise DomainError("bar-joint frameworks need a simple loopless graph")
    if not g.is_connected():
        raise DomainError("graph must be connected")
    if g.m != 2 * g.n - 3:
        raise DomainError(f"need m = 2n-3 = {2 * g.n - 3}, got {g.m}")
    laman = check_sparse(g, 2, 3).is_tight
    d = sample_generic_directions(g, seed, bound, contractions=laman)
    report = solve_direction_network(g, d)
    if report.realization is not None:
        points = report.realization.points
    else:
        rng = np.random.default_rng([int(seed), 1 << 20])
        points = points_from_vector(_kernel_point(report.system.as_lists(), g.n, rng))
    fw = Framework(g, points)
    rig = decide_infinitesimal_rigidity(fw)
    if rig.rigid != laman:
        raise InternalConsistencyError(
            f"rank {rig.rank} of M23 disagrees with Laman verdict {laman} (seed {seed}, bound {bound})"
        )
    return GenericVerdict(rig.rigid, laman, fw, rig, d, seed=seed)


def generic_slider_pinned(g: LoopedGraph, seed=0, bound=1000) -> GenericVerdict:
    """Is ``g`` (m + c = 2n) generically minimally pinned? Algebraic answer, cross-checked."""
    if g.m + g.c != 2 * g.n:
        raise DomainError(f"need m + c = 2n = {2 * g.n}, got {g.m + g.c}")
    looped_laman = check_graded(g, "203").is_tight
    d, sl = sample_generic_sliders(g, seed, bound, contractions=looped_laman)
    report = solve_direction_slider(g, d, sl)
    normals = sl.normals
    rng = np.random.default_rng([int(seed), 1 << 21])
    if report.unique:
        points = report.realization.points
    elif report.solvable:
        extra = _kernel_point(report.system.as_lists(), g.n, rng)
        points = points_from_vector([a + b for a, b in zip(report.particular, extra)])
    else:
        # no realization of the sampled data; any point set solving the edge rows will do
        edge_rows = assemble_slider_system(g, d, sl)[0].as_lists()[: g.m]
        points = points_from_vector(_kernel_point(edge_rows, g.n, rng))
    fw = Framework(g, points, normals)
    pin = decide_infinitesimal_pinning(fw)
    if pin.pinned != looped_laman:
        raise InternalConsistencyError(
            f"rank {pin.rank} of M203 disagrees with looped-Laman verdict {looped_laman} (seed {seed}, bound {bound})"
        )
    return GenericVerdict(pin.pinned, looped_laman, fw, pin, d, sl, seed)


def edge_stretches(g: LoopedGraph, d: DirectionAssignment, points) -> list:
    """``alpha`` with ``p_i - p_j = alpha * d_ij`` per edge, ``None`` where not parallel."""
    out = []
    for (i, j), (a, b) in zip(g.edges, d.directions):
        dx = points[i - 1][0] - points[j - 1][0]
        dy = points[i - 1][1] - points[j - 1][1]
        alpha = dx / a if a != 0 else dy / b
        out.append(alpha if (dx, dy) == (alpha * a, alpha * b) else None)
    return out


def substitution_rank_check(g: LoopedGraph, d: DirectionAssignment, realization: Realization) -> bool:
    """Rows of M23 at a faithful realization are nonzero multiples of the direction rows."""
    if not realization.faithful:
        raise DomainError("stretch factors are undefined on collapsed edges")
    alphas = edge_stretches(g, d, realization.points)
    if any(a is None or a == 0 for a in alphas):
        return False
    m23 = build_rigidity_matrix(Framework(g, realization.points), "M23")
    return m23.rank() == assemble_direction_system(g, d).rank()


def tangent_slider_triangle() -> Framework:
    """Triangle with one slider per vertex, all tangent to the unit circle.

    The points are rational points of the unit circle, so each tangent line
    ``<p_i, x> = 1`` is exact. Rotation about the origin is an infinitesimal
    motion, so the pinned rigidity matrix loses rank.
    """
    g = LoopedGraph(3, ((1, 2), (1, 3), (2, 3)), (1, 2, 3))
    points = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)), (Fraction(-3, 5), Fraction(-4, 5)))
    return Framework(g, points, normals=points, offsets=(1, 1, 1))
