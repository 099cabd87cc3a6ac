"""Generic matrix patterns of looped graphs, their numeric instances and ranks.

Every pattern entry is a linear form in the pattern variables, stored as a
``{variable: coefficient}`` dict (``ONE`` is the constant term). Variable
names:

* ``a[i,j#k]``, ``b[i,j#k]`` -- edge variables of the k-th copy of ``ij``;
* ``c[i#k]``, ``d[i#k]`` -- loop variables of the k-th loop on ``i``;
* ``x[i]``, ``y[i]`` -- point coordinates in the rigidity matrices.

Rows are edges then loops in list order; two-column kinds use vertex-major
columns ``x1, y1, ..., xn, yn``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import DomainError, OracleRefusal
from .graph import RED, LoopedGraph
from .linalg import MERSENNE_61, rank_exact, rank_mod_p

ONE = "1"
KINDS = ("M11", "M11dot", "M101", "M22", "M202", "M202c", "M23", "M203")
LOOPLESS_KINDS = {"M11", "M11dot", "M22", "M23"}
ONE_COLUMN_KINDS = {"M11", "M11dot", "M101"}


def edge_var(g, e, letter):
    i, j = g.edges[e]
    return f"{letter}[{i},{j}#{g.edge_copy_indices()[e]}]"


def loop_var(g, k, letter):
    return f"{letter}[{g.loops[k].v}#{g.loop_copy_indices()[k]}]"


@dataclass(frozen=True)
class MatrixPattern:
    kind: str
    graph: LoopedGraph
    entries: tuple  # rows of dicts
    row_labels: tuple
    col_labels: tuple
    dropped_column: Optional[int] = None

    @property
    def shape(self):
        return len(self.entries), len(self.col_labels)

    def variables(self) -> list:
        seen = {}
        for row in self.entries:
            for entry in row:
                for var in entry:
                    if var != ONE:
                        seen.setdefault(var, None)
        return list(seen)


def build_pattern(g: LoopedGraph, kind: str, dropped_column: Optional[int] = None) -> MatrixPattern:
    if kind not in KINDS:
        raise DomainError(f"unknown pattern kind {kind!r}")
    if kind in LOOPLESS_KINDS and g.loops:
        raise DomainError(f"{kind} is defined for loopless graphs only")
    if kind == "M202c" and not g.all_loops_colored():
        raise DomainError("M202c needs every loop colored red or blue")
    n = g.n
    one_col = kind in ONE_COLUMN_KINDS
    width = n if one_col else 2 * n
    rows = []
    for e, (i, j) in enumerate(g.edges):
        row = [dict() for _ in range(width)]
        if one_col:
            a = edge_var(g, e, "a")
            row[i - 1] = {a: 1}
            row[j - 1] = {a: -1}
        elif kind in ("M23", "M203"):
            for off, letter in ((0, "x"), (1, "y")):
                row[2 * (i - 1) + off] = {f"{letter}[{i}]": 1, f"{letter}[{j}]": -1}
                row[2 * (j - 1) + off] = {f"{letter}[{j}]": 1, f"{letter}[{i}]": -1}
        else:
            a, b = edge_var(g, e, "a"), edge_var(g, e, "b")
            row[2 * (i - 1)], row[2 * (i - 1) + 1] = {a: 1}, {b: 1}
            row[2 * (j - 1)], row[2 * (j - 1) + 1] = {a: -1}, {b: -1}
        rows.append(row)
    for k, loop in enumerate(g.loops):
        row = [dict() for _ in range(width)]
        v = loop.v
        if one_col:
            row[v - 1] = {loop_var(g, k, "c"): 1}
        elif kind == "M202c":
            row[2 * (v - 1) if loop.color == RED else 2 * (v - 1) + 1] = {ONE: 1}
        else:
            row[2 * (v - 1)] = {loop_var(g, k, "c"): 1}
            row[2 * (v - 1) + 1] = {loop_var(g, k, "d"): 1}
        rows.append(row)
    if one_col:
        cols = [f"v{v}" for v in g.vertices]
    else:
        cols = [f"{axis}{v}" for v in g.vertices for axis in ("x", "y")]
    if kind == "M11dot":
        dropped_column = n if dropped_column is None else dropped_column
        if not 1 <= dropped_column <= n:
            raise DomainError(f"dropped column {dropped_column} outside 1..{n}")
        rows = [row[: dropped_column - 1] + row[dropped_column:] for row in rows]
        cols = cols[: dropped_column - 1] + cols[dropped_column:]
    else:
        dropped_column = None
    labels = [g.edge_label(e) for e in range(g.m)] + [g.loop_label(k) for k in range(g.c)]
    return MatrixPattern(
        kind,
        g,
        tuple(tuple(r) for r in rows),
        tuple(labels),
        tuple(cols),
        dropped_column,
    )


@dataclass(frozen=True)
class NumericMatrix:
    rows: tuple
    row_labels: tuple
    col_labels: tuple
    modulus: Optional[int] = None  # None means exact rationals

    @property
    def shape(self):
        return len(self.rows), len(self.col_labels)

    def rank(self) -> int:
        if self.modulus is None:
            return rank_exact(self.rows)
        return rank_mod_p(self.rows, self.modulus)

    def as_lists(self):
        return [list(r) for r in self.rows]


def evaluate(p: MatrixPattern, assignment: dict, modulus: Optional[int] = None) -> NumericMatrix:
    """Substitute numbers for every pattern variable, exactly."""
    missing = [v for v in p.variables() if v not in assignment]
    if missing:
        raise DomainError(f"no value for {missing[0]}" + (f" (+{len(missing) - 1} more)" if len(missing) > 1 else ""))

    def value(entry):
        total = 0
        for var, coef in entry.items():
            total += coef * (1 if var == ONE else assignment[var])
        return total % modulus if modulus is not None else Fraction(total)

    rows = tuple(tuple(value(e) for e in row) for row in p.entries)
    return NumericMatrix(rows, p.row_labels, p.col_labels, modulus)


def point_assignment(points) -> dict:
    """Map ``x[i]``, ``y[i]`` to the coordinates of 1-based ``points``."""
    out = {}
    for i, (x, y) in enumerate(points, start=1):
        out[f"x[{i}]"] = x
        out[f"y[{i}]"] = y
    return out


def slider_assignment(g: LoopedGraph, normals) -> dict:
    out = {}
    for k, (c, d) in enumerate(normals):
        out[loop_var(g, k, "c")] = c
        out[loop_var(g, k, "d")] = d
    return out


@dataclass(frozen=True)
class GenericRank:
    rank: int
    trials: int
    modulus: int
    failure_bound: float  # chance that every trial underestimated the rank

    def note(self) -> str:
        return (
            f"max rank over {self.trials} random evaluations in F_{self.modulus}; "
            f"P(underestimate) <= {self.failure_bound:.3g}"
        )


def generic_rank(p: MatrixPattern, seed=0, trials=3, modulus=MERSENNE_61) -> GenericRank:
    """Randomized generic rank: evaluations never exceed it, and equal it w.h.p."""
    if trials < 1:
        raise DomainError("trials must be >= 1")
    rng = random.Random(seed)
    variables = p.variables()
    best = 0
    for _ in range(trials):
        values = {v: rng.randrange(modulus) for v in variables}
        best = max(best, evaluate(p, values, modulus).rank())
    rows, cols = p.shape
    per_trial = min(1.0, min(rows, cols) / modulus)
    return GenericRank(best, trials, modulus, per_trial**trials)


# -- determinants ---------------------------------------------------------------


@dataclass(frozen=True)
class Monomial:
    """A signed-up-to-sign product of distinct variables; ``factors == ()`` with ``zero``."""

    factors: tuple
    zero: bool = False
    sign: str = "unspecified"

    def __str__(self):
        if self.zero:
            return "0"
        return "±" + "·".join(self.factors) if self.factors else "±1"


def _is_looped_forest(g: LoopedGraph) -> bool:
    # looped forest == spanning tree of g with loops re-attached to a ground vertex 0
    parent = list(range(g.n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    pairs = list(g.edges) + [(l.v, 0) for l in g.loops]
    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return len({find(v) for v in range(g.n + 1)}) == 1


def structured_determinant(g: LoopedGraph, kind: str) -> Monomial:
    """Closed-form determinant of ``M11dot`` (trees) or ``M101`` (looped forests)."""
    if kind == "M11dot":
        if g.loops:
            raise DomainError("M11dot needs a loopless graph")
        if g.m != g.n - 1:
            raise DomainError(f"M11dot is square only when m = n-1; got m={g.m}, n={g.n}")
        if not g.is_connected():  # connected with n-1 edges is a tree
            return Monomial((), zero=True)
        return Monomial(tuple(sorted(edge_var(g, e, "a") for e in range(g.m))))
    if kind == "M101":
        if g.m + g.c != g.n:
            raise DomainError(f"M101 is square only when m + c = n; got m+c={g.m + g.c}, n={g.n}")
        if not _is_looped_forest(g):
            return Monomial((), zero=True)
        factors = [edge_var(g, e, "a") for e in range(g.m)] + [loop_var(g, k, "c") for k in range(g.c)]
        return Monomial(tuple(sorted(factors)))
    raise DomainError(f"no structured determinant for {kind}")


class Polynomial:
    """Sparse integer polynomial: ``{sorted tuple of (var, exponent): coefficient}``."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def from_linear(cls, entry: dict):
        terms = {}
        for var, coef in entry.items():
            key = () if var == ONE else ((var, 1),)
            terms[key] = terms.get(key, 0) + coef
        return cls(terms)

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, 0) + v
        return Polynomial(terms)

    def __neg__(self):
        return Polynomial({k: -v for k, v in self.terms.items()})

    def __mul__(self, other):
        terms = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                exps = dict(k1)
                for var, e in k2:
                    exps[var] = exps.get(var, 0) + e
                key = tuple(sorted(exps.items()))
                terms[key] = terms.get(key, 0) + v1 * v2
        return Polynomial(terms)

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for key, coef in sorted(self.terms.items()):
            mono = "·".join(v if e == 1 else f"{v}^{e}" for v, e in key) or "1"
            parts.append(f"{coef:+d}·{mono}")
        return " ".join(parts)

    def matches_monomial(self, mono: Monomial) -> bool:
        """Equal to ``±mono`` (the sign is not compared)."""
        if mono.zero:
            return self.is_zero()
        if len(self.terms) != 1:
            return False
        (key, coef), = self.terms.items()
        return abs(coef) == 1 and key == tuple(sorted((f, 1) for f in mono.factors))


MAX_SYMBOLIC = 8


def symbolic_det_oracle(p: MatrixPattern) -> Polynomial:
    """Exact determinant of a square pattern by cofactor expansion along rows."""
    rows, cols = p.shape
    if rows != cols:
        raise DomainError(f"pattern is {rows}x{cols}, not square")
    if rows > MAX_SYMBOLIC:
        raise OracleRefusal(f"symbolic determinant refused above dimension {MAX_SYMBOLIC}")
    m = [[Polynomial.from_linear(e) for e in row] for row in p.entries]
    memo = {}

    def det(r, colmask):
        if r == rows:
            return Polynomial({(): 1})
        key = (r, colmask)
        if key in memo:
            return memo[key]
        total = Polynomial()
        sign = 1
        for col in range(cols):
            if colmask >> col & 1:
                continue
            entry = m[r][col]
            if not entry.is_zero():
                minor = det(r + 1, colmask | (1 << col))
                if not minor.is_zero():
                    term = entry * minor
                    total = total + (term if sign > 0 else -term)
            sign = -sign
        memo[key] = total
        return total

    return det(0, 0)
