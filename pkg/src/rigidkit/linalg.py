"""Exact elimination over the rationals and over a prime field.

Matrices are plain lists of rows. Rational entries are ``Fraction`` or
``int``; prime-field entries are ints in ``0..p-1``.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

MERSENNE_61 = (1 << 61) - 1


def _integer_rows(rows):
    out = []
    for row in rows:
        row = [Fraction(x) for x in row]
        scale = lcm(1, *(x.denominator for x in row)) if row else 1
        out.append([int(x * scale) for x in row])
    return out


def rank_exact(rows) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination; pivot = first nonzero."""
    a = _integer_rows(rows)
    if not a or not a[0]:
        return 0
    nrows, ncols = len(a), len(a[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if a[r][col] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        p = a[rank][col]
        for r in range(rank + 1, nrows):
            f = a[r][col]
            row_r, row_p = a[r], a[rank]
            a[r] = [(p * row_r[j] - f * row_p[j]) // prev for j in range(ncols)]
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def rank_mod_p(rows, p=MERSENNE_61) -> int:
    a = [[x % p for x in row] for row in rows]
    if not a or not a[0]:
        return 0
    nrows, ncols = len(a), len(a[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if a[r][col]), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        inv = pow(a[rank][col], p - 2, p)
        prow = [x * inv % p for x in a[rank]]
        a[rank] = prow
        for r in range(rank + 1, nrows):
            f = a[r][col]
            if f:
                a[r] = [(x - f * y) % p for x, y in zip(a[r], prow)]
        rank += 1
        if rank == nrows:
            break
    return rank


def rref(rows):
    """Reduced row echelon form over Q; returns (matrix, pivot columns)."""
    a = [[Fraction(x) for x in row] for row in rows]
    if not a:
        return a, []
    nrows, ncols = len(a), len(a[0])
    pivots = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, nrows) if a[i][col] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = 1 / a[r][col]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return a, pivots


def nullspace(rows, ncols=None):
    """Basis of the right kernel over Q, one vector per free column (in column order)."""
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    a, pivots = rref(rows)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -a[r][f]
        basis.append(v)
    return basis


def solve(rows, rhs, ncols=None):
    """Solve ``A x = b`` over Q.

    Returns ``(rank, particular solution or None, kernel basis)``; the
    particular solution sets every free variable to zero.
    """
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return 0, [Fraction(0)] * ncols, nullspace([], ncols)
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    a, pivots = rref(aug)
    if ncols in pivots:
        return len(pivots) - 1, None, nullspace(rows, ncols)
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = a[r][ncols]
    return len(pivots), x, nullspace(rows, ncols)


def matvec(rows, x):
    return [sum(a * b for a, b in zip(row, x)) for row in rows]
