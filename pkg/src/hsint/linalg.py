"""Exact linear algebra.

Two unrelated tools live here: determinants/minors of small matrices over a
commutative ring (polynomials), and row reduction over a coefficient field
for the linearised systems of the artinian code paths.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Sequence

from .field import Field


def determinant(rows: Sequence[Sequence], zero, one):
    """Determinant by Laplace expansion memoised on column subsets.

    Works for any commutative ring whose elements support ``+ - *``.
    Cost is O(2^n n) ring operations, fine for the <= 8x8 matrices used here.
    """
    n = len(rows)
    if n == 0:
        return one
    for r in rows:
        if len(r) != n:
            raise ValueError("determinant of a non-square matrix")

    @lru_cache(maxsize=None)
    def rec(row: int, cols: tuple):
        if row == n:
            return one
        total = zero
        for pos, c in enumerate(cols):
            a = rows[row][c]
            if not a:
                continue
            sub = rec(row + 1, cols[:pos] + cols[pos + 1:])
            term = a * sub
            total = total + term if pos % 2 == 0 else total - term
        return total

    return rec(0, tuple(range(n)))


def submatrix(M, rows, cols):
    return [[M[i][j] for j in cols] for i in rows]


def minors(M, size: int, zero, one):
    """Yield ``(rows, cols, det)`` for every ``size``-minor, in lexicographic order."""
    nrows = len(M)
    ncols = len(M[0]) if M else 0
    for rows in itertools.combinations(range(nrows), size):
        for cols in itertools.combinations(range(ncols), size):
            yield rows, cols, determinant(submatrix(M, rows, cols), zero, one)


# ---------------------------------------------------------------- over a field


def rref(rows: list[list], field: Field):
    """Reduced row echelon form in place; returns the pivot column list."""
    red = field.reduce
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [red(v * inv) for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [red(a - f * b) for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def solve_affine(A: list[list], b: list, field: Field):
    """Solve ``A x = b`` over ``field``.

    Returns ``(particular, kernel_basis)`` or ``None`` when inconsistent.
    The particular solution sets every free variable to zero; kernel vectors
    are the standard basis of the null space (one per free column, in order).
    """
    ncols = len(A[0]) if A else 0
    aug = [list(row) + [rhs] for row, rhs in zip(A, b)]
    pivots = rref(aug, field) if aug else []
    if ncols in pivots:
        return None
    pivots = [p for p in pivots if p < ncols]
    zero = field.zero
    part = [zero] * ncols
    for i, p in enumerate(pivots):
        part[p] = aug[i][ncols]
    free = [c for c in range(ncols) if c not in set(pivots)]
    kernel = []
    red = field.reduce
    for f in free:
        v = [zero] * ncols
        v[f] = field.one
        for i, p in enumerate(pivots):
            v[p] = red(-aug[i][f])
        kernel.append(v)
    return part, kernel


def span_basis(vectors: list[list], field: Field) -> list[list]:
    """Echelon basis of the span of ``vectors``."""
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return []
    piv = rref(rows, field)
    return rows[: len(piv)]


def in_span(v, echelon: list[list], field: Field) -> bool:
    return not any(reduce_by_echelon(v, echelon, field))


def reduce_by_echelon(v, echelon: list[list], field: Field) -> list:
    """Remainder of ``v`` modulo the span of a reduced echelon basis."""
    red = field.reduce
    v = list(v)
    for row in echelon:
        p = next(i for i, a in enumerate(row) if a)
        if v[p]:
            f = v[p]
            v = [red(a - f * b) for a, b in zip(v, row)]
    return v


def rank(vectors: list[list], field: Field) -> int:
    return len(span_basis(vectors, field))
